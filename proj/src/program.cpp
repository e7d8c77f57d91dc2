#include "houseqa/program.hpp"

namespace houseqa {

namespace {

[[noreturn]] void bad(const Op& op, const std::string& what) {
    throw ProgramTypeError(std::string(op_kind_name(op.kind)) + ": " + what);
}

void want_args(const Op& op, std::size_t n) {
    if (op.args.size() != n) {
        bad(op, "expected " + std::to_string(n) + " args, got " + std::to_string(op.args.size()));
    }
}

void want_binding(const Op& op, std::size_t i) {
    if (op.args[i].kind != Arg::Kind::Binding) {
        bad(op, "arg " + std::to_string(i) + " must be a binding key");
    }
}

void want_literal(const Op& op, std::size_t i) {
    if (op.args[i].kind != Arg::Kind::Literal) {
        bad(op, "arg " + std::to_string(i) + " must be a literal");
    }
}

void want_input(const Op& op, ValueKind got, ValueKind need) {
    if (got != need) bad(op, "applied to wrong input kind");
}

bool is_pred_name(const std::string& s) {
    return s == kPredHasColor || s == kPredInRoomType || s == kPredIsType;
}

bool is_attr_selector(const std::string& s) {
    return s == kAttrColor || s == kAttrObjType || s == kAttrRoomType;
}

AnswerKind selector_answer_kind(const std::string& selector) {
    if (selector == kAttrColor) return AnswerKind::Color;
    if (selector == kAttrObjType) return AnswerKind::ObjTypeName;
    return AnswerKind::RoomTypeName;
}

void check_pred_args(const Op& op) {
    want_args(op, 2);
    want_literal(op, 0);
    want_binding(op, 1);
    if (!is_pred_name(op.args[0].value)) bad(op, "unknown predicate " + op.args[0].value);
}

void check_ref_pair(const Op& op, std::size_t first) {
    want_binding(op, first);
    want_binding(op, first + 1);
}

}  // namespace

const char* op_kind_name(OpKind k) {
    switch (k) {
        case OpKind::InputObjects: return "InputObjects";
        case OpKind::InputRooms: return "InputRooms";
        case OpKind::FilterType: return "FilterType";
        case OpKind::FilterAttr: return "FilterAttr";
        case OpKind::FilterRoomType: return "FilterRoomType";
        case OpKind::FilterInRoomOf: return "FilterInRoomOf";
        case OpKind::Relate: return "Relate";
        case OpKind::Unique: return "Unique";
        case OpKind::ForAll: return "ForAll";
        case OpKind::Exist: return "Exist";
        case OpKind::Count: return "Count";
        case OpKind::CountRoomsWith: return "CountRoomsWith";
        case OpKind::RefSet: return "RefSet";
        case OpKind::SameAttr: return "SameAttr";
        case OpKind::CompareCount: return "CompareCount";
        case OpKind::CompareSize: return "CompareSize";
        case OpKind::SetExist: return "SetExist";
        case OpKind::SetExistRooms: return "SetExistRooms";
        case OpKind::TestAttr: return "TestAttr";
        case OpKind::GetAttr: return "GetAttr";
    }
    return "?";
}

const char* answer_kind_name(AnswerKind k) {
    switch (k) {
        case AnswerKind::Binary: return "binary";
        case AnswerKind::Count: return "count";
        case AnswerKind::Color: return "color";
        case AnswerKind::ObjTypeName: return "obj_type";
        case AnswerKind::RoomTypeName: return "room_type";
    }
    return "?";
}

AnswerKind type_check(const Program& program) {
    if (program.ops.empty()) throw ProgramTypeError("empty program");
    ValueKind value = ValueKind::Start;
    AnswerKind answer = AnswerKind::Binary;
    for (const Op& op : program.ops) {
        if (value == ValueKind::Answer) bad(op, "op after answer-producing op");
        switch (op.kind) {
            case OpKind::InputObjects:
                want_args(op, 0);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::ObjSet;
                break;
            case OpKind::InputRooms:
                want_args(op, 0);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::RoomSet;
                break;
            case OpKind::FilterType:
            case OpKind::FilterAttr:
                want_args(op, 1);
                want_binding(op, 0);
                want_input(op, value, ValueKind::ObjSet);
                break;
            case OpKind::FilterRoomType:
                want_args(op, 1);
                want_binding(op, 0);
                if (value != ValueKind::ObjSet && value != ValueKind::RoomSet) {
                    bad(op, "applied to wrong input kind");
                }
                break;
            case OpKind::FilterInRoomOf:
                want_args(op, 2);
                check_ref_pair(op, 0);
                want_input(op, value, ValueKind::ObjSet);
                break;
            case OpKind::Relate:
                want_args(op, 3);
                want_binding(op, 0);
                check_ref_pair(op, 1);
                want_input(op, value, ValueKind::ObjSet);
                break;
            case OpKind::Unique:
                want_args(op, 0);
                want_input(op, value, ValueKind::ObjSet);
                value = ValueKind::Obj;
                break;
            case OpKind::ForAll:
                check_pred_args(op);
                want_input(op, value, ValueKind::ObjSet);
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::Exist:
                want_args(op, 0);
                if (value != ValueKind::ObjSet && value != ValueKind::RoomSet) {
                    bad(op, "applied to wrong input kind");
                }
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::Count:
                want_args(op, 0);
                want_input(op, value, ValueKind::ObjSet);
                value = ValueKind::Answer;
                answer = AnswerKind::Count;
                break;
            case OpKind::CountRoomsWith:
                want_args(op, 2);
                check_ref_pair(op, 0);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::Answer;
                answer = AnswerKind::Count;
                break;
            case OpKind::RefSet:
                // Either no args (references come from the bindings' set
                // members) or explicit (attr, obj_type) binding pairs.
                if (!op.args.empty()) {
                    if (op.args.size() % 2 != 0 || op.args.size() < 4) {
                        bad(op, "needs zero args or two or more reference pairs");
                    }
                    for (std::size_t i = 0; i < op.args.size(); i += 2) {
                        check_ref_pair(op, i);
                    }
                }
                want_input(op, value, ValueKind::Start);
                value = ValueKind::ObjSet;
                break;
            case OpKind::SameAttr:
                want_args(op, 5);
                want_literal(op, 0);
                if (!is_attr_selector(op.args[0].value)) bad(op, "unknown selector");
                check_ref_pair(op, 1);
                check_ref_pair(op, 3);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::CompareCount:
                want_args(op, 5);
                check_ref_pair(op, 1);
                check_ref_pair(op, 3);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::CompareSize:
                want_input(op, value, ValueKind::Start);
                if (op.args.empty()) bad(op, "missing domain");
                want_literal(op, 0);
                if (op.args[0].value == kDomainObjects) {
                    want_args(op, 6);
                    want_binding(op, 1);
                    check_ref_pair(op, 2);
                    check_ref_pair(op, 4);
                } else if (op.args[0].value == kDomainRooms) {
                    want_args(op, 4);
                    want_binding(op, 1);
                    want_binding(op, 2);
                    want_binding(op, 3);
                } else {
                    bad(op, "unknown domain " + op.args[0].value);
                }
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::SetExist:
                want_input(op, value, ValueKind::Start);
                if (op.args.empty()) bad(op, "missing scope");
                want_literal(op, 0);
                if (op.args[0].value == kScopeNamedRoom) {
                    want_args(op, 2);
                    want_binding(op, 1);
                } else if (op.args[0].value == kScopeAnywhere || op.args[0].value == kScopeOneRoom) {
                    want_args(op, 1);
                } else {
                    bad(op, "unknown scope " + op.args[0].value);
                }
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::SetExistRooms:
                want_args(op, 0);
                want_input(op, value, ValueKind::Start);
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::TestAttr:
                check_pred_args(op);
                want_input(op, value, ValueKind::Obj);
                value = ValueKind::Answer;
                answer = AnswerKind::Binary;
                break;
            case OpKind::GetAttr:
                want_args(op, 1);
                want_literal(op, 0);
                if (!is_attr_selector(op.args[0].value)) bad(op, "unknown selector");
                if (value != ValueKind::Obj && value != ValueKind::ObjSet) {
                    bad(op, "applied to wrong input kind");
                }
                value = ValueKind::Answer;
                answer = selector_answer_kind(op.args[0].value);
                break;
        }
    }
    if (value != ValueKind::Answer) {
        throw ProgramTypeError("program does not end in an answer-producing op");
    }
    return answer;
}

std::string program_signature(const Program& program) {
    std::string out;
    for (std::size_t i = 0; i < program.ops.size(); ++i) {
        if (i > 0) out += " | ";
        const Op& op = program.ops[i];
        out += op_kind_name(op.kind);
        out += '(';
        for (std::size_t j = 0; j < op.args.size(); ++j) {
            if (j > 0) out += ", ";
            if (op.args[j].kind == Arg::Kind::Binding) out += '$';
            out += op.args[j].value;
        }
        out += ')';
    }
    return out;
}

}  // namespace houseqa
