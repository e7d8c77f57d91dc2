#include "houseqa/generator.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "houseqa/synth.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace houseqa {

namespace {

constexpr int kTemplateAttemptsPerSlot = 8;
constexpr int kMemberDrawTries = 12;

std::string zero_pad(int v, int width) {
    std::ostringstream out;
    out << std::setw(width) << std::setfill('0') << v;
    return out.str();
}

std::string house_name(int index) { return "house-" + zero_pad(index, 3); }

// Attested value pools for one video.
struct Pools {
    std::vector<std::string> colors;
    std::vector<std::string> attrs;           // colors + extra attributes
    std::vector<std::string> noncolor_attrs;  // extra attributes only
    std::vector<std::string> obj_types;
    std::vector<std::string> room_types;
    std::vector<const ObjectInstance*> seen;  // id order
};

Pools build_pools(const TrajectoryGroundTruth& gt, const House& house, const Lexicon& lexicon) {
    Pools p;
    std::set<std::string> colors, attrs, noncolor, types, room_types;
    for (const std::string& id : gt.seen_objects) {
        const ObjectInstance* obj = house.find_object(id);
        if (!obj) throw ExecutionError("generator: ground truth references unknown object " + id);
        p.seen.push_back(obj);
        colors.insert(obj->color);
        attrs.insert(obj->color);
        for (const auto& extra : obj->extra_attrs) {
            attrs.insert(extra);
            noncolor.insert(extra);
        }
        types.insert(obj->obj_type);
    }
    for (const std::string& id : gt.seen_rooms) {
        const Room* room = house.find_room(id);
        if (!room) throw ExecutionError("generator: ground truth references unknown room " + id);
        room_types.insert(room->room_type);
    }
    // Attested means carried by a seen object; a color in the lexicon that no
    // seen object wears is not a candidate.
    (void)lexicon;
    p.colors.assign(colors.begin(), colors.end());
    p.attrs.assign(attrs.begin(), attrs.end());
    p.noncolor_attrs.assign(noncolor.begin(), noncolor.end());
    p.obj_types.assign(types.begin(), types.end());
    p.room_types.assign(room_types.begin(), room_types.end());
    return p;
}

bool wants_noncolor_attr(const QuestionTemplate& tmpl, const Tag& tag) {
    return tmpl.category == kCategoryQueryColor && tag.kind == TagKind::Attr && tag.ordinal <= 1;
}

const std::vector<std::string>& pool_for_tag(const QuestionTemplate& tmpl, const Tag& tag,
                                             const Pools& pools, const Lexicon& lexicon) {
    static const std::vector<std::string> kComps = {"more", "fewer"};
    static const std::vector<std::string> kCompRels = {"bigger", "smaller"};
    switch (tag.kind) {
        case TagKind::Attr:
            return wants_noncolor_attr(tmpl, tag) ? pools.noncolor_attrs : pools.attrs;
        case TagKind::Color:
            return pools.colors;
        case TagKind::ObjType:
            return pools.obj_types;
        case TagKind::RoomType:
            return pools.room_types;
        case TagKind::Rel:
            return lexicon.relations;
        case TagKind::Comp:
            return kComps;
        case TagKind::CompRel:
            return kCompRels;
        case TagKind::Art:
            break;
    }
    throw std::logic_error("no candidate pool for tag kind");
}

// Attributes a specific object can fill a slot with.
std::vector<std::string> object_attrs(const ObjectInstance& obj, bool noncolor) {
    std::vector<std::string> out;
    if (!noncolor) out.push_back(obj.color);
    out.insert(out.end(), obj.extra_attrs.begin(), obj.extra_attrs.end());
    return out;
}

// Draws (attr, obj_type) coherently from one seen object so references tend
// to resolve; falls back to independent pool draws.
bool sample_pair(const QuestionTemplate& tmpl, const Tag& attr_tag, const Pools& pools,
                 RngStream& rng, std::string& attr_out, std::string& type_out) {
    bool noncolor = wants_noncolor_attr(tmpl, attr_tag);
    if (!pools.seen.empty() && rng.bernoulli(0.6)) {
        const ObjectInstance* obj = rng.pick(pools.seen);
        auto attrs = object_attrs(*obj, noncolor);
        if (!attrs.empty()) {
            attr_out = rng.pick(attrs);
            type_out = obj->obj_type;
            return true;
        }
    }
    const auto& attr_pool = noncolor ? pools.noncolor_attrs : pools.attrs;
    if (attr_pool.empty() || pools.obj_types.empty()) return false;
    attr_out = rng.pick(attr_pool);
    type_out = rng.pick(pools.obj_types);
    return true;
}

bool violates_distinct_rule(const QuestionTemplate& tmpl, const Bindings& b) {
    auto value = [&](const char* key) -> const std::string& { return b.values.at(key); };
    switch (tmpl.distinct) {
        case DistinctRule::None:
            return false;
        case DistinctRule::RefPairs:
            return value("attr1") == value("attr2") && value("obj_type1") == value("obj_type2");
        case DistinctRule::Attrs:
            return value("attr1") == value("attr2");
        case DistinctRule::RoomTypes:
            return value("room_type1") == value("room_type2");
    }
    return false;
}

// One full binding draw; false when the draw could not be completed (a pool
// needed mid-draw is empty or member distinctness failed).
bool sample_bindings(const QuestionTemplate& tmpl, const Pools& pools, const Lexicon& lexicon,
                     RngStream& rng, Bindings& out) {
    out.values.clear();
    out.set_members.clear();

    std::vector<Tag> plain;
    std::set<std::string> member_keys;
    bool has_set = false;
    for (const Tag& tag : tmpl.pattern.tags()) {
        if (tag.kind == TagKind::Art) continue;
        if (tag.in_set) {
            has_set = true;
            member_keys.insert(tag.key());
            continue;
        }
        plain.push_back(tag);
    }

    // Shared-type comparisons (<attr1> and <attr2> around one un-numbered
    // <obj_type>) need two distinct seen instances of the same type, which
    // independent pool draws almost never produce. Derive all three slots
    // from such an instance pair when one exists.
    const Tag* shared_type = nullptr;
    const Tag* attr_one = nullptr;
    const Tag* attr_two = nullptr;
    for (const Tag& tag : plain) {
        if (tag.kind == TagKind::ObjType && tag.ordinal == 0) shared_type = &tag;
        if (tag.kind == TagKind::Attr && tag.ordinal == 1) attr_one = &tag;
        if (tag.kind == TagKind::Attr && tag.ordinal == 2) attr_two = &tag;
    }
    if (shared_type && attr_one && attr_two && !pools.seen.empty() && rng.bernoulli(0.85)) {
        std::map<std::string, std::vector<const ObjectInstance*>> by_type;
        for (const ObjectInstance* obj : pools.seen) by_type[obj->obj_type].push_back(obj);
        std::vector<const std::string*> duplicated;
        for (const auto& [type, instances] : by_type) {
            if (instances.size() >= 2) duplicated.push_back(&type);
        }
        if (!duplicated.empty()) {
            const auto& instances = by_type.at(*rng.pick(duplicated));
            std::size_t first = rng.bounded(instances.size());
            std::size_t second = rng.bounded(instances.size() - 1);
            if (second >= first) ++second;
            bool noncolor = wants_noncolor_attr(tmpl, *attr_one);
            auto pick_attr = [&](const ObjectInstance& of, const ObjectInstance& not_of) {
                std::vector<std::string> all = object_attrs(of, noncolor);
                std::vector<std::string> distinguishing;
                for (const std::string& a : all) {
                    if (!not_of.carries_attr(a)) distinguishing.push_back(a);
                }
                const auto& pool = distinguishing.empty() ? all : distinguishing;
                return pool.empty() ? std::string() : rng.pick(pool);
            };
            std::string a1 = pick_attr(*instances[first], *instances[second]);
            std::string a2 = pick_attr(*instances[second], *instances[first]);
            if (!a1.empty() && !a2.empty()) {
                out.values[attr_one->key()] = a1;
                out.values[attr_two->key()] = a2;
                out.values[shared_type->key()] = instances[first]->obj_type;
            }
        }
    }

    // Coherent (attr, obj_type) pairs first, keyed by shared ordinal.
    for (int ordinal = 0; ordinal <= 2; ++ordinal) {
        const Tag* attr_tag = nullptr;
        const Tag* type_tag = nullptr;
        for (const Tag& tag : plain) {
            if (tag.ordinal != ordinal) continue;
            if (tag.kind == TagKind::Attr) attr_tag = &tag;
            if (tag.kind == TagKind::ObjType) type_tag = &tag;
        }
        if (!attr_tag || !type_tag) continue;
        std::string attr, type;
        if (!sample_pair(tmpl, *attr_tag, pools, rng, attr, type)) return false;
        out.values[attr_tag->key()] = attr;
        out.values[type_tag->key()] = type;
    }

    for (const Tag& tag : plain) {
        if (out.values.count(tag.key()) > 0) continue;
        const auto& pool = pool_for_tag(tmpl, tag, pools, lexicon);
        if (pool.empty()) return false;
        out.values[tag.key()] = rng.pick(pool);
    }

    if (has_set) {
        bool room_members = member_keys.count("room_type") > 0;
        std::size_t arity = 2 + rng.bounded(2);
        for (std::size_t m = 0; m < arity; ++m) {
            bool placed = false;
            for (int attempt = 0; attempt < kMemberDrawTries && !placed; ++attempt) {
                std::map<std::string, std::string> member;
                if (room_members) {
                    if (pools.room_types.empty()) return false;
                    member["room_type"] = rng.pick(pools.room_types);
                } else {
                    std::string attr, type;
                    if (!pools.seen.empty() && rng.bernoulli(0.5)) {
                        const ObjectInstance* obj = rng.pick(pools.seen);
                        auto attrs = object_attrs(*obj, false);
                        attr = rng.pick(attrs);
                        type = obj->obj_type;
                    } else {
                        if (pools.attrs.empty() || pools.obj_types.empty()) return false;
                        attr = rng.pick(pools.attrs);
                        type = rng.pick(pools.obj_types);
                    }
                    member["attr"] = attr;
                    member["obj_type"] = type;
                }
                if (std::find(out.set_members.begin(), out.set_members.end(), member) ==
                    out.set_members.end()) {
                    out.set_members.push_back(std::move(member));
                    placed = true;
                }
            }
            if (!placed) return false;
        }
    }
    return !violates_distinct_rule(tmpl, out);
}

// True when some candidate set the template needs is empty, making every
// attempt futile.
bool uninstantiable_on(const QuestionTemplate& tmpl,
                       const std::map<std::string, std::vector<std::string>>& cands,
                       const Pools& pools) {
    for (const auto& [token, values] : cands) {
        if (values.empty()) return true;
    }
    bool member_rooms = false;
    bool has_set = false;
    for (const Tag& tag : tmpl.pattern.tags()) {
        if (!tag.in_set) continue;
        has_set = true;
        if (tag.kind == TagKind::RoomType) member_rooms = true;
    }
    if (has_set) {
        // Members must be pairwise distinct and there are at least two.
        if (member_rooms) {
            if (pools.room_types.size() < 2) return true;
        } else if (pools.attrs.size() * pools.obj_types.size() < 2) {
            return true;
        }
    }
    return false;
}

}  // namespace

void GenTelemetry::merge(const GenTelemetry& other) {
    for (const auto& [id, n] : other.rejected_attempts) rejected_attempts[id] += n;
    for (const auto& [id, n] : other.uninstantiable) uninstantiable[id] += n;
    for (const auto& [id, n] : other.template_counts) template_counts[id] += n;
    discarded_trajectories += other.discarded_trajectories;
    skipped_videos += other.skipped_videos;
}

const House* Dataset::find_house(const std::string& house_id) const {
    for (const House& h : houses) {
        if (h.id == house_id) return &h;
    }
    return nullptr;
}

long long Dataset::total_questions() const {
    long long n = 0;
    for (const SplitData* s : splits()) n += static_cast<long long>(s->questions.size());
    return n;
}

std::map<std::string, std::vector<std::string>> candidate_sets(const QuestionTemplate& tmpl,
                                                               const TrajectoryGroundTruth& gt,
                                                               const House& house,
                                                               const Lexicon& lexicon) {
    Pools pools = build_pools(gt, house, lexicon);
    std::map<std::string, std::vector<std::string>> out;
    for (const Tag& tag : tmpl.pattern.tags()) {
        if (tag.kind == TagKind::Art) continue;
        out.emplace(tag.token(), pool_for_tag(tmpl, tag, pools, lexicon));
    }
    return out;
}

std::optional<QARecord> instantiate(const QuestionTemplate& tmpl, const TrajectoryGroundTruth& gt,
                                    const House& house, const Lexicon& lexicon, int count_max,
                                    int retry_budget, RngStream& rng, GenTelemetry& telemetry) {
    Pools pools = build_pools(gt, house, lexicon);
    auto cands = candidate_sets(tmpl, gt, house, lexicon);
    if (uninstantiable_on(tmpl, cands, pools)) {
        ++telemetry.uninstantiable[tmpl.id];
        return std::nullopt;
    }
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Bindings b;
        if (!sample_bindings(tmpl, pools, lexicon, rng, b)) {
            ++telemetry.rejected_attempts[tmpl.id];
            continue;
        }
        auto answer = execute(tmpl.program, b, house, gt, count_max);
        if (!answer) {
            ++telemetry.rejected_attempts[tmpl.id];
            continue;
        }
        QARecord rec;
        rec.template_id = tmpl.id;
        rec.category = tmpl.category;
        rec.bindings = std::move(b);
        rec.answer = *answer;
        rec.text = realize_text(tmpl, rec.bindings, lexicon);
        return rec;
    }
    return std::nullopt;
}

QuotaTracker::QuotaTracker(const QuotaPlan& plan, int planned_questions) {
    for (const auto& [id, share] : plan.proportions) {
        ids_.push_back(id);
        target_.push_back(share * planned_questions);
        emitted_.push_back(0);
    }
}

int QuotaTracker::sample_template(RngStream& rng, const std::vector<int>& skip) const {
    auto skipped = [&](int id) {
        return std::find(skip.begin(), skip.end(), id) != skip.end();
    };
    std::vector<double> weights(ids_.size(), 0.0);
    double total = 0.0;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (skipped(ids_[i])) continue;
        weights[i] = std::max(target_[i] - static_cast<double>(emitted_[i]), 0.0);
        total += weights[i];
    }
    if (total <= 0.0) {
        // All targets met: keep drawing with the static mix.
        for (std::size_t i = 0; i < ids_.size(); ++i) {
            weights[i] = skipped(ids_[i]) ? 0.0 : target_[i];
            total += weights[i];
        }
    }
    if (total <= 0.0) return 0;
    double r = rng.uniform_real() * total;
    double acc = 0.0;
    int last = 0;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        acc += weights[i];
        last = ids_[i];
        if (r < acc) return ids_[i];
    }
    return last;  // floating-point edge: return the final candidate
}

void QuotaTracker::record_emitted(int template_id) {
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i] == template_id) {
            ++emitted_[i];
            return;
        }
    }
}

std::vector<QARecord> generate_for_video(const House& house, const TrajectoryGroundTruth& gt,
                                         const EngineConfig& cfg, std::uint64_t master_seed,
                                         QuotaTracker& tracker, GenTelemetry& telemetry) {
    std::vector<QARecord> out;
    for (int slot = 0; slot < cfg.quota.questions_per_video; ++slot) {
        std::uint64_t slot_seed = derive_seed(
            master_seed, {"qa", gt.house_id, gt.video_id, std::to_string(slot)});
        RngStream rng(slot_seed);
        std::vector<int> tried;
        for (int attempt = 0; attempt < kTemplateAttemptsPerSlot; ++attempt) {
            int tid = tracker.sample_template(rng, tried);
            if (tid == 0) break;
            tried.push_back(tid);
            auto rec = instantiate(template_by_id(tid), gt, house, cfg.lexicon,
                                   cfg.lexicon.count_max, cfg.quota.retry_budget, rng, telemetry);
            if (!rec) continue;
            rec->question_id = gt.video_id + "-q" + std::to_string(slot);
            rec->house_id = gt.house_id;
            rec->video_id = gt.video_id;
            rec->seed = slot_seed;
            tracker.record_emitted(tid);
            ++telemetry.template_counts[tid];
            out.push_back(std::move(*rec));
            break;
        }
    }
    return out;
}

HouseBundle generate_house_bundle(const EngineConfig& cfg, std::uint64_t master_seed,
                                  int house_index) {
    HouseBundle bundle;
    const std::string house_id = house_name(house_index);
    bundle.house = synth_house(cfg.synth, cfg.lexicon,
                               derive_seed(master_seed, {"synth", std::to_string(house_index)}),
                               house_id);
    QuotaTracker tracker(cfg.quota, cfg.videos_per_house * cfg.quota.questions_per_video);

    for (int v = 0; v < cfg.videos_per_house; ++v) {
        const std::string video_id = house_id + "-v" + zero_pad(v, 3);
        RngStream traj_rng(derive_seed(master_seed, {"traj", house_id, std::to_string(v)}));
        std::optional<Trajectory> traj;
        std::optional<TrajectoryGroundTruth> gt;
        for (int attempt = 0; attempt < cfg.endpoint_attempts; ++attempt) {
            auto [start, goal] = sample_endpoints(bundle.house, traj_rng);
            auto path = shortest_path(bundle.house, start, goal);
            if (!path) {
                ++bundle.telemetry.discarded_trajectories;
                continue;
            }
            auto t = path_to_trajectory(bundle.house, *path);
            if (!t) {
                ++bundle.telemetry.discarded_trajectories;
                continue;
            }
            t->house_id = house_id;
            t->video_id = video_id;
            auto g = compute_trajectory_gt_serial(bundle.house, *t, cfg.fov);
            if (static_cast<int>(g.seen_objects.size()) < cfg.min_seen_objects) {
                ++bundle.telemetry.discarded_trajectories;
                continue;
            }
            traj = std::move(*t);
            gt = std::move(g);
            break;
        }
        if (!traj) {
            ++bundle.telemetry.skipped_videos;
            continue;
        }

        auto records =
            generate_for_video(bundle.house, *gt, cfg, master_seed, tracker, bundle.telemetry);
        if (records.empty()) {
            ++bundle.telemetry.skipped_videos;
            continue;
        }

        VideoRecord video;
        video.trajectory = std::move(*traj);
        video.gt = std::move(*gt);
        if (cfg.subsample) {
            RngStream sub_rng(derive_seed(master_seed, {"subsample", house_id, video_id}));
            video.subsample = subsample_indices(video.trajectory.poses.size(), sub_rng);
        }
        bundle.videos.push_back(std::move(video));
        for (auto& rec : records) bundle.questions.push_back(std::move(rec));
    }
    return bundle;
}

std::array<int, 3> split_house_counts(int n, double w_train, double w_validation, double w_test) {
    if (n < 3) {
        throw std::invalid_argument("too few houses for three non-empty splits: " +
                                    std::to_string(n));
    }
    const double weights[3] = {w_train, w_validation, w_test};
    const double total = weights[0] + weights[1] + weights[2];
    std::array<int, 3> counts{};
    double remainders[3];
    int assigned = 0;
    for (int i = 0; i < 3; ++i) {
        double quota = n * weights[i] / total;
        counts[i] = static_cast<int>(quota);
        remainders[i] = quota - counts[i];
        assigned += counts[i];
    }
    // Largest remainder first; ties resolved by split order.
    for (int left = n - assigned; left > 0; --left) {
        int best = 0;
        for (int i = 1; i < 3; ++i) {
            if (remainders[i] > remainders[best]) best = i;
        }
        ++counts[best];
        remainders[best] = -1.0;
    }
    // Every split must be populated.
    for (int i = 0; i < 3; ++i) {
        while (counts[i] == 0) {
            int donor = 0;
            for (int j = 1; j < 3; ++j) {
                if (counts[j] > counts[donor]) donor = j;
            }
            --counts[donor];
            ++counts[i];
        }
    }
    return counts;
}

Dataset build_dataset(const EngineConfig& cfg, std::uint64_t master_seed,
                      const GenOptions& options) {
    auto problems = validate_config(cfg);
    if (!problems.empty()) {
        std::string msg = "invalid config:";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ConfigError(msg);
    }
    auto counts =
        split_house_counts(cfg.houses, cfg.split_train, cfg.split_validation, cfg.split_test);

    std::vector<HouseBundle> bundles(static_cast<std::size_t>(cfg.houses));
    if (options.parallel) {
#ifdef _OPENMP
        int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int i = 0; i < cfg.houses; ++i) {
            bundles[static_cast<std::size_t>(i)] = generate_house_bundle(cfg, master_seed, i);
        }
#else
        for (int i = 0; i < cfg.houses; ++i) {
            bundles[static_cast<std::size_t>(i)] = generate_house_bundle(cfg, master_seed, i);
        }
#endif
    } else {
        for (int i = 0; i < cfg.houses; ++i) {
            bundles[static_cast<std::size_t>(i)] = generate_house_bundle(cfg, master_seed, i);
        }
    }

    // Houses are shuffled once by a split stream, then cut into the three
    // spans; membership depends only on (seed, house count).
    std::vector<int> order(static_cast<std::size_t>(cfg.houses));
    std::iota(order.begin(), order.end(), 0);
    RngStream split_rng(derive_seed(master_seed, {"split"}));
    split_rng.shuffle(order);
    std::vector<int> split_of(static_cast<std::size_t>(cfg.houses), 0);
    for (int pos = 0; pos < cfg.houses; ++pos) {
        int split = pos < counts[0] ? 0 : (pos < counts[0] + counts[1] ? 1 : 2);
        split_of[static_cast<std::size_t>(order[static_cast<std::size_t>(pos)])] = split;
    }

    Dataset ds;
    ds.config = cfg;
    ds.master_seed = master_seed;
    ds.train.name = "train";
    ds.validation.name = "validation";
    ds.test.name = "test";
    SplitData* split_ptr[3] = {&ds.train, &ds.validation, &ds.test};
    for (int i = 0; i < cfg.houses; ++i) {
        HouseBundle& bundle = bundles[static_cast<std::size_t>(i)];
        ds.telemetry.merge(bundle.telemetry);
        SplitData& split = *split_ptr[split_of[static_cast<std::size_t>(i)]];
        split.house_ids.push_back(bundle.house.id);
        for (auto& video : bundle.videos) split.videos.push_back(std::move(video));
        for (auto& rec : bundle.questions) split.questions.push_back(std::move(rec));
        ds.houses.push_back(std::move(bundle.house));
    }
    return ds;
}

Dataset build_dataset_serial(const EngineConfig& cfg, std::uint64_t master_seed) {
    GenOptions options;
    options.parallel = false;
    return build_dataset(cfg, master_seed, options);
}

}  // namespace houseqa
