#include "houseqa/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "houseqa/rng.hpp"
#include "json.hpp"

namespace houseqa {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << content;
    if (!out) throw IoError("short write to " + path);
}

json parse_json(const std::string& text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(origin + ": " + e.what());
    }
}

void check_version(const json& j, const std::string& origin) {
    int version = j.value("format_version", -1);
    if (version != kDatasetFormatVersion) {
        throw IoError(origin + ": format_version " + std::to_string(version) +
                      " unsupported, expected " + std::to_string(kDatasetFormatVersion));
    }
}

// Cells, poses, grids.

json cell_to_json(Cell c) { return json{{"x", c.x}, {"y", c.y}}; }

Cell cell_from_json(const json& j) { return Cell{j.at("x").get<int>(), j.at("y").get<int>()}; }

char cell_kind_char(CellKind k) {
    switch (k) {
        case CellKind::Wall: return '#';
        case CellKind::RoomFloor: return '.';
        case CellKind::Doorway: return '+';
    }
    return '?';
}

CellKind cell_kind_from_char(char c) {
    switch (c) {
        case '#': return CellKind::Wall;
        case '.': return CellKind::RoomFloor;
        case '+': return CellKind::Doorway;
        default: throw IoError(std::string("unknown grid cell '") + c + "'");
    }
}

json pose_to_json(const Pose& p) {
    return json{{"x", p.cell.x}, {"y", p.cell.y}, {"h", std::string(1, heading_char(p.heading))}};
}

Pose pose_from_json(const json& j) {
    Pose p;
    p.cell = {j.at("x").get<int>(), j.at("y").get<int>()};
    std::string h = j.at("h").get<std::string>();
    auto heading = h.size() == 1 ? heading_from_char(h[0]) : std::nullopt;
    if (!heading) throw IoError("unknown heading \"" + h + "\"");
    p.heading = *heading;
    return p;
}

// Houses.

json house_to_json(const House& h) {
    json grid = json::array();
    for (int y = 0; y < h.height; ++y) {
        std::string row(static_cast<std::size_t>(h.width), '#');
        for (int x = 0; x < h.width; ++x) {
            row[static_cast<std::size_t>(x)] = cell_kind_char(h.cell_kind({x, y}));
        }
        grid.push_back(row);
    }
    json rooms = json::array();
    for (const Room& r : h.rooms) {
        rooms.push_back({{"id", r.id},
                         {"room_type", r.room_type},
                         {"bbox", {{"x", r.bbox.x}, {"y", r.bbox.y}, {"w", r.bbox.w},
                                   {"h", r.bbox.h}}}});
    }
    json doorways = json::array();
    for (const Doorway& d : h.doorways) {
        doorways.push_back(
            {{"room_a", d.room_a}, {"room_b", d.room_b}, {"cell", cell_to_json(d.cell)}});
    }
    json objects = json::array();
    for (const ObjectInstance& o : h.objects) {
        objects.push_back({{"id", o.id},
                           {"obj_type", o.obj_type},
                           {"color", o.color},
                           {"extra_attrs", o.extra_attrs},
                           {"cell", cell_to_json(o.cell)},
                           {"size", o.size},
                           {"room_id", o.room_id}});
    }
    return json{{"id", h.id},      {"width", h.width},       {"height", h.height},
                {"grid", grid},    {"rooms", rooms},         {"doorways", doorways},
                {"objects", objects}};
}

House house_from_json(const json& j) {
    House h;
    h.id = j.at("id").get<std::string>();
    h.width = j.at("width").get<int>();
    h.height = j.at("height").get<int>();
    const auto& grid = j.at("grid");
    if (static_cast<int>(grid.size()) != h.height) {
        throw IoError("house " + h.id + ": grid has " + std::to_string(grid.size()) +
                      " rows, expected " + std::to_string(h.height));
    }
    h.cells.assign(static_cast<std::size_t>(h.width) * h.height, CellKind::Wall);
    for (int y = 0; y < h.height; ++y) {
        std::string row = grid.at(static_cast<std::size_t>(y)).get<std::string>();
        if (static_cast<int>(row.size()) != h.width) {
            throw IoError("house " + h.id + ": grid row " + std::to_string(y) + " has width " +
                          std::to_string(row.size()));
        }
        for (int x = 0; x < h.width; ++x) {
            h.set_cell({x, y}, cell_kind_from_char(row[static_cast<std::size_t>(x)]));
        }
    }
    for (const auto& r : j.at("rooms")) {
        Room room;
        room.id = r.at("id").get<std::string>();
        room.room_type = r.at("room_type").get<std::string>();
        const auto& b = r.at("bbox");
        room.bbox = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(),
                     b.at("h").get<int>()};
        h.rooms.push_back(std::move(room));
    }
    for (const auto& d : j.at("doorways")) {
        h.doorways.push_back({d.at("room_a").get<std::string>(),
                              d.at("room_b").get<std::string>(),
                              cell_from_json(d.at("cell"))});
    }
    for (const auto& o : j.at("objects")) {
        ObjectInstance obj;
        obj.id = o.at("id").get<std::string>();
        obj.obj_type = o.at("obj_type").get<std::string>();
        obj.color = o.at("color").get<std::string>();
        for (const auto& a : o.at("extra_attrs")) obj.extra_attrs.insert(a.get<std::string>());
        obj.cell = cell_from_json(o.at("cell"));
        obj.size = o.at("size").get<double>();
        obj.room_id = o.at("room_id").get<std::string>();
        h.objects.push_back(std::move(obj));
    }
    return h;
}

// Ground truth.

json gt_to_json(const TrajectoryGroundTruth& gt) {
    json frames = json::array();
    for (const FrameGT& f : gt.frames) {
        frames.push_back({{"frame_index", f.frame_index},
                          {"current_room", f.current_room},
                          {"visible_objects", f.visible_objects},
                          {"linked_rooms", f.linked_rooms}});
    }
    return json{{"house_id", gt.house_id},       {"video_id", gt.video_id},
                {"frames", frames},              {"seen_objects", gt.seen_objects},
                {"seen_rooms", gt.seen_rooms},   {"first_seen", gt.first_seen},
                {"last_seen", gt.last_seen}};
}

TrajectoryGroundTruth gt_from_json(const json& j) {
    TrajectoryGroundTruth gt;
    gt.house_id = j.at("house_id").get<std::string>();
    gt.video_id = j.at("video_id").get<std::string>();
    for (const auto& f : j.at("frames")) {
        FrameGT frame;
        frame.frame_index = f.at("frame_index").get<int>();
        frame.current_room = f.at("current_room").get<std::string>();
        for (const auto& id : f.at("visible_objects")) {
            frame.visible_objects.insert(id.get<std::string>());
        }
        for (const auto& id : f.at("linked_rooms")) {
            frame.linked_rooms.insert(id.get<std::string>());
        }
        gt.frames.push_back(std::move(frame));
    }
    for (const auto& id : j.at("seen_objects")) gt.seen_objects.insert(id.get<std::string>());
    for (const auto& id : j.at("seen_rooms")) gt.seen_rooms.insert(id.get<std::string>());
    gt.first_seen = j.at("first_seen").get<std::map<std::string, int>>();
    gt.last_seen = j.at("last_seen").get<std::map<std::string, int>>();
    return gt;
}

// Bindings.

json bindings_to_json(const Bindings& b) {
    return json{{"values", b.values}, {"set_members", b.set_members}};
}

Bindings bindings_from_json(const json& j) {
    Bindings b;
    b.values = j.at("values").get<std::map<std::string, std::string>>();
    for (const auto& m : j.at("set_members")) {
        b.set_members.push_back(m.get<std::map<std::string, std::string>>());
    }
    return b;
}

json telemetry_to_json(const GenTelemetry& t) {
    auto int_keyed = [](const std::map<int, long long>& m) {
        json out = json::object();
        for (const auto& [k, v] : m) out[std::to_string(k)] = v;
        return out;
    };
    return json{{"rejected_attempts", int_keyed(t.rejected_attempts)},
                {"uninstantiable", int_keyed(t.uninstantiable)},
                {"template_counts", int_keyed(t.template_counts)},
                {"discarded_trajectories", t.discarded_trajectories},
                {"skipped_videos", t.skipped_videos}};
}

GenTelemetry telemetry_from_json(const json& j) {
    auto int_keyed = [](const json& m) {
        std::map<int, long long> out;
        for (const auto& [k, v] : m.items()) out[std::stoi(k)] = v.get<long long>();
        return out;
    };
    GenTelemetry t;
    t.rejected_attempts = int_keyed(j.at("rejected_attempts"));
    t.uninstantiable = int_keyed(j.at("uninstantiable"));
    t.template_counts = int_keyed(j.at("template_counts"));
    t.discarded_trajectories = j.at("discarded_trajectories").get<long long>();
    t.skipped_videos = j.at("skipped_videos").get<long long>();
    return t;
}

json listing_to_json(const SplitListing& l) {
    return json{{"house_ids", l.house_ids},
                {"video_ids", l.video_ids},
                {"question_ids", l.question_ids}};
}

SplitListing listing_from_json(const json& j) {
    SplitListing l;
    l.house_ids = j.at("house_ids").get<std::vector<std::string>>();
    l.video_ids = j.at("video_ids").get<std::vector<std::string>>();
    l.question_ids = j.at("question_ids").get<std::vector<std::string>>();
    return l;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

template <typename Fn>
void read_jsonl(const std::string& path, Fn&& per_line) {
    std::string text = read_file(path);
    auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        try {
            per_line(lines[i]);
        } catch (const std::exception& e) {
            throw IoError(path + ":" + std::to_string(i + 1) + ": " + e.what());
        }
    }
}

SplitListing listing_of(const SplitData& split) {
    SplitListing l;
    l.house_ids = split.house_ids;
    for (const VideoRecord& v : split.videos) l.video_ids.push_back(v.gt.video_id);
    for (const QARecord& q : split.questions) l.question_ids.push_back(q.question_id);
    return l;
}

json manifest_to_json(const DatasetManifest& m) {
    json counts = json::object();
    for (const auto& [id, n] : m.template_counts) counts[std::to_string(id)] = n;
    return json{{"format_version", m.format_version},
                {"master_seed", std::to_string(m.master_seed)},
                {"config_digest", m.config_digest},
                {"dataset_digest", m.dataset_digest},
                {"splits", {{"train", listing_to_json(m.train)},
                            {"validation", listing_to_json(m.validation)},
                            {"test", listing_to_json(m.test)}}},
                {"template_counts", counts},
                {"telemetry", telemetry_to_json(m.telemetry)}};
}

DatasetManifest manifest_from_json(const json& j) {
    DatasetManifest m;
    m.format_version = j.at("format_version").get<int>();
    m.master_seed = std::stoull(j.at("master_seed").get<std::string>());
    m.config_digest = j.at("config_digest").get<std::string>();
    m.dataset_digest = j.at("dataset_digest").get<std::string>();
    m.train = listing_from_json(j.at("splits").at("train"));
    m.validation = listing_from_json(j.at("splits").at("validation"));
    m.test = listing_from_json(j.at("splits").at("test"));
    for (const auto& [k, v] : j.at("template_counts").items()) {
        m.template_counts[std::stoi(k)] = v.get<long long>();
    }
    m.telemetry = telemetry_from_json(j.at("telemetry"));
    return m;
}

}  // namespace

std::string qa_record_to_line(const QARecord& rec) {
    json j{{"question_id", rec.question_id},
           {"house_id", rec.house_id},
           {"video_id", rec.video_id},
           {"template_id", rec.template_id},
           {"category", rec.category},
           {"text", rec.text},
           {"bindings", bindings_to_json(rec.bindings)},
           {"answer", rec.answer},
           {"seed", std::to_string(rec.seed)}};
    return j.dump();
}

QARecord qa_record_from_line(const std::string& line) {
    json j = parse_json(line, "question record");
    try {
        QARecord rec;
        rec.question_id = j.at("question_id").get<std::string>();
        rec.house_id = j.at("house_id").get<std::string>();
        rec.video_id = j.at("video_id").get<std::string>();
        rec.template_id = j.at("template_id").get<int>();
        rec.category = j.at("category").get<std::string>();
        rec.text = j.at("text").get<std::string>();
        rec.bindings = bindings_from_json(j.at("bindings"));
        rec.answer = j.at("answer").get<std::string>();
        rec.seed = std::stoull(j.at("seed").get<std::string>());
        return rec;
    } catch (const json::exception& e) {
        throw IoError(std::string("question record: ") + e.what());
    }
}

std::string video_record_to_line(const VideoRecord& video) {
    json j = gt_to_json(video.gt);
    json poses = json::array();
    for (const Pose& p : video.trajectory.poses) poses.push_back(pose_to_json(p));
    j["poses"] = poses;
    j["subsample"] = video.subsample;
    return j.dump();
}

VideoRecord video_record_from_line(const std::string& line) {
    json j = parse_json(line, "video record");
    try {
        VideoRecord video;
        video.gt = gt_from_json(j);
        video.trajectory.house_id = video.gt.house_id;
        video.trajectory.video_id = video.gt.video_id;
        for (const auto& p : j.at("poses")) video.trajectory.poses.push_back(pose_from_json(p));
        video.subsample = j.at("subsample").get<std::vector<std::size_t>>();
        return video;
    } catch (const json::exception& e) {
        throw IoError(std::string("video record: ") + e.what());
    }
}

std::string dataset_digest(const Dataset& dataset) {
    Fnv1a h;
    h.update(config_to_json(dataset.config));
    h.update_u64(dataset.master_seed);
    for (const House& house : dataset.houses) {
        h.update(house_to_json(house).dump());
    }
    for (const SplitData* split : dataset.splits()) {
        h.update(split->name);
        for (const std::string& id : split->house_ids) h.update(id);
        for (const VideoRecord& video : split->videos) h.update(video_record_to_line(video));
        for (const QARecord& rec : split->questions) h.update(qa_record_to_line(rec));
    }
    return h.hex();
}

DatasetManifest write_dataset(const Dataset& dataset, const std::string& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory " + directory + ": " + ec.message());

    DatasetManifest manifest;
    manifest.master_seed = dataset.master_seed;
    manifest.config_digest = config_digest(dataset.config);
    manifest.dataset_digest = dataset_digest(dataset);
    manifest.train = listing_of(dataset.train);
    manifest.validation = listing_of(dataset.validation);
    manifest.test = listing_of(dataset.test);
    manifest.telemetry = dataset.telemetry;
    for (const SplitData* split : dataset.splits()) {
        for (const QARecord& rec : split->questions) ++manifest.template_counts[rec.template_id];
    }

    std::string config_text = config_to_json(dataset.config);
    write_file(directory + "/config.json", config_text);
    json lexicon_doc{{"format_version", kDatasetFormatVersion},
                     {"lexicon", json::parse(config_text).at("lexicon")}};
    write_file(directory + "/lexicon.json", lexicon_doc.dump(2) + "\n");

    json houses = json::array();
    for (const House& house : dataset.houses) houses.push_back(house_to_json(house));
    json houses_doc{{"format_version", kDatasetFormatVersion}, {"houses", houses}};
    write_file(directory + "/houses.json", houses_doc.dump() + "\n");

    for (const SplitData* split : dataset.splits()) {
        std::string split_dir = directory + "/" + split->name;
        fs::create_directories(split_dir, ec);
        if (ec) throw IoError("cannot create directory " + split_dir + ": " + ec.message());
        std::ostringstream questions;
        for (const QARecord& rec : split->questions) questions << qa_record_to_line(rec) << "\n";
        write_file(split_dir + "/questions.jsonl", questions.str());
        std::ostringstream gts;
        for (const VideoRecord& video : split->videos) {
            gts << video_record_to_line(video) << "\n";
        }
        write_file(split_dir + "/ground_truth.jsonl", gts.str());
    }

    write_file(directory + "/manifest.json", manifest_to_json(manifest).dump(2) + "\n");
    return manifest;
}

Dataset read_dataset(const std::string& directory, DatasetManifest* manifest_out) {
    json manifest_json =
        parse_json(read_file(directory + "/manifest.json"), directory + "/manifest.json");
    check_version(manifest_json, directory + "/manifest.json");
    DatasetManifest manifest;
    try {
        manifest = manifest_from_json(manifest_json);
    } catch (const json::exception& e) {
        throw IoError(directory + "/manifest.json: " + e.what());
    }

    Dataset ds;
    try {
        ds.config = load_config(directory + "/config.json");
    } catch (const ConfigError& e) {
        throw IoError(e.what());
    }
    ds.master_seed = manifest.master_seed;
    ds.telemetry = manifest.telemetry;

    json houses_doc =
        parse_json(read_file(directory + "/houses.json"), directory + "/houses.json");
    check_version(houses_doc, directory + "/houses.json");
    try {
        for (const auto& h : houses_doc.at("houses")) ds.houses.push_back(house_from_json(h));
    } catch (const json::exception& e) {
        throw IoError(directory + "/houses.json: " + e.what());
    }

    ds.train.name = "train";
    ds.validation.name = "validation";
    ds.test.name = "test";
    SplitData* splits[3] = {&ds.train, &ds.validation, &ds.test};
    const SplitListing* listings[3] = {&manifest.train, &manifest.validation, &manifest.test};
    for (int i = 0; i < 3; ++i) {
        SplitData& split = *splits[i];
        split.house_ids = listings[i]->house_ids;
        std::string split_dir = directory + "/" + split.name;
        read_jsonl(split_dir + "/questions.jsonl", [&](const std::string& line) {
            split.questions.push_back(qa_record_from_line(line));
        });
        read_jsonl(split_dir + "/ground_truth.jsonl", [&](const std::string& line) {
            split.videos.push_back(video_record_from_line(line));
        });
    }
    if (manifest_out) *manifest_out = manifest;
    return ds;
}

void write_exec_fixture(const ExecFixture& fixture, const std::string& path) {
    json j{{"format_version", kDatasetFormatVersion},
           {"house", house_to_json(fixture.house)},
           {"gt", gt_to_json(fixture.gt)}};
    write_file(path, j.dump(2) + "\n");
}

ExecFixture read_exec_fixture(const std::string& path) {
    json j = parse_json(read_file(path), path);
    check_version(j, path);
    try {
        ExecFixture fixture;
        fixture.house = house_from_json(j.at("house"));
        fixture.gt = gt_from_json(j.at("gt"));
        return fixture;
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

Bindings read_bindings_file(const std::string& path) {
    json j = parse_json(read_file(path), path);
    try {
        return bindings_from_json(j);
    } catch (const json::exception& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_bindings_file(const Bindings& bindings, const std::string& path) {
    write_file(path, bindings_to_json(bindings).dump(2) + "\n");
}

namespace {

void check_listing(const std::string& split_name, const SplitListing& expect,
                   const SplitListing& actual, std::vector<std::string>& problems) {
    if (expect.house_ids != actual.house_ids) {
        problems.push_back(split_name + ": manifest house listing does not match dataset");
    }
    if (expect.video_ids != actual.video_ids) {
        problems.push_back(split_name + ": manifest video listing does not match files");
    }
    if (expect.question_ids != actual.question_ids) {
        problems.push_back(split_name + ": manifest question listing does not match files");
    }
}

}  // namespace

std::vector<std::string> validate_dataset(const std::string& directory) {
    std::vector<std::string> problems;
    Dataset ds;
    DatasetManifest manifest;
    try {
        ds = read_dataset(directory, &manifest);
    } catch (const std::exception& e) {
        problems.push_back(e.what());
        return problems;
    }

    if (manifest.config_digest != config_digest(ds.config)) {
        problems.push_back("manifest config_digest does not match config.json");
    }
    if (manifest.dataset_digest != dataset_digest(ds)) {
        problems.push_back("manifest dataset_digest does not match dataset content");
    }

    // Houses themselves.
    std::set<std::string> house_ids;
    for (const House& house : ds.houses) {
        if (!house_ids.insert(house.id).second) {
            problems.push_back("duplicate house id " + house.id);
        }
        for (const Violation& v : validate_house(house)) {
            problems.push_back("house " + house.id + ": " + v.invariant + " (" + v.entity +
                               "): " + v.detail);
        }
    }

    // Split structure.
    const SplitListing* listings[3] = {&manifest.train, &manifest.validation, &manifest.test};
    auto splits = ds.splits();
    std::set<std::string> seen_split_houses;
    for (int i = 0; i < 3; ++i) {
        const SplitData& split = *splits[static_cast<std::size_t>(i)];
        check_listing(split.name, *listings[i], listing_of(split), problems);
        for (const std::string& id : split.house_ids) {
            if (house_ids.count(id) == 0) {
                problems.push_back(split.name + ": lists unknown house " + id);
            }
            if (!seen_split_houses.insert(id).second) {
                problems.push_back("house " + id + " appears in more than one split");
            }
        }
    }

    const auto vocabulary = ds.config.lexicon.answer_vocabulary();
    std::set<std::string> vocab(vocabulary.begin(), vocabulary.end());
    std::set<std::string> question_ids;
    std::map<std::string, int> videos_per_house;

    for (const SplitData* split_ptr : splits) {
        const SplitData& split = *split_ptr;
        std::set<std::string> split_houses(split.house_ids.begin(), split.house_ids.end());
        std::map<std::string, const VideoRecord*> videos_by_id;

        for (const VideoRecord& video : split.videos) {
            const std::string& vid = video.gt.video_id;
            videos_by_id[vid] = &video;
            ++videos_per_house[video.gt.house_id];
            if (split_houses.count(video.gt.house_id) == 0) {
                problems.push_back(split.name + ": video " + vid + " from house outside split");
            }
            const House* house = ds.find_house(video.gt.house_id);
            if (!house) {
                problems.push_back(split.name + ": video " + vid + " references unknown house");
                continue;
            }
            int frames = static_cast<int>(video.gt.frames.size());
            if (video.trajectory.length() != frames || frames == 0) {
                problems.push_back(vid + ": frame count does not match pose count");
                continue;
            }
            if (frames > kMaxTrajectoryLen) {
                problems.push_back(vid + ": video exceeds " +
                                   std::to_string(kMaxTrajectoryLen) + " frames");
            }
            for (int f = 0; f < frames; ++f) {
                if (video.gt.frames[static_cast<std::size_t>(f)].frame_index != f) {
                    problems.push_back(vid + ": frame indices not consecutive");
                    break;
                }
            }
            for (const Pose& pose : video.trajectory.poses) {
                if (!house->walkable(pose.cell)) {
                    problems.push_back(vid + ": pose on non-walkable cell");
                    break;
                }
            }
            try {
                TrajectoryGroundTruth redo =
                    aggregate_gt(video.gt.house_id, video.gt.video_id, video.gt.frames);
                if (!(redo == video.gt)) {
                    problems.push_back(vid + ": stored aggregates do not match frames");
                }
            } catch (const std::exception& e) {
                problems.push_back(vid + ": " + e.what());
            }
            for (const std::string& id : video.gt.seen_objects) {
                if (!house->find_object(id)) {
                    problems.push_back(vid + ": seen object " + id + " not in house");
                }
            }
            for (const std::string& id : video.gt.seen_rooms) {
                if (!house->find_room(id)) {
                    problems.push_back(vid + ": seen room " + id + " not in house");
                }
            }
            if (!video.subsample.empty()) {
                std::size_t n = video.trajectory.poses.size();
                std::size_t expect = (n + 3) / 4;
                if (video.subsample.size() != expect) {
                    problems.push_back(vid + ": subsample length violates ceil(n/4)");
                } else {
                    for (std::size_t k = 0; k < video.subsample.size(); ++k) {
                        std::size_t idx = video.subsample[k];
                        if (idx < 4 * k || idx >= std::min(4 * k + 4, n)) {
                            problems.push_back(vid + ": subsample index outside its chunk");
                            break;
                        }
                    }
                }
            }
        }

        for (const QARecord& rec : split.questions) {
            if (!question_ids.insert(rec.question_id).second) {
                problems.push_back("duplicate question id " + rec.question_id);
            }
            auto vit = videos_by_id.find(rec.video_id);
            if (vit == videos_by_id.end()) {
                problems.push_back(rec.question_id + ": video not in this split");
                continue;
            }
            const House* house = ds.find_house(rec.house_id);
            if (!house || rec.house_id != vit->second->gt.house_id) {
                problems.push_back(rec.question_id + ": house mismatch");
                continue;
            }
            if (vocab.count(rec.answer) == 0) {
                problems.push_back(rec.question_id + ": answer \"" + rec.answer +
                                   "\" outside vocabulary");
            }
            if (token_count(rec.text) > 56) {
                problems.push_back(rec.question_id + ": question longer than 56 tokens");
            }
            try {
                const QuestionTemplate& tmpl = template_by_id(rec.template_id);
                if (tmpl.category != rec.category) {
                    problems.push_back(rec.question_id + ": category does not match template");
                }
                if (realize_text(tmpl, rec.bindings, ds.config.lexicon) != rec.text) {
                    problems.push_back(rec.question_id + ": text does not match bindings");
                }
                auto cands = candidate_sets(tmpl, vit->second->gt, *house, ds.config.lexicon);
                for (const Tag& tag : tmpl.pattern.tags()) {
                    if (tag.kind == TagKind::Art) continue;
                    const auto& pool = cands.at(tag.token());
                    auto attested = [&](const std::string& value) {
                        return std::find(pool.begin(), pool.end(), value) != pool.end();
                    };
                    if (tag.in_set) {
                        for (const auto& member : rec.bindings.set_members) {
                            auto it = member.find(tag.key());
                            if (it == member.end() || !attested(it->second)) {
                                problems.push_back(rec.question_id + ": set member " +
                                                   tag.key() + " not attested in ground truth");
                            }
                        }
                        continue;
                    }
                    auto it = rec.bindings.values.find(tag.key());
                    if (it == rec.bindings.values.end() || !attested(it->second)) {
                        problems.push_back(rec.question_id + ": binding " + tag.key() +
                                           " not attested in ground truth");
                    }
                }
                auto answer = execute(tmpl.program, rec.bindings, *house, vit->second->gt,
                                      ds.config.lexicon.count_max);
                if (!answer || *answer != rec.answer) {
                    problems.push_back(rec.question_id + ": stored answer does not re-execute");
                }
            } catch (const std::exception& e) {
                problems.push_back(rec.question_id + ": " + e.what());
            }
        }
    }

    for (const auto& [house_id, n] : videos_per_house) {
        if (n > ds.config.quota.per_house_video_cap) {
            problems.push_back("house " + house_id + " has " + std::to_string(n) +
                               " videos, cap is " +
                               std::to_string(ds.config.quota.per_house_video_cap));
        }
    }

    std::map<int, long long> template_counts;
    for (const SplitData* split : splits) {
        for (const QARecord& rec : split->questions) ++template_counts[rec.template_id];
    }
    if (template_counts != manifest.template_counts) {
        problems.push_back("manifest template_counts do not match questions");
    }
    return problems;
}

}  // namespace houseqa
