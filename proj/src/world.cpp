#include <seqplan/world.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_set>

namespace seqplan {

using json = nlohmann::json;

const char* errc_name(errc code) {
    switch (code) {
        case errc::not_axis_parallel: return "NotAxisParallel";
        case errc::zero_displacement: return "ZeroDisplacement";
        case errc::invalid_scene: return "InvalidScene";
        case errc::empty_plan: return "EmptyPlan";
        case errc::unknown_action: return "UnknownAction";
        case errc::unknown_object: return "UnknownObject";
        case errc::ambiguous_step: return "AmbiguousStep";
        case errc::missing_target: return "MissingTarget";
        case errc::no_segments_found: return "NoSegmentsFound";
        case errc::malformed_coordinate: return "MalformedCoordinate";
        case errc::no_match: return "NoMatch";
        case errc::ambiguous_match: return "AmbiguousMatch";
        case errc::unknown_label: return "UnknownLabel";
        case errc::no_base_defined: return "NoBaseDefined";
        case errc::duplicate_size: return "DuplicateSize";
        case errc::unreachable: return "Unreachable";
        case errc::invalid_task: return "InvalidTask";
        case errc::convergence_timeout: return "ConvergenceTimeout";
        case errc::object_missing: return "ObjectMissing";
        case errc::target_occupied: return "TargetOccupied";
        case errc::empty_cluster: return "EmptyCluster";
        case errc::unknown_task_family: return "UnknownTaskFamily";
        case errc::timeout: return "Timeout";
        case errc::http_error: return "HttpError";
        case errc::empty_completion: return "EmptyCompletion";
        case errc::backend_unavailable: return "BackendUnavailable";
        case errc::io_error: return "IoError";
        case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

std::string to_string(const GridPoint& p) {
    std::ostringstream os;
    os << "(" << p.x << ", " << p.y << ", " << p.z << ")";
    return os.str();
}

char axis_letter(AxisName a) {
    switch (a) {
        case AxisName::X: return 'x';
        case AxisName::Y: return 'y';
        case AxisName::Z: return 'z';
    }
    return '?';
}

AxisName axis_from_letter(char c) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case 'x': return AxisName::X;
        case 'y': return AxisName::Y;
        case 'z': return AxisName::Z;
        default: raise(errc::parse_error, std::string("not an axis letter: ") + c);
    }
}

std::string axis_to_string(const Axis& a) {
    std::string s;
    s.push_back(a.sign >= 0 ? '+' : '-');
    s.push_back(axis_letter(a.name));
    return s;
}

Axis axis_from_string(std::string_view s) {
    int sign = +1;
    std::optional<AxisName> name;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '+') {
            sign = +1;
        } else if (c == '-') {
            sign = -1;
        } else {
            if (name) raise(errc::parse_error, "axis has more than one letter: " + std::string(s));
            name = axis_from_letter(c);
        }
    }
    if (!name) raise(errc::parse_error, "empty axis string");
    return Axis{*name, sign};
}

GridPoint direction_offset(Direction d) {
    switch (d) {
        case Direction::XPos: return {+1, 0, 0};
        case Direction::XNeg: return {-1, 0, 0};
        case Direction::YPos: return {0, +1, 0};
        case Direction::YNeg: return {0, -1, 0};
        case Direction::ZPos: return {0, 0, +1};
        case Direction::ZNeg: return {0, 0, -1};
    }
    return {};
}

Axis direction_axis(Direction d) {
    switch (d) {
        case Direction::XPos: return {AxisName::X, +1};
        case Direction::XNeg: return {AxisName::X, -1};
        case Direction::YPos: return {AxisName::Y, +1};
        case Direction::YNeg: return {AxisName::Y, -1};
        case Direction::ZPos: return {AxisName::Z, +1};
        case Direction::ZNeg: return {AxisName::Z, -1};
    }
    return {};
}

Direction direction_from_axis(const Axis& a) {
    int base = 0;
    switch (a.name) {
        case AxisName::X: base = 0; break;
        case AxisName::Y: base = 2; break;
        case AxisName::Z: base = 4; break;
    }
    return static_cast<Direction>(base + (a.sign >= 0 ? 0 : 1));
}

Axis axis_of(const Vec3& d) {
    const bool nx = d.x != 0.0;
    const bool ny = d.y != 0.0;
    const bool nz = d.z != 0.0;
    const int nonzero = int(nx) + int(ny) + int(nz);
    if (nonzero == 0) raise(errc::zero_displacement, "displacement is zero");
    if (nonzero > 1) {
        std::ostringstream os;
        os << "displacement (" << d.x << ", " << d.y << ", " << d.z << ") has " << nonzero
           << " nonzero components";
        raise(errc::not_axis_parallel, os.str());
    }
    if (nx) return {AxisName::X, d.x > 0 ? +1 : -1};
    if (ny) return {AxisName::Y, d.y > 0 ? +1 : -1};
    return {AxisName::Z, d.z > 0 ? +1 : -1};
}

Axis axis_of(const GridPoint& d) { return axis_of(d.to_vec3()); }

Segment::Segment(GridPoint from_, GridPoint to_) : from(from_), to(to_) {
    axis_of(to - from); // throws on zero or diagonal displacement
}

AxisName Segment::axis() const { return axis_of(to - from).name; }

Direction Segment::direction() const { return direction_from_axis(axis_of(to - from)); }

int Segment::length() const {
    const GridPoint d = to - from;
    return std::abs(d.x) + std::abs(d.y) + std::abs(d.z);
}

bool segment_contains_point(const Segment& s, const GridPoint& p) {
    const auto between = [](int a, int b, int v) {
        return v >= std::min(a, b) && v <= std::max(a, b);
    };
    switch (s.axis()) {
        case AxisName::X:
            return p.y == s.from.y && p.z == s.from.z && between(s.from.x, s.to.x, p.x);
        case AxisName::Y:
            return p.x == s.from.x && p.z == s.from.z && between(s.from.y, s.to.y, p.y);
        case AxisName::Z:
            return p.x == s.from.x && p.y == s.from.y && between(s.from.z, s.to.z, p.z);
    }
    return false;
}

std::string to_string(ObjectKind k) {
    switch (k) {
        case ObjectKind::Cube: return "cube";
        case ObjectKind::Disk: return "disk";
        case ObjectKind::Pipe: return "pipe";
        case ObjectKind::Peg: return "peg";
        case ObjectKind::Marker: return "marker";
    }
    return "?";
}

ObjectKind object_kind_from_string(std::string_view s) {
    const std::string n = normalize_label(s);
    if (n == "cube") return ObjectKind::Cube;
    if (n == "disk") return ObjectKind::Disk;
    if (n == "pipe") return ObjectKind::Pipe;
    if (n == "peg") return ObjectKind::Peg;
    if (n == "marker") return ObjectKind::Marker;
    raise(errc::parse_error, "unknown object kind: " + std::string(s));
}

SceneObject* Scene::find(std::string_view name) {
    const std::string n = normalize_label(name);
    for (auto& obj : objects)
        if (normalize_label(obj.name) == n) return &obj;
    return nullptr;
}

const SceneObject* Scene::find(std::string_view name) const {
    return const_cast<Scene*>(this)->find(name);
}

std::string normalize_label(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string out;
    out.reserve(e - b);
    for (std::size_t i = b; i < e; ++i)
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
    return out;
}

namespace {

Vec3 vec3_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        raise(errc::parse_error, std::string(what) + " must be an array of 3 numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

void validate_scene(const Scene& scene) {
    std::unordered_set<std::string> names;
    for (const auto& obj : scene.objects) {
        if (obj.name.empty()) raise(errc::invalid_scene, "object with empty name");
        if (obj.size.x < 0 || obj.size.y < 0 || obj.size.z < 0)
            raise(errc::invalid_scene, "negative size on object " + obj.name);
        if (!obj.size.finite() || !obj.position.finite())
            raise(errc::invalid_scene, "non-finite field on object " + obj.name);
        if (!names.insert(normalize_label(obj.name)).second)
            raise(errc::invalid_scene, "duplicate object name: " + obj.name);
    }
}

} // namespace

Scene parse_scene(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("scene JSON: ") + e.what());
    }
    Scene scene;
    if (j.contains("room") && !j["room"].is_null()) scene.room = j["room"].get<int>();
    for (const auto& oj : j.value("objects", json::array())) {
        SceneObject obj;
        obj.name = oj.at("name").get<std::string>();
        obj.kind = object_kind_from_string(oj.value("kind", "cube"));
        obj.size = vec3_from_json(oj.at("size"), "size");
        obj.position = vec3_from_json(oj.at("position"), "position");
        scene.objects.push_back(std::move(obj));
    }
    validate_scene(scene);
    return scene;
}

Scene load_scene(const std::string& path) { return parse_scene(read_text_file(path)); }

std::string scene_to_json(const Scene& scene) {
    json j;
    if (scene.room) j["room"] = *scene.room;
    j["objects"] = json::array();
    for (const auto& obj : scene.objects) {
        j["objects"].push_back({
            {"name", obj.name},
            {"kind", to_string(obj.kind)},
            {"size", {obj.size.x, obj.size.y, obj.size.z}},
            {"position", {obj.position.x, obj.position.y, obj.position.z}},
        });
    }
    return j.dump(2);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::io_error, "cannot open " + path + " for writing");
    out << content;
    if (!out) raise(errc::io_error, "write failed: " + path);
}

} // namespace seqplan
