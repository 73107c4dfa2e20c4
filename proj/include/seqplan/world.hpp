#pragma once

#include <seqplan/error.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqplan {

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr bool operator==(const Vec3&) const = default;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
inline constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline constexpr Vec3 hadamard(const Vec3& a, const Vec3& b) { return {a.x * b.x, a.y * b.y, a.z * b.z}; }

/// Integer lattice point, used for pipe routing on the room grid.
struct GridPoint {
    int x = 0;
    int y = 0;
    int z = 0;

    constexpr bool operator==(const GridPoint&) const = default;
    constexpr GridPoint operator+(const GridPoint& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr GridPoint operator-(const GridPoint& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 to_vec3() const { return {double(x), double(y), double(z)}; }
};

std::string to_string(const GridPoint& p); // "(x, y, z)"

enum class AxisName { X, Y, Z };

char axis_letter(AxisName a);               // 'x' | 'y' | 'z'
AxisName axis_from_letter(char c);          // accepts either case

/// One coordinate axis with a sign, e.g. the "+z" start direction of a pipe run.
struct Axis {
    AxisName name = AxisName::X;
    int sign = +1; // +1 or -1

    constexpr bool operator==(const Axis&) const = default;
};

std::string axis_to_string(const Axis& a);  // "+z", "-x", ...
Axis axis_from_string(std::string_view s);  // accepts "z", "+z", "z+", "-Z", ...

/// The six axis-parallel directions, ordered x+ < x- < y+ < y- < z+ < z-.
/// The ordering doubles as the lexicographic tie-break rank in route search.
enum class Direction { XPos = 0, XNeg, YPos, YNeg, ZPos, ZNeg };

constexpr std::array<Direction, 6> kAllDirections = {
    Direction::XPos, Direction::XNeg, Direction::YPos,
    Direction::YNeg, Direction::ZPos, Direction::ZNeg,
};

GridPoint direction_offset(Direction d); // unit step
Axis direction_axis(Direction d);
Direction direction_from_axis(const Axis& a);

/// Axis-parallel grid segment. Constructing a zero-length or diagonal
/// segment throws (zero_displacement / not_axis_parallel).
struct Segment {
    GridPoint from;
    GridPoint to;

    Segment(GridPoint from_, GridPoint to_);

    AxisName axis() const;
    Direction direction() const;
    int length() const; // number of grid units along the axis

    constexpr bool operator==(const Segment&) const = default;
};

/// Single axis-with-sign of a nonzero axis-parallel displacement.
/// Throws zero_displacement / not_axis_parallel otherwise.
Axis axis_of(const Vec3& displacement);
Axis axis_of(const GridPoint& displacement);

/// True iff p lies on the closed segment, endpoints included.
bool segment_contains_point(const Segment& s, const GridPoint& p);

enum class ObjectKind { Cube, Disk, Pipe, Peg, Marker };

std::string to_string(ObjectKind k);
ObjectKind object_kind_from_string(std::string_view s);

/// True for kinds that a plan step may move; pegs and markers anchor locations.
inline bool is_movable(ObjectKind k) { return k != ObjectKind::Peg && k != ObjectKind::Marker; }

struct SceneObject {
    std::string name;
    Vec3 size;     // width, length, height
    Vec3 position; // center
    ObjectKind kind = ObjectKind::Cube;

    double height() const { return size.z; }
    double footprint_area() const { return size.x * size.y; }
};

struct Scene {
    std::vector<SceneObject> objects;
    std::optional<int> room;

    SceneObject* find(std::string_view name);
    const SceneObject* find(std::string_view name) const;
};

/// Lowercased, whitespace-trimmed form used for all label and dictionary lookups.
std::string normalize_label(std::string_view s);

/// Scene JSON: {"room": int?, "objects": [{name, kind, size:[w,l,h], position:[x,y,z]}]}.
Scene parse_scene(const std::string& json_text);
Scene load_scene(const std::string& path);
std::string scene_to_json(const Scene& scene);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace seqplan
