#include <doctest.h>

#include <seqplan/world.hpp>

#include "test_util.hpp"

#include <random>

using namespace seqplan;

TEST_CASE("axis_of picks the single signed axis") {
    CHECK(axis_of(Vec3{0, 0, 2}) == Axis{AxisName::Z, +1});
    CHECK(axis_of(Vec3{0, -3, 0}) == Axis{AxisName::Y, -1});
    CHECK(axis_of(GridPoint{-4, 0, 0}) == Axis{AxisName::X, -1});

    CHECK_THROWS_WITH_AS(axis_of(Vec3{1, 1, 0}), doctest::Contains("NotAxisParallel"), error);
    CHECK_THROWS_AS(axis_of(Vec3{0, 0, 0}), error);
    try {
        axis_of(Vec3{0, 0, 0});
    } catch (const error& e) {
        CHECK(e.code() == errc::zero_displacement);
    }
}

TEST_CASE("axis_of rejects every non-axis-parallel displacement") {
    for (int x = -2; x <= 2; ++x)
        for (int y = -2; y <= 2; ++y)
            for (int z = -2; z <= 2; ++z) {
                const int nonzero = (x != 0) + (y != 0) + (z != 0);
                const GridPoint d{x, y, z};
                if (nonzero == 1) {
                    CHECK_NOTHROW(axis_of(d));
                } else {
                    CHECK_THROWS_AS(axis_of(d), error);
                }
            }
}

TEST_CASE("segment invariants reject diagonal and zero segments") {
    CHECK_NOTHROW(Segment({0, 0, 0}, {0, 0, 3}));
    CHECK_THROWS_AS(Segment({0, 0, 0}, {1, 1, 0}), error);
    CHECK_THROWS_AS(Segment({2, 2, 2}, {2, 2, 2}), error);
}

TEST_CASE("segment_contains_point endpoints and off-axis points") {
    const Segment riser({5, 5, 4}, {5, 5, 6});
    CHECK(segment_contains_point(riser, {5, 5, 5}));
    CHECK(segment_contains_point(riser, {5, 5, 6}));
    CHECK(segment_contains_point(riser, {5, 5, 4}));
    CHECK_FALSE(segment_contains_point(riser, {5, 6, 5}));
    CHECK_FALSE(segment_contains_point(riser, {5, 5, 7}));
}

TEST_CASE("segment_contains_point agrees with brute-force walk on the full grid") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> coord(0, 10);
    std::uniform_int_distribution<int> axis(0, 2);
    for (int trial = 0; trial < 30; ++trial) {
        GridPoint from{coord(rng), coord(rng), coord(rng)};
        GridPoint to = from;
        const int a = axis(rng);
        int delta = 0;
        while (delta == 0) delta = coord(rng) - 5;
        (a == 0 ? to.x : a == 1 ? to.y : to.z) += delta;
        to.x = std::clamp(to.x, 0, 10);
        to.y = std::clamp(to.y, 0, 10);
        to.z = std::clamp(to.z, 0, 10);
        if (to == from) continue;
        const Segment seg(from, to);
        for (int x = 0; x <= 10; ++x)
            for (int y = 0; y <= 10; ++y)
                for (int z = 0; z <= 10; ++z) {
                    const GridPoint p{x, y, z};
                    CHECK(segment_contains_point(seg, p) == test_util::walk_contains(from, to, p));
                }
    }
}

TEST_CASE("axis strings parse both spellings and render canonically") {
    CHECK(axis_from_string("z") == Axis{AxisName::Z, +1});
    CHECK(axis_from_string("+z") == Axis{AxisName::Z, +1});
    CHECK(axis_from_string("z-") == Axis{AxisName::Z, -1});
    CHECK(axis_from_string("-X") == Axis{AxisName::X, -1});
    CHECK(axis_to_string({AxisName::Y, -1}) == "-y");
    CHECK_THROWS_AS(axis_from_string("xy"), error);
    CHECK_THROWS_AS(axis_from_string(""), error);
}

TEST_CASE("direction order matches the tie-break ranking") {
    CHECK(direction_axis(Direction::XPos) == Axis{AxisName::X, +1});
    CHECK(direction_axis(Direction::ZNeg) == Axis{AxisName::Z, -1});
    CHECK(static_cast<int>(Direction::XPos) < static_cast<int>(Direction::XNeg));
    CHECK(static_cast<int>(Direction::YNeg) < static_cast<int>(Direction::ZPos));
}

TEST_CASE("scene JSON round-trips and enforces invariants") {
    const std::string text = test_util::read_fixture("scenes/stacking_scene.json");
    const Scene scene = parse_scene(text);
    CHECK(scene.objects.size() == 6);
    CHECK(scene.find("a") != nullptr);
    CHECK(scene.find("A")->size.x == 1.0);
    CHECK(scene.find("base")->kind == ObjectKind::Marker);

    const Scene again = parse_scene(scene_to_json(scene));
    CHECK(again.objects.size() == scene.objects.size());
    for (std::size_t i = 0; i < scene.objects.size(); ++i) {
        CHECK(again.objects[i].name == scene.objects[i].name);
        CHECK(again.objects[i].position == scene.objects[i].position);
        CHECK(again.objects[i].size == scene.objects[i].size);
        CHECK(again.objects[i].kind == scene.objects[i].kind);
    }

    CHECK_THROWS_AS(parse_scene(R"({"objects":[{"name":"x","kind":"cube","size":[1,1,1],
        "position":[0,0,0]},{"name":"X","kind":"disk","size":[1,1,1],"position":[1,0,0]}]})"),
                    error);
    CHECK_THROWS_AS(parse_scene(R"({"objects":[{"name":"x","kind":"wheel","size":[1,1,1],
        "position":[0,0,0]}]})"),
                    error);
    CHECK_THROWS_AS(parse_scene(R"({"objects":[{"name":"","kind":"cube","size":[1,1,1],
        "position":[0,0,0]}]})"),
                    error);
}

TEST_CASE("normalize_label lowers case and trims") {
    CHECK(normalize_label("  Pipe 2ft ") == "pipe 2ft");
    CHECK(normalize_label("A") == "a");
    CHECK(normalize_label("") == "");
}
