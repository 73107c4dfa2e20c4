#include <doctest.h>

#include <seqplan/perception.hpp>

#include "test_util.hpp"

#include <algorithm>
#include <numeric>
#include <random>

using namespace seqplan;

namespace {

PointCloud gaussian_blob(std::mt19937& rng, const Vec3& center, double sigma, int n) {
    std::normal_distribution<double> d(0.0, sigma);
    PointCloud cloud;
    for (int i = 0; i < n; ++i)
        cloud.points.push_back(center + Vec3{d(rng), d(rng), d(rng)});
    return cloud;
}

void append(PointCloud& into, const PointCloud& from) {
    into.points.insert(into.points.end(), from.points.begin(), from.points.end());
}

// Brute-force union-find over the within-radius graph; the oracle for
// cluster_points.
std::vector<std::vector<std::size_t>> union_find_clusters(const PointCloud& cloud, double radius,
                                                          std::size_t min_points) {
    const std::size_t n = cloud.points.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    const std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const Vec3 d = cloud.points[i] - cloud.points[j];
            if (dot(d, d) <= radius * radius) parent[find(i)] = find(j);
        }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> clusters;
    for (auto& [root, members] : groups) {
        if (members.size() < min_points) continue;
        std::sort(members.begin(), members.end());
        clusters.push_back(members);
    }
    std::sort(clusters.begin(), clusters.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return clusters;
}

} // namespace

TEST_CASE("density_shift with zero iterations is the identity") {
    std::mt19937 rng(3);
    const PointCloud cloud = gaussian_blob(rng, {0, 0, 0}, 0.5, 50);
    CHECK(density_shift(cloud, 0.2, 0).points == cloud.points);
}

TEST_CASE("two points inside one window meet at their midpoint") {
    PointCloud cloud;
    cloud.points = {{0, 0, 0}, {0.05, 0, 0}};
    const PointCloud shifted = density_shift(cloud, 0.1, 1);
    CHECK(shifted.points[0] == Vec3{0.025, 0, 0});
    CHECK(shifted.points[1] == Vec3{0.025, 0, 0});
    // Once coincident they stay put: the shift is idempotent at a fixed point.
    const PointCloud again = density_shift(cloud, 0.1, 5);
    CHECK(again.points == density_shift(again, 0.1, 1).points);
}

TEST_CASE("drifting points move toward the cluster mean") {
    std::mt19937 rng(17);
    PointCloud cloud = gaussian_blob(rng, {1, 1, 1}, 0.01, 100);
    Vec3 mean{0, 0, 0};
    for (const auto& p : cloud.points) mean += p / 100.0;

    // Five drifted returns hovering within the window of the blob.
    std::vector<std::size_t> drifters;
    for (int i = 0; i < 5; ++i) {
        drifters.push_back(cloud.points.size());
        cloud.points.push_back(mean + Vec3{0.05, 0.02 * i, -0.03});
    }
    const PointCloud shifted = density_shift(cloud, 0.1, 1);
    for (std::size_t idx : drifters) {
        const double before = (cloud.points[idx] - mean).norm();
        const double after = (shifted.points[idx] - mean).norm();
        CHECK(after < before);
    }
}

TEST_CASE("parallel and serial mean shift agree exactly") {
    std::mt19937 rng(23);
    PointCloud cloud = gaussian_blob(rng, {0, 0, 0}, 0.3, 300);
    append(cloud, gaussian_blob(rng, {2, 0, 1}, 0.2, 200));
    const PointCloud a = density_shift(cloud, 0.15, 3);
    const PointCloud b = density_shift_serial(cloud, 0.15, 3);
    CHECK(a.points == b.points);
}

TEST_CASE("cluster_points separates distant blobs") {
    std::mt19937 rng(31);
    PointCloud cloud = gaussian_blob(rng, {0, 0, 0}, 0.02, 60);
    append(cloud, gaussian_blob(rng, {1, 0, 0}, 0.02, 60)); // 10x the radius apart
    const auto clusters = cluster_points(cloud, 0.1, 5);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].size() + clusters[1].size() == 120);
    CHECK(clusters[0].front() < clusters[1].front());
    CHECK(clusters == union_find_clusters(cloud, 0.1, 5));
}

TEST_CASE("singleton behavior at the noise threshold") {
    PointCloud cloud;
    cloud.points = {{5, 5, 2}};
    CHECK(cluster_points(cloud, 0.1, 1).size() == 1);
    CHECK(cluster_points(cloud, 0.1, 2).empty());
}

TEST_CASE("clustering equals brute-force union-find on random clouds") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 8; ++trial) {
        PointCloud cloud;
        const int blobs = 1 + int(rng() % 4);
        for (int b = 0; b < blobs; ++b) {
            const Vec3 center{double(int(rng() % 5)), double(int(rng() % 5)),
                              double(int(rng() % 3))};
            append(cloud, gaussian_blob(rng, center, 0.05 + 0.02 * b, 40 + int(rng() % 80)));
        }
        while (cloud.points.size() > 500) cloud.points.pop_back();
        const double radius = 0.05 + 0.05 * (trial % 3);
        const std::size_t min_points = 1 + trial % 4;
        const auto got = cluster_points(cloud, radius, min_points);
        const auto want = union_find_clusters(cloud, radius, min_points);
        CHECK(got == want);
        CHECK(cluster_points_serial(cloud, radius, min_points) == want);

        // Partition property: disjoint, and the union is exactly the
        // non-noise points.
        std::vector<bool> seen(cloud.points.size(), false);
        for (const auto& cluster : got)
            for (std::size_t idx : cluster) {
                CHECK_FALSE(seen[idx]);
                seen[idx] = true;
            }
    }
}

TEST_CASE("fit_box wraps and is minimal") {
    PointCloud cloud;
    cloud.points = {{0, 0, 0}, {2, 4, 6}};
    const BoundingBox box = fit_box(cloud, {0, 1});
    CHECK(box.size == Vec3{2, 4, 6});
    CHECK(box.center == Vec3{1, 2, 3});

    PointCloud single;
    single.points = {{5, 5, 2}};
    const BoundingBox degenerate = fit_box(single, {0});
    CHECK(degenerate.size == Vec3{0, 0, 0});
    CHECK(degenerate.center == Vec3{5, 5, 2});

    CHECK_THROWS_AS(fit_box(cloud, {}), error);
}

TEST_CASE("boxes fitted to samples of a known box nest inside it") {
    std::mt19937 rng(43);
    const Vec3 known_center{1, -2, 3};
    const Vec3 known_size{2, 1, 0.5};
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    PointCloud cloud;
    std::vector<std::size_t> indices;
    for (int i = 0; i < 1000; ++i) {
        indices.push_back(i);
        cloud.points.push_back(known_center + Vec3{u(rng) * known_size.x, u(rng) * known_size.y,
                                                   u(rng) * known_size.z});
    }
    const BoundingBox box = fit_box(cloud, indices);
    CHECK(box.size.x <= known_size.x);
    CHECK(box.size.y <= known_size.y);
    CHECK(box.size.z <= known_size.z);
    for (const auto& p : cloud.points) CHECK(box.contains(p));

    // Shrinking any dimension by epsilon must exclude at least one point.
    for (int axis = 0; axis < 3; ++axis) {
        BoundingBox shrunk = box;
        (axis == 0 ? shrunk.size.x : axis == 1 ? shrunk.size.y : shrunk.size.z) -= 1e-9;
        bool excluded = false;
        for (const auto& p : cloud.points)
            if (!shrunk.contains(p)) excluded = true;
        CHECK(excluded);
    }
}

TEST_CASE("label_clusters takes the member majority") {
    PointCloud cloud;
    cloud.points = {{0, 0, 0}, {0.01, 0, 0}, {0.02, 0, 0}, {1, 0, 0}};
    const std::vector<std::string> labels = {"cube", "cube", "disk", "peg"};
    const auto boxes = label_clusters(cloud, labels, {{0, 1, 2}, {3}});
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].label == "cube");
    CHECK(boxes[1].label == "peg");

    // Tie: lexicographically smallest label wins.
    const auto tied = label_clusters(cloud, {"b", "a", "", ""}, {{0, 1}});
    CHECK(tied[0].label == "a");

    // No labels at all.
    const auto unlabeled = label_clusters(cloud, {}, {{0, 1}});
    CHECK(unlabeled[0].label == "unknown");
}

TEST_CASE("cloud text parsing") {
    const LabeledCloud cloud = parse_cloud("# header\n1 2 3 crate\n4 5 6\n\n7 8 9 big box\n");
    REQUIRE(cloud.cloud.size() == 3);
    CHECK(cloud.cloud.points[0] == Vec3{1, 2, 3});
    CHECK(cloud.labels[0] == "crate");
    CHECK(cloud.labels[1] == "");
    CHECK(cloud.labels[2] == "big box");
    CHECK_THROWS_AS(parse_cloud("1 2\n"), error);

    const LabeledCloud bare = parse_cloud("1 2 3\n4 5 6\n");
    CHECK(bare.labels.empty());
}

TEST_CASE("detect_objects finds the two demo parts") {
    const LabeledCloud input = load_cloud(test_util::data_path("clouds/two_parts.txt"));
    PerceptionConfig cfg;
    cfg.bandwidth = 0.06;
    cfg.shift_iterations = 2;
    cfg.cluster_radius = 0.15;
    cfg.min_points = 10;
    const auto boxes = detect_objects(input, cfg);
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].label == "a");
    CHECK(boxes[1].label == "b");
    for (const auto& b : boxes) {
        CHECK(b.box.size.x > 0.1);
        CHECK(b.box.size.x < 0.8);
    }
}
