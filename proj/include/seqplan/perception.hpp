#pragma once

#include <seqplan/world.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace seqplan {

struct PointCloud {
    std::vector<Vec3> points;

    std::size_t size() const { return points.size(); }
};

/// Axis-aligned box parameterized as size (width, length, height) and center.
struct BoundingBox {
    Vec3 size;
    Vec3 center;

    /// Closed-box membership with a tiny absolute slack for the rounding in
    /// center/size arithmetic.
    bool contains(const Vec3& p, double tol = 1e-12) const;
};

struct LabeledBox {
    std::string label;
    BoundingBox box;
    std::vector<std::size_t> point_indices;
};

struct PerceptionConfig {
    double bandwidth = 0.1;       // mean-shift window radius, scene units
    int shift_iterations = 3;
    double cluster_radius = 0.05; // connectivity radius
    std::size_t min_points = 10;  // clusters below this are noise
};

/// Flat-kernel mean shift toward the density centers of the input cloud: each
/// point is replaced by the mean of all input points within `bandwidth` of its
/// current location, `iterations` times. Point count is preserved.
/// The default entry point parallelizes the per-point window scan; the serial
/// variant is the reference implementation and returns identical clouds.
PointCloud density_shift(const PointCloud& cloud, double bandwidth, int iterations);
PointCloud density_shift_serial(const PointCloud& cloud, double bandwidth, int iterations);

/// Connected components of the graph joining points within `radius`.
/// Components smaller than min_points are dropped as noise. Clusters are
/// ordered by smallest member index; members are sorted ascending.
std::vector<std::vector<std::size_t>> cluster_points(const PointCloud& cloud, double radius,
                                                     std::size_t min_points);
std::vector<std::vector<std::size_t>> cluster_points_serial(const PointCloud& cloud,
                                                            double radius,
                                                            std::size_t min_points);

/// Tightest axis-aligned box around the member points: size = max - min,
/// center = midpoint. Throws empty_cluster.
BoundingBox fit_box(const PointCloud& cloud, const std::vector<std::size_t>& indices);

/// Ground-truth labeler stand-in: each cluster takes the majority label of its
/// members (ties break to the lexicographically smallest; unlabeled clusters
/// become "unknown").
std::vector<LabeledBox> label_clusters(const PointCloud& cloud,
                                       const std::vector<std::string>& point_labels,
                                       const std::vector<std::vector<std::size_t>>& clusters);

struct LabeledCloud {
    PointCloud cloud;
    std::vector<std::string> labels; // empty when the file carries no labels
};

/// Text format: one point per line, "x y z [label]"; blank and '#' lines skipped.
LabeledCloud parse_cloud(const std::string& text);
LabeledCloud load_cloud(const std::string& path);

/// density_shift + cluster_points + fit_box + label_clusters.
std::vector<LabeledBox> detect_objects(const LabeledCloud& input, const PerceptionConfig& cfg);

/// JSON [{label, size:[w,l,h], center:[x,y,z]}].
std::string boxes_to_json(const std::vector<LabeledBox>& boxes);

} // namespace seqplan
