#include <seqplan/perception.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace seqplan {

using json = nlohmann::json;

bool BoundingBox::contains(const Vec3& p, double tol) const {
    return std::abs(p.x - center.x) <= size.x / 2 + tol &&
           std::abs(p.y - center.y) <= size.y / 2 + tol &&
           std::abs(p.z - center.z) <= size.z / 2 + tol;
}

namespace {

double dist2(const Vec3& a, const Vec3& b) {
    const Vec3 d = a - b;
    return dot(d, d);
}

Vec3 window_mean(const std::vector<Vec3>& input, const Vec3& at, double bw2) {
    Vec3 sum;
    int count = 0;
    for (const auto& q : input) {
        if (dist2(q, at) <= bw2) {
            sum += q;
            ++count;
        }
    }
    return sum / double(count); // the window always holds the point itself
}

} // namespace

PointCloud density_shift(const PointCloud& cloud, double bandwidth, int iterations) {
    if (bandwidth <= 0) raise(errc::invalid_task, "bandwidth must be positive");
    if (iterations < 0) raise(errc::invalid_task, "iterations must be nonnegative");
    const double bw2 = bandwidth * bandwidth;
    PointCloud current = cloud;
    PointCloud next = cloud;
    for (int it = 0; it < iterations; ++it) {
        const std::vector<Vec3>& cur = current.points;
#pragma omp parallel for schedule(static)
        for (long i = 0; i < static_cast<long>(cur.size()); ++i)
            next.points[i] = window_mean(cloud.points, cur[i], bw2);
        std::swap(current, next);
    }
    return current;
}

PointCloud density_shift_serial(const PointCloud& cloud, double bandwidth, int iterations) {
    if (bandwidth <= 0) raise(errc::invalid_task, "bandwidth must be positive");
    if (iterations < 0) raise(errc::invalid_task, "iterations must be nonnegative");
    const double bw2 = bandwidth * bandwidth;
    PointCloud current = cloud;
    PointCloud next = cloud;
    for (int it = 0; it < iterations; ++it) {
        for (std::size_t i = 0; i < current.points.size(); ++i)
            next.points[i] = window_mean(cloud.points, current.points[i], bw2);
        std::swap(current, next);
    }
    return current;
}

namespace {

std::vector<std::vector<std::size_t>> components_from_adjacency(
    const std::vector<std::vector<std::size_t>>& neighbors, std::size_t min_points) {
    const std::size_t n = neighbors.size();
    std::vector<bool> visited(n, false);
    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t seed = 0; seed < n; ++seed) {
        if (visited[seed]) continue;
        std::vector<std::size_t> component;
        std::vector<std::size_t> stack{seed};
        visited[seed] = true;
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            component.push_back(i);
            for (std::size_t j : neighbors[i]) {
                if (!visited[j]) {
                    visited[j] = true;
                    stack.push_back(j);
                }
            }
        }
        if (component.size() >= min_points) {
            std::sort(component.begin(), component.end());
            clusters.push_back(std::move(component));
        }
    }
    // Seeds are scanned in index order, so clusters are already ordered by
    // smallest member.
    return clusters;
}

} // namespace

std::vector<std::vector<std::size_t>> cluster_points(const PointCloud& cloud, double radius,
                                                     std::size_t min_points) {
    if (radius <= 0) raise(errc::invalid_task, "radius must be positive");
    if (min_points < 1) raise(errc::invalid_task, "min_points must be at least 1");
    const double r2 = radius * radius;
    const std::size_t n = cloud.points.size();
    std::vector<std::vector<std::size_t>> neighbors(n);
#pragma omp parallel for schedule(static)
    for (long i = 0; i < static_cast<long>(n); ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != static_cast<std::size_t>(i) &&
                dist2(cloud.points[i], cloud.points[j]) <= r2)
                neighbors[i].push_back(j);
        }
    }
    return components_from_adjacency(neighbors, min_points);
}

std::vector<std::vector<std::size_t>> cluster_points_serial(const PointCloud& cloud,
                                                            double radius,
                                                            std::size_t min_points) {
    if (radius <= 0) raise(errc::invalid_task, "radius must be positive");
    if (min_points < 1) raise(errc::invalid_task, "min_points must be at least 1");
    const double r2 = radius * radius;
    const std::size_t n = cloud.points.size();
    std::vector<std::vector<std::size_t>> neighbors(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (j != i && dist2(cloud.points[i], cloud.points[j]) <= r2)
                neighbors[i].push_back(j);
    return components_from_adjacency(neighbors, min_points);
}

BoundingBox fit_box(const PointCloud& cloud, const std::vector<std::size_t>& indices) {
    if (indices.empty()) raise(errc::empty_cluster, "cannot fit a box around zero points");
    Vec3 lo = cloud.points.at(indices[0]);
    Vec3 hi = lo;
    for (std::size_t idx : indices) {
        const Vec3& p = cloud.points.at(idx);
        lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
        hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
    }
    BoundingBox box;
    box.size = hi - lo;
    box.center = (lo + hi) / 2.0;
    return box;
}

std::vector<LabeledBox> label_clusters(const PointCloud& cloud,
                                       const std::vector<std::string>& point_labels,
                                       const std::vector<std::vector<std::size_t>>& clusters) {
    std::vector<LabeledBox> out;
    for (const auto& cluster : clusters) {
        std::map<std::string, std::size_t> votes;
        for (std::size_t idx : cluster) {
            if (idx < point_labels.size() && !point_labels[idx].empty())
                ++votes[normalize_label(point_labels[idx])];
        }
        std::string label = "unknown";
        std::size_t best = 0;
        for (const auto& [candidate, count] : votes) {
            if (count > best) { // map order makes ties lexicographically smallest
                best = count;
                label = candidate;
            }
        }
        out.push_back({label, fit_box(cloud, cluster), cluster});
    }
    return out;
}

LabeledCloud parse_cloud(const std::string& text) {
    LabeledCloud result;
    std::istringstream is(text);
    std::string line;
    bool any_label = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        double x, y, z;
        if (!(ls >> x >> y >> z)) {
            const std::string t = normalize_label(line);
            if (t.empty() || t[0] == '#') continue;
            raise(errc::parse_error, "bad cloud line: " + line);
        }
        std::string label;
        std::getline(ls, label);
        label = normalize_label(label);
        if (!label.empty()) any_label = true;
        result.cloud.points.push_back({x, y, z});
        result.labels.push_back(label);
    }
    if (!any_label) result.labels.clear();
    return result;
}

LabeledCloud load_cloud(const std::string& path) { return parse_cloud(read_text_file(path)); }

std::vector<LabeledBox> detect_objects(const LabeledCloud& input, const PerceptionConfig& cfg) {
    const PointCloud shifted = density_shift(input.cloud, cfg.bandwidth, cfg.shift_iterations);
    const auto clusters = cluster_points(shifted, cfg.cluster_radius, cfg.min_points);
    return label_clusters(shifted, input.labels, clusters);
}

std::string boxes_to_json(const std::vector<LabeledBox>& boxes) {
    json arr = json::array();
    for (const auto& b : boxes) {
        arr.push_back({
            {"label", b.label},
            {"size", {b.box.size.x, b.box.size.y, b.box.size.z}},
            {"center", {b.box.center.x, b.box.center.y, b.box.center.z}},
        });
    }
    return arr.dump(2);
}

} // namespace seqplan
