// Compares the OpenMP kernels against their serial reference implementations
// and checks that both produce identical results.

#include <seqplan/harness.hpp>
#include <seqplan/perception.hpp>
#include <seqplan/planners.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace seqplan;
using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int repeats) {
    // One warmup run, then the best of `repeats`.
    fn();
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
    std::printf("%-28s serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n", name,
                serial_ms, parallel_ms, serial_ms / parallel_ms, equal ? "results equal" : "MISMATCH");
}

PointCloud random_cloud(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> blob(0.0, 1.0);
    std::uniform_int_distribution<int> which(0, 7);
    PointCloud cloud;
    for (std::size_t i = 0; i < n; ++i) {
        const int b = which(rng);
        const Vec3 center{double(b % 2) * 2.0, double((b / 2) % 2) * 2.0, double(b / 4) * 2.0};
        cloud.points.push_back(center + Vec3{blob(rng) * 0.3, blob(rng) * 0.3, blob(rng) * 0.3});
    }
    return cloud;
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel entry points run serially\n");
#endif

    std::mt19937_64 rng(7);

    {
        const PointCloud cloud = random_cloud(6000, rng);
        PointCloud serial_out, parallel_out;
        const double s =
            time_ms([&] { serial_out = density_shift_serial(cloud, 0.15, 3); }, 3);
        const double p = time_ms([&] { parallel_out = density_shift(cloud, 0.15, 3); }, 3);
        report("density_shift (6k pts)", s, p, serial_out.points == parallel_out.points);
    }

    {
        const PointCloud cloud = random_cloud(6000, rng);
        std::vector<std::vector<std::size_t>> serial_out, parallel_out;
        const double s =
            time_ms([&] { serial_out = cluster_points_serial(cloud, 0.1, 10); }, 3);
        const double p = time_ms([&] { parallel_out = cluster_points(cloud, 0.1, 10); }, 3);
        report("cluster_points (6k pts)", s, p, serial_out == parallel_out);
    }

    {
        // A large open room with scattered obstacles keeps the search frontier wide.
        PipeTaskSpec spec;
        spec.room = 40;
        spec.start = {20, 20, 0};
        spec.start_axis = {AxisName::Z, +1};
        spec.end = {20, 20, 40};
        spec.end_axis = {AxisName::Z, -1};
        spec.lengths = {2, 3};
        spec.mandatory = {{0, 0, 32}, {24, 24, 0}};
        std::mt19937_64 orng(11);
        std::uniform_int_distribution<int> coord(0, 40);
        while (spec.obstacles.size() < 600) {
            const GridPoint p{coord(orng), coord(orng), coord(orng)};
            if (!(p == spec.start) && !(p == spec.end)) spec.obstacles.push_back(p);
        }
        PipeLayout serial_out, parallel_out;
        const double s = time_ms([&] { serial_out = route_pipes_serial(spec); }, 3);
        const double p = time_ms([&] { parallel_out = route_pipes(spec); }, 3);
        report("route_pipes (41^3 room)", s, p, serial_out == parallel_out);
    }

    {
        PipeTaskSpec spec;
        spec.room = 10;
        spec.start = {0, 0, 0};
        spec.start_axis = {AxisName::Z, +1};
        spec.end = {10, 10, 10};
        spec.end_axis = {AxisName::Z, -1};
        spec.lengths = {2};
        spec.mandatory = {{0, 0, 8}, {6, 6, 0}};
        TaskSpec task;
        task.id = "bench-pass-points";
        task.body = spec;

        TrialReport out;
        const double p = time_ms(
            [&] { out = run_trials(task, NoisyOracleBackend{0.5, 42}, 64); }, 3);
        std::printf("%-28s parallel %9.2f ms   (%d trials, %d fail)\n",
                    "run_trials (64 noisy)", p, out.total(), out.fail);
    }

    return 0;
}
