// Acceptance suite: every release criterion as one pass/fail line.
// Exit code is the number of failed criteria.

#include <seqplan/decoder.hpp>
#include <seqplan/executor.hpp>
#include <seqplan/harness.hpp>
#include <seqplan/matcher.hpp>
#include <seqplan/perception.hpp>
#include <seqplan/planners.hpp>
#include <seqplan/validators.hpp>

#include "test_util.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <sstream>

using namespace seqplan;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    std::ostringstream log;
    bool ok = true;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << "    FAILED: " << what << "\n";
        }
    }
};

void run(int number, const char* title, const std::function<void(Criterion&)>& body) {
    Criterion c;
    const auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.log << "    EXCEPTION: " << e.what() << "\n";
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("criterion %d: %s — %s (%.2fs)\n", number, c.ok ? "PASS" : "FAIL", title,
                seconds);
    if (!c.ok) {
        std::fputs(c.log.str().c_str(), stdout);
        ++failures;
    }
}

TaskSpec fixture_task(const std::string& name) {
    return load_task(test_util::data_path("tasks/" + name));
}

double elapsed(const Clock::time_point& t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

} // namespace

int main() {
    // 1. Hanoi optimality: 31 steps for five disks, SuccessOptimal, and
    //    2^n - 1 steps for every n <= 8, in under a second.
    run(1, "hanoi oracle is optimal for n <= 8", [](Criterion& c) {
        const auto t0 = Clock::now();
        const Plan five = plan_hanoi(5, "a", "b", "c");
        c.require(five.steps.size() == 31, "plan_hanoi(5) must have 31 steps");
        const Verdict v = validate_hanoi(five, 5, {"a", "b", "c"}, "a", "b");
        c.require(v.outcome == Outcome::SuccessOptimal, "plan_hanoi(5) must validate optimal");
        for (int n = 1; n <= 8; ++n) {
            const Plan plan = plan_hanoi(n, "a", "b", "c");
            c.require(plan.steps.size() == std::size_t((1 << n) - 1),
                      "plan_hanoi(" + std::to_string(n) + ") step count");
            c.require(validate_hanoi(plan, n, {"a", "b", "c"}, "a", "b").outcome ==
                          Outcome::SuccessOptimal,
                      "plan_hanoi(" + std::to_string(n) + ") must validate optimal");
        }
        c.require(elapsed(t0) < 1.0, "runtime must stay under 1 s");
    });

    // 2. Stacking fixture: the recorded reply decodes into the exact
    //    five-step sequence, executes into one stable tower, and validates
    //    SuccessOptimal in under a second.
    run(2, "recorded stacking reply decodes, executes and validates optimal", [](Criterion& c) {
        const auto t0 = Clock::now();
        const TaskSpec task = fixture_task("stacking.json");
        const Scene& scene = task.stacking()->scene;
        const Dictionary dict = Dictionary::with_default_actions({"A", "B", "C", "D", "E"});
        const Plan plan =
            decode_plan(test_util::read_fixture("transcripts/stacking_reply.txt"), dict);

        c.require(plan.steps.size() == 5, "five steps expected");
        const char* names = "ABCDE";
        c.require(plan.steps[0].object == "A" &&
                      plan.steps[0].target == TargetSpec{BaseLocation{}},
                  "step 1 must move A to the base location");
        for (int i = 1; i < 5; ++i) {
            c.require(plan.steps[i].object == std::string(1, names[i]) &&
                          plan.steps[i].target ==
                              TargetSpec{OnTopOf{std::string(1, names[i - 1])}},
                      "step " + std::to_string(i + 1) + " must stack on the previous cube");
        }

        const auto ops = match_objects(plan, scene, dict);
        const auto result = execute_plan(ops, scene, ImpedanceParams{});
        const Vec3 base = scene.find("base")->position;
        const double h[] = {1.0, 0.8, 0.6, 0.4, 0.2};
        double below = 0.0;
        for (int i = 0; i < 5; ++i) {
            const SceneObject* obj = result.scene.find(std::string(1, names[i]));
            const bool centered = obj && obj->position.x == base.x && obj->position.y == base.y &&
                                  std::abs(obj->position.z - (below + h[i] / 2)) < 1e-9;
            c.require(centered, std::string("cube ") + names[i] + " must sit centered on the tower");
            below += h[i];
        }
        c.require(validate_stacking(plan, scene).outcome == Outcome::SuccessOptimal,
                  "verdict must be SuccessOptimal");
        c.require(elapsed(t0) < 1.0, "runtime must stay under 1 s");
    });

    // 3. Pipe routing soundness on both room geometries and both length sets,
    //    against minima derived from the independent search oracle.
    run(3, "route_pipes is optimal on all four canonical tasks", [](Criterion& c) {
        const struct {
            const char* file;
            int golden_min; // derived from the exhaustive search oracle, committed
        } cases[] = {
            {"avoid_obstacles_constant.json", 14},
            {"avoid_obstacles_variable.json", 14},
            {"pass_points_constant.json", 46},
            {"pass_points_variable.json", 46},
        };
        for (const auto& cs : cases) {
            const auto t0 = Clock::now();
            const TaskSpec task = fixture_task(cs.file);
            const auto oracle = test_util::min_route_length_dijkstra(*task.pipe());
            c.require(oracle && *oracle == cs.golden_min,
                      std::string(cs.file) + ": oracle must confirm the committed minimum");
            const PipeLayout layout = route_pipes(*task.pipe());
            c.require(layout.total_length() == cs.golden_min,
                      std::string(cs.file) + ": route_pipes must reach the minimum");
            const Verdict v = validate_pipe_layout(layout_to_specs(layout), *task.pipe());
            c.require(v.outcome == Outcome::SuccessOptimal,
                      std::string(cs.file) + ": verdict must be SuccessOptimal");
            c.require(elapsed(t0) < 5.0, std::string(cs.file) + ": under 5 s");
        }
    });

    // 4. Oracle equivalence at desk scale: 200 randomized small specs,
    //    searched minimum equals exhaustive enumeration bounded at length 20.
    run(4, "route_pipes equals exhaustive enumeration on 200 random small specs",
        [](Criterion& c) {
            std::mt19937 rng(2024);
            int mismatches = 0;
            for (int trial = 0; trial < 200; ++trial) {
                PipeTaskSpec spec;
                spec.room = 2 + int(rng() % 3); // rooms of size <= 4
                std::uniform_int_distribution<int> coord(0, spec.room);
                const auto point = [&] { return GridPoint{coord(rng), coord(rng), coord(rng)}; };
                spec.start = point();
                do {
                    spec.end = point();
                } while (spec.end == spec.start);
                spec.start_axis = {static_cast<AxisName>(rng() % 3), rng() % 2 ? 1 : -1};
                spec.end_axis = {static_cast<AxisName>(rng() % 3), rng() % 2 ? 1 : -1};
                switch (rng() % 3) {
                    case 0: spec.lengths = {1}; break;
                    case 1: spec.lengths = {2}; break;
                    default: spec.lengths = {1, 2}; break;
                }
                for (int i = int(rng() % 3); i > 0; --i) { // <= 2 obstacles
                    const GridPoint p = point();
                    if (!(p == spec.start) && !(p == spec.end)) spec.obstacles.push_back(p);
                }
                if (rng() % 2) spec.mandatory.push_back(point()); // <= 1 mandatory point

                const auto enumerated = test_util::min_route_length_enumeration(spec, 20);
                std::optional<int> searched;
                try {
                    const int len = route_pipes(spec).total_length();
                    if (len <= 20) searched = len;
                } catch (const error&) {
                }
                if (searched != enumerated) ++mismatches;
            }
            c.require(mismatches == 0,
                      "found " + std::to_string(mismatches) + " mismatches out of 200");
        });

    // 5. The gap failure mode: two-coordinate-equal joints are classified
    //    Fail{GapBetweenSegments} and highlighted in the rendered SVG.
    run(5, "gap fixture fails with gap reasons and renders highlighted", [](Criterion& c) {
        const auto [layout, spec] =
            layout_from_json(test_util::read_fixture("layouts/gap_example.json"));
        // Both joints agree with their neighbors in exactly two coordinates.
        for (std::size_t i = 1; i < layout.segments.size(); ++i) {
            const GridPoint a = layout.segments[i - 1].segment.to;
            const GridPoint b = layout.segments[i].segment.from;
            if (a == b) continue;
            const int agreeing = int(a.x == b.x) + int(a.y == b.y) + int(a.z == b.z);
            c.require(agreeing == 2, "fixture joints must agree in exactly two coordinates");
        }
        const Verdict v = validate_pipe_layout(layout, spec);
        c.require(v.outcome == Outcome::Fail, "gap layout must fail");
        c.require(v.has_reason(ReasonCode::GapBetweenSegments),
                  "reason must be GapBetweenSegments");
        bool only_gaps = true;
        for (const auto& r : v.reasons) only_gaps &= r.code == ReasonCode::GapBetweenSegments;
        c.require(only_gaps, "no other reason may fire on this fixture");

        const std::string svg = render_layout_svg(layout, spec);
        c.require(svg.find("class=\"gap\"") != std::string::npos,
                  "SVG must contain gap highlight elements");
    });

    // 6. Impedance dynamics: closed-form match, no overshoot when overdamped,
    //    and energy decay under damping.
    run(6, "impedance dynamics match the closed form and dissipate energy", [](Criterion& c) {
        const double k = 100, m = 1, w = std::sqrt(k / m);
        ImpedanceParams p;
        p.stiffness = {k, k, k};
        p.damping = {2 * std::sqrt(k * m), 2 * std::sqrt(k * m), 2 * std::sqrt(k * m)};
        p.mass = m;
        const double dt = 1e-4;
        EEState s;
        double worst = 0.0;
        for (int i = 1; i <= 10000; ++i) { // t in (0, 1]
            s = step_dynamics(p, s, {1, 0, 0}, dt);
            const double t = i * dt;
            const double analytic = 1.0 - (1.0 + w * t) * std::exp(-w * t);
            worst = std::max(worst, std::abs(s.x.x - analytic));
        }
        c.require(worst < 1e-3, "critically damped response must match within 1e-3");

        std::mt19937 rng(77);
        std::uniform_real_distribution<double> kd(10.0, 400.0);
        std::uniform_real_distribution<double> md(0.5, 4.0);
        std::uniform_real_distribution<double> extra(1.0, 3.0);
        bool monotone = true;
        for (int trial = 0; trial < 50; ++trial) {
            const double kk = kd(rng);
            const double mm = md(rng);
            ImpedanceParams po;
            po.stiffness = {kk, kk, kk};
            const double cc = extra(rng) * 2 * std::sqrt(kk * mm);
            po.damping = {cc, cc, cc};
            po.mass = mm;
            EEState so;
            double prev = 0.0;
            for (int i = 0; i < 20000; ++i) {
                so = step_dynamics(po, so, {1, 0, 0}, 1e-3);
                if (so.x.x < prev - 1e-6 || so.x.x > 1.0 + 1e-6) monotone = false;
                prev = so.x.x;
            }
        }
        c.require(monotone, "overdamped draws must never overshoot");

        std::uniform_real_distribution<double> cd(1.0, 50.0);
        bool non_increasing = true;
        for (int trial = 0; trial < 20; ++trial) {
            ImpedanceParams pe;
            const double kk = kd(rng);
            pe.stiffness = {kk, kk, kk};
            const double cc = cd(rng);
            pe.damping = {cc, cc, cc};
            pe.payload = {0, 0, -9.8}; // excluded from the net dynamics by contract
            EEState se;
            se.x = {-1, 0.5, 2};
            se.v = {0.5, -1, 0};
            double prev = tracking_energy(pe, se, {1, 1, 1});
            for (int i = 0; i < 5000; ++i) {
                se = step_dynamics(pe, se, {1, 1, 1}, 1e-3);
                const double e = tracking_energy(pe, se, {1, 1, 1});
                if (e > prev + 1e-6) non_increasing = false;
                prev = e;
            }
        }
        c.require(non_increasing, "tracking energy must be non-increasing within 1e-6 per step");
    });

    // 7. Perception wrap invariant and clustering equivalence.
    run(7, "fitted boxes wrap tightly; clustering matches union-find", [](Criterion& c) {
        std::mt19937 rng(4242);
        for (int trial = 0; trial < 100; ++trial) {
            PointCloud cloud;
            std::vector<std::size_t> indices;
            const int n = 2 + int(rng() % 60);
            std::uniform_real_distribution<double> u(-10.0, 10.0);
            for (int i = 0; i < n; ++i) {
                indices.push_back(i);
                cloud.points.push_back({u(rng), u(rng), u(rng)});
            }
            const BoundingBox box = fit_box(cloud, indices);
            bool wraps = true;
            for (const auto& p : cloud.points) wraps &= box.contains(p);
            c.require(wraps, "every member point must lie in the closed box");
            for (int axis = 0; axis < 3; ++axis) {
                BoundingBox shrunk = box;
                (axis == 0 ? shrunk.size.x : axis == 1 ? shrunk.size.y : shrunk.size.z) -= 1e-9;
                bool excluded = false;
                for (const auto& p : cloud.points) excluded |= !shrunk.contains(p);
                c.require(excluded, "shrinking any dimension by 1e-9 must exclude a point");
            }
        }

        // Clustering vs brute-force union-find on clouds up to 500 points.
        for (int trial = 0; trial < 5; ++trial) {
            PointCloud cloud;
            std::normal_distribution<double> noise(0.0, 0.05);
            std::uniform_int_distribution<int> center(0, 4);
            const int n = 300 + int(rng() % 201);
            for (int i = 0; i < n; ++i)
                cloud.points.push_back({center(rng) + noise(rng), center(rng) + noise(rng),
                                        noise(rng)});
            const double radius = 0.08;
            const std::size_t min_points = 3;

            const auto got = cluster_points(cloud, radius, min_points);

            std::vector<std::size_t> parent(cloud.points.size());
            for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
            const std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
                while (parent[i] != i) i = parent[i] = parent[parent[i]];
                return i;
            };
            for (std::size_t i = 0; i < cloud.points.size(); ++i)
                for (std::size_t j = i + 1; j < cloud.points.size(); ++j) {
                    const Vec3 d = cloud.points[i] - cloud.points[j];
                    if (dot(d, d) <= radius * radius) parent[find(i)] = find(j);
                }
            std::map<std::size_t, std::vector<std::size_t>> groups;
            for (std::size_t i = 0; i < cloud.points.size(); ++i) groups[find(i)].push_back(i);
            std::vector<std::vector<std::size_t>> want;
            for (auto& [root, members] : groups) {
                if (members.size() < min_points) continue;
                std::sort(members.begin(), members.end());
                want.push_back(members);
            }
            std::sort(want.begin(), want.end(),
                      [](const auto& a, const auto& b) { return a.front() < b.front(); });
            c.require(got == want, "clusters must equal brute-force union-find");
        }
    });

    // 8. Harness schema fidelity. Success rates recorded against live
    //    proprietary models are intentionally not reproduced; the
    //    classification schema is the surface under test.
    run(8, "trial reports: oracle all-optimal, deletion all-fail, count identity",
        [](Criterion& c) {
            for (const char* name :
                 {"avoid_obstacles_constant.json", "avoid_obstacles_variable.json",
                  "pass_points_constant.json", "pass_points_variable.json"}) {
                const TaskSpec task = fixture_task(name);
                const TrialReport oracle = run_trials(task, OracleBackend{}, 20);
                c.require(oracle.total() == 20, std::string(name) + ": 20 trials");
                c.require(oracle.optimal_ratio() == 1.0,
                          std::string(name) + ": oracle optimal/total must be 1.0");
                c.require(oracle.failed_ratio() == 0.0,
                          std::string(name) + ": oracle failed/total must be 0.0");

                const TrialReport noisy =
                    run_trials(task, NoisyOracleBackend{1.0, 5, MutationKind::DeleteStep}, 20);
                c.require(noisy.failed_ratio() == 1.0,
                          std::string(name) + ": deletion failed/total must be 1.0");

                for (const TrialReport* r : {&oracle, &noisy})
                    c.require(r->success_optimal + r->success_suboptimal + r->fail == r->total(),
                              std::string(name) + ": count identity");
            }

            std::mt19937 rng(123);
            for (int sweep = 0; sweep < 6; ++sweep) {
                const double rate = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
                const TrialReport r =
                    run_trials(fixture_task("avoid_obstacles_constant.json"),
                               NoisyOracleBackend{rate, rng(), MutationKind::DeleteStep}, 10);
                c.require(r.success_optimal + r.success_suboptimal + r.fail == r.total(),
                          "count identity under randomized sweeps");
            }
        });

    // 9. Decoder corpus: the recorded replies parse cleanly and the Hanoi
    //    replay verdict equals the committed golden.
    run(9, "recorded replies parse; hanoi replay equals the committed verdict",
        [](Criterion& c) {
            const Dictionary dict = Dictionary::with_default_actions({"A", "B", "C", "D", "E"});
            const Plan fig5 =
                decode_plan(test_util::read_fixture("transcripts/stacking_reply.txt"), dict);
            c.require(fig5.steps.size() == 5, "stacking reply must parse into 5 steps");
            const Plan fig9 =
                decode_plan(test_util::read_fixture("transcripts/hanoi_reply.txt"), dict);
            c.require(fig9.steps.size() == 31, "hanoi reply must parse into 31 steps");

            // Golden verdict, produced once by the replay validator and frozen.
            const Verdict v = validate_hanoi(fig9, 5, {"a", "b", "c"}, "a", "b");
            c.require(v.outcome == Outcome::Fail, "replay verdict must be Fail");
            c.require(v.reasons.size() == 3, "replay must collect exactly 3 reasons");
            if (v.reasons.size() == 3) {
                c.require(v.reasons[0] ==
                              Reason{ReasonCode::LargerOnSmaller,
                                     "step 6: [B] placed onto smaller [A] on [b]"},
                          "reason 1 mismatch");
                c.require(v.reasons[1] == Reason{ReasonCode::MoveFromWrongPeg,
                                                 "step 7: [A] stated from [a] but is on [b]"},
                          "reason 2 mismatch");
                c.require(v.reasons[2] == Reason{ReasonCode::MoveFromWrongPeg,
                                                 "step 7: [A] is not the top disk of [b]"},
                          "reason 3 mismatch");
            }
        });

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance criterion(s) failed\n", failures);
    }
    return failures;
}
