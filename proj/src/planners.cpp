#include <seqplan/planners.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <queue>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace seqplan {

using json = nlohmann::json;

void PipeTaskSpec::validate() const {
    if (room <= 0) raise(errc::invalid_task, "room size must be positive");
    const auto inside = [&](const GridPoint& p) {
        return p.x >= 0 && p.x <= room && p.y >= 0 && p.y <= room && p.z >= 0 && p.z <= room;
    };
    if (start == end) raise(errc::invalid_task, "start equals end");
    if (!inside(start) || !inside(end)) raise(errc::invalid_task, "start/end outside room");
    if (lengths.empty()) raise(errc::invalid_task, "no allowed pipe lengths");
    for (int len : lengths)
        if (len <= 0) raise(errc::invalid_task, "pipe length must be positive");
    for (const auto& p : obstacles)
        if (p == start || p == end)
            raise(errc::invalid_task, "obstacle coincides with start or end: " + to_string(p));
    for (const auto& p : mandatory)
        if (!inside(p)) raise(errc::invalid_task, "mandatory point outside room: " + to_string(p));
}

namespace {

GridPoint point_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 3)
        raise(errc::parse_error, std::string(what) + " must be an array of 3 integers");
    return {j[0].get<int>(), j[1].get<int>(), j[2].get<int>()};
}

} // namespace

PipeTaskSpec pipe_spec_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("task JSON: ") + e.what());
    }
    PipeTaskSpec spec;
    spec.room = j.value("room", 10);
    spec.start = point_from_json(j.at("start").at("p"), "start.p");
    spec.start_axis = axis_from_string(j.at("start").value("axis", "+z"));
    spec.end = point_from_json(j.at("end").at("p"), "end.p");
    spec.end_axis = axis_from_string(j.at("end").value("axis", "-z"));
    for (const auto& v : j.at("lengths")) spec.lengths.push_back(v.get<int>());
    std::sort(spec.lengths.begin(), spec.lengths.end());
    spec.lengths.erase(std::unique(spec.lengths.begin(), spec.lengths.end()), spec.lengths.end());
    for (const auto& v : j.value("inventory", json::array())) spec.inventory.push_back(v.get<int>());
    if (spec.inventory.empty()) spec.inventory = spec.lengths;
    for (const auto& v : j.value("obstacles", json::array()))
        spec.obstacles.push_back(point_from_json(v, "obstacle"));
    for (const auto& v : j.value("mandatory", json::array()))
        spec.mandatory.push_back(point_from_json(v, "mandatory point"));
    spec.validate();
    return spec;
}

std::string pipe_spec_to_json(const PipeTaskSpec& spec) {
    json j;
    j["room"] = spec.room;
    j["start"] = {{"p", {spec.start.x, spec.start.y, spec.start.z}},
                  {"axis", axis_to_string(spec.start_axis)}};
    j["end"] = {{"p", {spec.end.x, spec.end.y, spec.end.z}},
                {"axis", axis_to_string(spec.end_axis)}};
    j["lengths"] = spec.lengths;
    j["inventory"] = spec.inventory.empty() ? spec.lengths : spec.inventory;
    j["obstacles"] = json::array();
    for (const auto& p : spec.obstacles) j["obstacles"].push_back({p.x, p.y, p.z});
    j["mandatory"] = json::array();
    for (const auto& p : spec.mandatory) j["mandatory"].push_back({p.x, p.y, p.z});
    return j.dump(2);
}

int PipeLayout::total_length() const {
    int total = 0;
    for (const auto& s : segments) total += s.segment.length();
    return total;
}

std::vector<PipeSegmentSpec> layout_to_specs(const PipeLayout& layout) {
    std::vector<PipeSegmentSpec> specs;
    std::map<int, int> counters;
    for (const auto& s : layout.segments) {
        PipeSegmentSpec spec;
        spec.length = s.length;
        spec.pipe_index = ++counters[s.length];
        spec.head = s.segment.to;
        spec.axis = s.segment.axis();
        specs.push_back(spec);
    }
    return specs;
}

HanoiState HanoiState::initial(int disks, const std::vector<std::string>& peg_labels,
                               const std::string& from) {
    HanoiState state;
    for (const auto& p : peg_labels) state.pegs.push_back(normalize_label(p));
    state.stacks.resize(state.pegs.size());
    const int from_idx = state.peg_index(from);
    if (from_idx < 0) raise(errc::invalid_task, "unknown start peg: " + from);
    for (int rank = disks; rank >= 1; --rank) state.stacks[from_idx].push_back(rank);
    return state;
}

int HanoiState::peg_index(std::string_view label) const {
    const std::string n = normalize_label(label);
    for (std::size_t i = 0; i < pegs.size(); ++i)
        if (pegs[i] == n) return static_cast<int>(i);
    return -1;
}

std::string hanoi_disk_label(int rank) {
    if (rank < 1 || rank > 26) raise(errc::invalid_task, "disk rank out of label range");
    return std::string(1, static_cast<char>('A' + rank - 1));
}

Plan plan_stacking(const std::vector<SceneObject>& parts) {
    if (parts.empty()) raise(errc::invalid_task, "no parts to stack");
    std::vector<const SceneObject*> order;
    for (const auto& p : parts) order.push_back(&p);
    std::stable_sort(order.begin(), order.end(), [](const SceneObject* a, const SceneObject* b) {
        return a->footprint_area() > b->footprint_area();
    });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (order[i - 1]->footprint_area() == order[i]->footprint_area())
            raise(errc::duplicate_size,
                  order[i - 1]->name + " and " + order[i]->name + " share a footprint");

    Plan plan;
    for (std::size_t i = 0; i < order.size(); ++i) {
        PlanStep step;
        step.index = static_cast<int>(i + 1);
        step.action = "move";
        step.object = order[i]->name;
        if (i == 0) {
            step.target = BaseLocation{};
        } else {
            step.target = OnTopOf{order[i - 1]->name};
        }
        plan.steps.push_back(std::move(step));
    }
    return plan;
}

namespace {

void hanoi_recurse(int rank, const std::string& from, const std::string& to,
                   const std::string& aux, Plan& plan) {
    if (rank == 0) return;
    hanoi_recurse(rank - 1, from, aux, to, plan);
    PlanStep step;
    step.index = static_cast<int>(plan.steps.size() + 1);
    step.action = "move";
    step.object = hanoi_disk_label(rank);
    step.source = from;
    step.target = NamedLocation{to};
    plan.steps.push_back(std::move(step));
    hanoi_recurse(rank - 1, aux, to, from, plan);
}

} // namespace

Plan plan_hanoi(int disks, const std::string& from, const std::string& to,
                const std::string& aux) {
    if (disks < 1) raise(errc::invalid_task, "need at least one disk");
    if (disks > 26) raise(errc::invalid_task, "too many disks for letter labels");
    if (normalize_label(from) == normalize_label(to) ||
        normalize_label(from) == normalize_label(aux) ||
        normalize_label(to) == normalize_label(aux))
        raise(errc::invalid_task, "peg labels must be distinct");
    Plan plan;
    hanoi_recurse(disks, from, to, aux, plan);
    return plan;
}

// --- route search -----------------------------------------------------------

namespace {

struct Move {
    std::uint8_t dir = 0; // Direction rank
    int len = 0;

    bool operator==(const Move&) const = default;
};

bool move_less(const Move& a, const Move& b) {
    if (a.dir != b.dir) return a.dir < b.dir;
    return a.len < b.len;
}

bool moves_less(const std::vector<Move>& a, const std::vector<Move>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), move_less);
}

// Per-state label: the best (cost, segment count) seen plus the predecessor
// link of that path. Predecessors always carry strictly smaller cost, so the
// chain of a settled state never changes afterwards and can be replayed to
// recover the move sequence.
struct Best {
    int cost = -1; // -1 = unreached
    int segs = 0;
    int parent = -1;
    Move move;

    bool operator==(const Best&) const = default;
};

struct Candidate {
    int state;
    int cost;
    int segs;
    int parent;
    Move move;
};

std::vector<Move> path_of(int state, const std::vector<Best>& best) {
    std::vector<Move> moves;
    while (state >= 0) {
        const Best& b = best[state];
        if (b.parent < 0) break;
        moves.push_back(b.move);
        state = b.parent;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
}

// (cost, segs, move sequence) total order; the move sequences are only
// materialized on an exact (cost, segs) tie.
bool improves(const Candidate& c, int state, const std::vector<Best>& best) {
    const Best& b = best[state];
    if (b.cost < 0) return true;
    if (c.cost != b.cost) return c.cost < b.cost;
    if (c.segs != b.segs) return c.segs < b.segs;
    if (c.parent == b.parent && c.move == b.move) return false; // identical path
    std::vector<Move> candidate_path = path_of(c.parent, best);
    candidate_path.push_back(c.move);
    return moves_less(candidate_path, path_of(state, best));
}

int axis_rank(AxisName a) {
    switch (a) {
        case AxisName::X: return 0;
        case AxisName::Y: return 1;
        case AxisName::Z: return 2;
    }
    return 0;
}

struct SearchSpace {
    const PipeTaskSpec& spec;
    int side;       // room + 1 grid points per edge
    int mand_count;
    int goal_state;
    std::vector<std::uint8_t> obstacle_mask; // one cell per grid point

    explicit SearchSpace(const PipeTaskSpec& s)
        : spec(s), side(s.room + 1), mand_count(static_cast<int>(s.mandatory.size())) {
        goal_state = index(spec.end, mand_count, axis_rank(spec.end_axis.name));
        obstacle_mask.assign(std::size_t(side) * side * side, 0);
        for (const auto& obs : spec.obstacles)
            if (inside(obs)) obstacle_mask[cell(obs)] = 1;
    }

    std::size_t cell(const GridPoint& p) const {
        return (std::size_t(p.x) * side + p.y) * side + p.z;
    }

    // Walks the grid points the segment covers; endpoints included.
    bool blocked_by_obstacle(const GridPoint& from, const GridPoint& to) const {
        const GridPoint d = to - from;
        const GridPoint unit{d.x == 0 ? 0 : d.x / std::abs(d.x),
                             d.y == 0 ? 0 : d.y / std::abs(d.y),
                             d.z == 0 ? 0 : d.z / std::abs(d.z)};
        const int len = std::abs(d.x) + std::abs(d.y) + std::abs(d.z);
        GridPoint at = from;
        for (int i = 0; i <= len; ++i) {
            if (obstacle_mask[cell(at)]) return true;
            at = at + unit;
        }
        return false;
    }

    // last axis: 0..2, 3 = no segment laid yet
    int index(const GridPoint& p, int k, int last) const {
        return ((p.x * side + p.y) * side + p.z) * (mand_count + 1) * 4 + k * 4 + last;
    }

    int state_count() const { return side * side * side * (mand_count + 1) * 4; }

    bool inside(const GridPoint& p) const {
        return p.x >= 0 && p.x <= spec.room && p.y >= 0 && p.y <= spec.room && p.z >= 0 &&
               p.z <= spec.room;
    }

    // p on the closed axis-parallel segment from a to b (single varying axis).
    static bool on_segment(const GridPoint& a, const GridPoint& b, const GridPoint& p) {
        const auto within = [](int lo, int hi, int v) {
            return v >= std::min(lo, hi) && v <= std::max(lo, hi);
        };
        if (a.y == b.y && a.z == b.z) return p.y == a.y && p.z == a.z && within(a.x, b.x, p.x);
        if (a.x == b.x && a.z == b.z) return p.x == a.x && p.z == a.z && within(a.y, b.y, p.y);
        return p.x == a.x && p.y == a.y && within(a.z, b.z, p.z);
    }

    GridPoint decode_point(int state) const {
        int rest = state / ((mand_count + 1) * 4);
        GridPoint p;
        p.z = rest % side;
        rest /= side;
        p.y = rest % side;
        rest /= side;
        p.x = rest;
        return p;
    }
    int decode_k(int state) const { return (state / 4) % (mand_count + 1); }

    template <typename Emit>
    void expand(int state, const Best& label, Emit&& emit) const {
        const GridPoint head = decode_point(state);
        const int k = decode_k(state);
        const int last = state % 4;
        for (Direction dir : kAllDirections) {
            if (last == 3 && direction_axis(dir).name != spec.start_axis.name)
                continue; // first segment must parallel the start axis
            const GridPoint step = direction_offset(dir);
            for (int len : spec.lengths) {
                const GridPoint to = head + GridPoint{step.x * len, step.y * len, step.z * len};
                if (!inside(to)) continue;
                if (blocked_by_obstacle(head, to)) continue;
                int k2 = k;
                while (k2 < mand_count && on_segment(head, to, spec.mandatory[k2])) ++k2;

                Candidate cand;
                cand.state = index(to, k2, axis_rank(direction_axis(dir).name));
                cand.cost = label.cost + len;
                cand.segs = label.segs + 1;
                cand.parent = state;
                cand.move = {static_cast<std::uint8_t>(dir), len};
                emit(cand);
            }
        }
    }
};

PipeLayout layout_from_moves(const PipeTaskSpec& spec, const std::vector<Move>& moves) {
    PipeLayout layout;
    GridPoint head = spec.start;
    for (const auto& m : moves) {
        const GridPoint step = direction_offset(static_cast<Direction>(m.dir));
        const GridPoint to = head + GridPoint{step.x * m.len, step.y * m.len, step.z * m.len};
        layout.segments.push_back({Segment(head, to), m.len});
        head = to;
    }
    return layout;
}

} // namespace

PipeLayout route_pipes_serial(const PipeTaskSpec& spec) {
    spec.validate();
    const SearchSpace space(spec);
    std::vector<Best> best(space.state_count());
    std::vector<bool> expanded(space.state_count(), false);

    struct Entry {
        int cost;
        int segs;
        int state;
        Best label;
    };
    const auto entry_greater = [](const Entry& a, const Entry& b) {
        if (a.cost != b.cost) return a.cost > b.cost;
        if (a.segs != b.segs) return a.segs > b.segs;
        return a.state > b.state;
    };
    std::priority_queue<Entry, std::vector<Entry>, decltype(entry_greater)> queue(entry_greater);

    const int start_state = space.index(spec.start, 0, 3);
    best[start_state] = Best{0, 0, -1, {}};
    queue.push({0, 0, start_state, best[start_state]});

    while (!queue.empty()) {
        const Entry top = queue.top();
        queue.pop();
        if (expanded[top.state]) continue;
        if (!(top.label == best[top.state])) continue; // stale entry
        expanded[top.state] = true;
        if (top.state == space.goal_state)
            return layout_from_moves(spec, path_of(top.state, best));

        space.expand(top.state, best[top.state], [&](const Candidate& cand) {
            if (improves(cand, cand.state, best)) {
                best[cand.state] = Best{cand.cost, cand.segs, cand.parent, cand.move};
                queue.push({cand.cost, cand.segs, cand.state, best[cand.state]});
            }
        });
    }
    raise(errc::unreachable, "no pipe layout exists for the allowed lengths");
}

PipeLayout route_pipes(const PipeTaskSpec& spec) {
    spec.validate();
    const SearchSpace space(spec);
    std::vector<Best> best(space.state_count());
    std::vector<bool> expanded(space.state_count(), false);
    std::vector<std::vector<int>> buckets(1);
    constexpr int kLockMask = 1023;
    std::unique_ptr<std::atomic_flag[]> relax_locks(new std::atomic_flag[kLockMask + 1]);

    const int start_state = space.index(spec.start, 0, 3);
    best[start_state] = Best{0, 0, -1, {}};
    buckets[0].push_back(start_state);

    for (std::size_t cost = 0; cost < buckets.size(); ++cost) {
        if (best[space.goal_state].cost >= 0 &&
            best[space.goal_state].cost <= static_cast<int>(cost))
            return layout_from_moves(spec, path_of(space.goal_state, best));

        // Settle this cost layer; duplicates and stale entries drop out here.
        std::vector<int> todo;
        for (int state : buckets[cost]) {
            if (expanded[state] || best[state].cost != static_cast<int>(cost)) continue;
            expanded[state] = true;
            todo.push_back(state);
        }
        if (todo.empty()) continue;

        // Frontier expansion relaxes concurrently under striped per-target
        // locks. Each target's label is the minimum under a total order, so
        // the outcome does not depend on thread interleaving; parents touched
        // during tie-breaks are settled states whose labels no longer change.
#pragma omp parallel
        {
            std::vector<std::pair<int, int>> pushes; // (cost, state)
#pragma omp for schedule(dynamic, 32) nowait
            for (int i = 0; i < static_cast<int>(todo.size()); ++i) {
                space.expand(todo[i], best[todo[i]], [&](const Candidate& cand) {
                    auto& lock = relax_locks[cand.state & kLockMask];
                    while (lock.test_and_set(std::memory_order_acquire)) {
                    }
                    const bool taken = improves(cand, cand.state, best);
                    if (taken)
                        best[cand.state] = Best{cand.cost, cand.segs, cand.parent, cand.move};
                    lock.clear(std::memory_order_release);
                    if (taken) pushes.push_back({cand.cost, cand.state});
                });
            }
#pragma omp critical
            {
                for (const auto& [new_cost, state] : pushes) {
                    if (buckets.size() <= static_cast<std::size_t>(new_cost))
                        buckets.resize(new_cost + 1);
                    buckets[new_cost].push_back(state);
                }
            }
        }
    }

    if (best[space.goal_state].cost >= 0)
        return layout_from_moves(spec, path_of(space.goal_state, best));
    raise(errc::unreachable, "no pipe layout exists for the allowed lengths");
}

} // namespace seqplan
