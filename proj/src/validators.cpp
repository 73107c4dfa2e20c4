#include <seqplan/validators.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace seqplan {

using json = nlohmann::json;

const char* reason_code_name(ReasonCode code) {
    switch (code) {
        case ReasonCode::GapBetweenSegments: return "gap_between_segments";
        case ReasonCode::NotAxisParallel: return "not_axis_parallel";
        case ReasonCode::DisallowedLength: return "disallowed_length";
        case ReasonCode::ObstacleHit: return "obstacle_hit";
        case ReasonCode::MandatoryMissed: return "mandatory_missed";
        case ReasonCode::MandatoryOutOfOrder: return "mandatory_out_of_order";
        case ReasonCode::WrongStart: return "wrong_start";
        case ReasonCode::WrongEnd: return "wrong_end";
        case ReasonCode::WrongStartAxis: return "wrong_start_axis";
        case ReasonCode::WrongEndAxis: return "wrong_end_axis";
        case ReasonCode::OutOfRoom: return "out_of_room";
        case ReasonCode::LargerOnSmaller: return "larger_on_smaller";
        case ReasonCode::MoveFromWrongPeg: return "move_from_wrong_peg";
        case ReasonCode::UnstableStack: return "unstable_stack";
        case ReasonCode::IncompleteTower: return "incomplete_tower";
        case ReasonCode::AxisMismatch: return "axis_mismatch";
        case ReasonCode::NoMatch: return "no_match";
        case ReasonCode::UnknownPeg: return "unknown_peg";
        case ReasonCode::ExecutionError: return "execution_error";
        case ReasonCode::DecodeError: return "decode_error";
    }
    return "unknown";
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::SuccessOptimal: return "success_optimal";
        case Outcome::SuccessSubOptimal: return "success_suboptimal";
        case Outcome::Fail: return "fail";
    }
    return "?";
}

bool Verdict::has_reason(ReasonCode code) const {
    return std::any_of(reasons.begin(), reasons.end(),
                       [code](const Reason& r) { return r.code == code; });
}

std::string verdict_to_json(const Verdict& v) {
    json j;
    j["outcome"] = outcome_name(v.outcome);
    j["reasons"] = json::array();
    for (const auto& r : v.reasons)
        j["reasons"].push_back({{"code", reason_code_name(r.code)}, {"detail", r.detail}});
    json metrics = json::object();
    if (v.metrics.total_length) metrics["total_length"] = *v.metrics.total_length;
    if (v.metrics.step_count) metrics["step_count"] = *v.metrics.step_count;
    if (v.metrics.oracle_min_length) metrics["oracle_min_length"] = *v.metrics.oracle_min_length;
    j["metrics"] = metrics;
    return j.dump(2);
}

// --- stacking ----------------------------------------------------------------

Verdict validate_stacking(const Plan& plan, const Scene& scene) {
    Verdict verdict;
    verdict.metrics.step_count = static_cast<int>(plan.steps.size());

    // Abstract columns: every movable part starts alone in its own column;
    // anchors (base location, named markers) get columns of their own.
    std::vector<std::vector<std::string>> columns; // stacks of normalized names, bottom first
    std::map<std::string, std::size_t> column_of;  // part -> column index
    std::map<std::string, std::size_t> anchor_columns;

    std::vector<std::string> parts; // all movable parts, normalized
    for (const auto& obj : scene.objects) {
        if (!is_movable(obj.kind)) continue;
        const std::string n = normalize_label(obj.name);
        column_of[n] = columns.size();
        columns.push_back({n});
        parts.push_back(n);
    }

    const auto size_of = [&](const std::string& norm_name) -> const SceneObject* {
        for (const auto& obj : scene.objects)
            if (is_movable(obj.kind) && normalize_label(obj.name) == norm_name) return &obj;
        return nullptr;
    };

    std::vector<double> placed_areas;
    for (const auto& step : plan.steps) {
        const std::string moved = normalize_label(step.object);
        const SceneObject* obj = size_of(moved);
        if (!obj) {
            verdict.reasons.push_back(
                {ReasonCode::NoMatch, "step " + std::to_string(step.index) + ": no part named '" +
                                          step.object + "'"});
            continue;
        }

        // Lift the part out of its current column.
        auto& old_col = columns[column_of[moved]];
        old_col.erase(std::remove(old_col.begin(), old_col.end(), moved), old_col.end());

        std::size_t dest;
        if (std::holds_alternative<BaseLocation>(step.target)) {
            auto [it, inserted] = anchor_columns.try_emplace("base", columns.size());
            if (inserted) columns.push_back({});
            dest = it->second;
        } else if (const auto* named = std::get_if<NamedLocation>(&step.target)) {
            auto [it, inserted] =
                anchor_columns.try_emplace(normalize_label(named->label), columns.size());
            if (inserted) columns.push_back({});
            dest = it->second;
        } else if (const auto* on = std::get_if<OnTopOf>(&step.target)) {
            const std::string support = normalize_label(on->label);
            if (!column_of.count(support) || !size_of(support)) {
                verdict.reasons.push_back({ReasonCode::NoMatch,
                                           "step " + std::to_string(step.index) +
                                               ": no support named '" + on->label + "'"});
                column_of[moved] = columns.size();
                columns.push_back({moved});
                continue;
            }
            dest = column_of[support];
        } else {
            // Coordinate target: its own column keyed by the rendered value.
            auto [it, inserted] =
                anchor_columns.try_emplace(target_to_string(step.target), columns.size());
            if (inserted) columns.push_back({});
            dest = it->second;
        }

        if (!columns[dest].empty()) {
            const SceneObject* below = size_of(columns[dest].back());
            if (below && (obj->size.x > below->size.x || obj->size.y > below->size.y)) {
                verdict.reasons.push_back(
                    {ReasonCode::UnstableStack, "step " + std::to_string(step.index) + ": " +
                                                    step.object + " overhangs " + below->name});
            }
        }
        columns[dest].push_back(moved);
        column_of[moved] = dest;
        placed_areas.push_back(obj->footprint_area());
    }

    // Final state: one tower holding every part.
    std::size_t towers = 0;
    std::size_t tower_size = 0;
    for (const auto& col : columns) {
        if (col.empty()) continue;
        ++towers;
        tower_size = col.size();
    }
    if (towers != 1 || tower_size != parts.size())
        verdict.reasons.push_back(
            {ReasonCode::IncompleteTower,
             "final state has " + std::to_string(towers) + " tower(s), expected one with " +
                 std::to_string(parts.size()) + " parts"});

    if (!verdict.reasons.empty()) {
        verdict.outcome = Outcome::Fail;
        return verdict;
    }
    const bool strictly_decreasing =
        std::adjacent_find(placed_areas.begin(), placed_areas.end(),
                           [](double a, double b) { return a <= b; }) == placed_areas.end();
    verdict.outcome =
        strictly_decreasing ? Outcome::SuccessOptimal : Outcome::SuccessSubOptimal;
    return verdict;
}

// --- hanoi -------------------------------------------------------------------

Verdict validate_hanoi(const Plan& plan, int disks, const std::vector<std::string>& pegs,
                       const std::string& from, const std::string& to) {
    Verdict verdict;
    verdict.metrics.step_count = static_cast<int>(plan.steps.size());

    HanoiState state = HanoiState::initial(disks, pegs, from);
    const int to_idx = state.peg_index(to);
    if (to_idx < 0) raise(errc::invalid_task, "unknown target peg: " + to);

    const auto find_disk = [&](int rank) {
        for (std::size_t p = 0; p < state.stacks.size(); ++p)
            for (std::size_t h = 0; h < state.stacks[p].size(); ++h)
                if (state.stacks[p][h] == rank) return std::make_pair(int(p), int(h));
        return std::make_pair(-1, -1);
    };

    for (const auto& step : plan.steps) {
        const std::string at = "step " + std::to_string(step.index) + ": ";

        int rank = -1;
        const std::string obj = normalize_label(step.object);
        for (int r = 1; r <= disks; ++r)
            if (normalize_label(hanoi_disk_label(r)) == obj) rank = r;
        if (rank < 0) {
            verdict.reasons.push_back({ReasonCode::NoMatch, at + "unknown disk '" + step.object + "'"});
            continue;
        }

        const auto* named = std::get_if<NamedLocation>(&step.target);
        if (!named) {
            verdict.reasons.push_back(
                {ReasonCode::UnknownPeg, at + "target is not a peg label"});
            continue;
        }
        const int dest = state.peg_index(named->label);
        if (dest < 0) {
            verdict.reasons.push_back(
                {ReasonCode::UnknownPeg, at + "unknown peg '" + named->label + "'"});
            continue;
        }

        const auto [actual_peg, height] = find_disk(rank);
        if (step.source) {
            const int stated = state.peg_index(*step.source);
            if (stated < 0) {
                verdict.reasons.push_back(
                    {ReasonCode::UnknownPeg, at + "unknown source peg '" + *step.source + "'"});
            } else if (stated != actual_peg) {
                verdict.reasons.push_back(
                    {ReasonCode::MoveFromWrongPeg,
                     at + "[" + step.object + "] stated from [" + *step.source + "] but is on [" +
                         state.pegs[actual_peg] + "]"});
            }
        }
        if (height != static_cast<int>(state.stacks[actual_peg].size()) - 1) {
            verdict.reasons.push_back(
                {ReasonCode::MoveFromWrongPeg,
                 at + "[" + step.object + "] is not the top disk of [" + state.pegs[actual_peg] +
                     "]"});
        }
        if (!state.stacks[dest].empty() && state.stacks[dest].back() < rank) {
            verdict.reasons.push_back(
                {ReasonCode::LargerOnSmaller,
                 at + "[" + step.object + "] placed onto smaller [" +
                     hanoi_disk_label(state.stacks[dest].back()) + "] on [" + state.pegs[dest] +
                     "]"});
        }

        // Apply the move as stated so replay can keep collecting violations.
        state.stacks[actual_peg].erase(state.stacks[actual_peg].begin() + height);
        state.stacks[dest].push_back(rank);
    }

    if (static_cast<int>(state.stacks[to_idx].size()) != disks)
        verdict.reasons.push_back(
            {ReasonCode::IncompleteTower,
             "only " + std::to_string(state.stacks[to_idx].size()) + " of " +
                 std::to_string(disks) + " disks end on [" + normalize_label(to) + "]"});

    if (!verdict.reasons.empty()) {
        verdict.outcome = Outcome::Fail;
        return verdict;
    }
    const long long optimal_steps = (1LL << disks) - 1;
    verdict.outcome = (static_cast<long long>(plan.steps.size()) == optimal_steps)
                          ? Outcome::SuccessOptimal
                          : Outcome::SuccessSubOptimal;
    return verdict;
}

// --- pipes -------------------------------------------------------------------

namespace {

struct CheckSegment {
    GridPoint from;
    GridPoint to;
    std::optional<int> declared_length;
    std::optional<AxisName> declared_axis;
};

bool on_closed_segment(const GridPoint& a, const GridPoint& b, const GridPoint& p) {
    const auto within = [](int lo, int hi, int v) {
        return v >= std::min(lo, hi) && v <= std::max(lo, hi);
    };
    const GridPoint d = b - a;
    const int nonzero = int(d.x != 0) + int(d.y != 0) + int(d.z != 0);
    if (nonzero != 1 && !(a == b)) return false; // only meaningful for axis-parallel segments
    return within(a.x, b.x, p.x) && within(a.y, b.y, p.y) && within(a.z, b.z, p.z) &&
           ((d.x != 0) ? (p.y == a.y && p.z == a.z)
                       : (d.y != 0) ? (p.x == a.x && p.z == a.z)
                                    : (p.x == a.x && p.y == a.y));
}

Verdict check_pipe_segments(const std::vector<CheckSegment>& segs, const PipeTaskSpec& spec,
                            bool explicit_endpoints) {
    Verdict verdict;
    int total_length = 0;
    verdict.metrics.step_count = static_cast<int>(segs.size());

    if (segs.empty()) {
        verdict.reasons.push_back({ReasonCode::WrongEnd, "empty layout never reaches the end"});
    }

    std::optional<AxisName> first_axis;
    std::optional<AxisName> last_axis;

    for (std::size_t i = 0; i < segs.size(); ++i) {
        const auto& s = segs[i];
        const std::string at = "segment " + std::to_string(i + 1) + ": ";
        const GridPoint d = s.to - s.from;
        const int mag = std::abs(d.x) + std::abs(d.y) + std::abs(d.z);
        total_length += mag;

        if (explicit_endpoints && i > 0 && !(s.from == segs[i - 1].to)) {
            verdict.reasons.push_back(
                {ReasonCode::GapBetweenSegments, at + "starts at " + to_string(s.from) +
                                                     " but previous ends at " +
                                                     to_string(segs[i - 1].to)});
        }

        const auto inside = [&](const GridPoint& p) {
            return p.x >= 0 && p.x <= spec.room && p.y >= 0 && p.y <= spec.room && p.z >= 0 &&
                   p.z <= spec.room;
        };
        if (!inside(s.from) || !inside(s.to))
            verdict.reasons.push_back(
                {ReasonCode::OutOfRoom, at + to_string(s.from) + " -> " + to_string(s.to) +
                                            " leaves the " + std::to_string(spec.room) +
                                            "-unit room"});

        const int nonzero = int(d.x != 0) + int(d.y != 0) + int(d.z != 0);
        if (nonzero != 1) {
            verdict.reasons.push_back(
                {ReasonCode::NotAxisParallel,
                 at + "displacement " + to_string(d) +
                     (nonzero == 0 ? " is zero" : " is not parallel to one axis")});
            continue; // axis-dependent checks are meaningless here
        }

        const AxisName axis = axis_of(d).name;
        if (i == 0) first_axis = axis;
        last_axis = axis;

        if (s.declared_axis && *s.declared_axis != axis)
            verdict.reasons.push_back(
                {ReasonCode::AxisMismatch,
                 at + "stated " + std::string(1, axis_letter(*s.declared_axis)) +
                     " axis but runs along " + std::string(1, axis_letter(axis))});

        const int declared = s.declared_length.value_or(mag);
        if (declared != mag)
            verdict.reasons.push_back(
                {ReasonCode::DisallowedLength, at + "stated " + std::to_string(declared) +
                                                   "ft but spans " + std::to_string(mag)});
        if (std::find(spec.lengths.begin(), spec.lengths.end(), declared) == spec.lengths.end())
            verdict.reasons.push_back(
                {ReasonCode::DisallowedLength,
                 at + std::to_string(declared) + "ft is not an allowed pipe length"});

        for (const auto& obs : spec.obstacles)
            if (on_closed_segment(s.from, s.to, obs))
                verdict.reasons.push_back({ReasonCode::ObstacleHit, at + "passes through " +
                                                                        to_string(obs)});
    }

    if (!segs.empty()) {
        if (explicit_endpoints && !(segs.front().from == spec.start))
            verdict.reasons.push_back({ReasonCode::WrongStart,
                                       "layout starts at " + to_string(segs.front().from) +
                                           ", task starts at " + to_string(spec.start)});
        if (first_axis && *first_axis != spec.start_axis.name)
            verdict.reasons.push_back(
                {ReasonCode::WrongStartAxis,
                 std::string("first segment runs along ") +
                     std::string(1, axis_letter(*first_axis)) + ", task starts along " +
                     std::string(1, axis_letter(spec.start_axis.name))});
        if (!(segs.back().to == spec.end))
            verdict.reasons.push_back({ReasonCode::WrongEnd,
                                       "layout ends at " + to_string(segs.back().to) +
                                           ", task ends at " + to_string(spec.end)});
        if (last_axis && *last_axis != spec.end_axis.name)
            verdict.reasons.push_back(
                {ReasonCode::WrongEndAxis,
                 std::string("last segment runs along ") +
                     std::string(1, axis_letter(*last_axis)) + ", task ends along " +
                     std::string(1, axis_letter(spec.end_axis.name))});
    }

    // Mandatory points: each must be contained by some segment, in order.
    for (std::size_t m = 0; m < spec.mandatory.size(); ++m) {
        const bool contained = std::any_of(segs.begin(), segs.end(), [&](const CheckSegment& s) {
            return on_closed_segment(s.from, s.to, spec.mandatory[m]);
        });
        if (!contained)
            verdict.reasons.push_back({ReasonCode::MandatoryMissed,
                                       "mandatory point " + std::to_string(m + 1) + " " +
                                           to_string(spec.mandatory[m]) + " is never passed"});
    }
    if (std::none_of(verdict.reasons.begin(), verdict.reasons.end(), [](const Reason& r) {
            return r.code == ReasonCode::MandatoryMissed;
        })) {
        std::size_t next = 0;
        for (const auto& s : segs) {
            while (next < spec.mandatory.size() &&
                   on_closed_segment(s.from, s.to, spec.mandatory[next]))
                ++next;
        }
        if (next < spec.mandatory.size())
            verdict.reasons.push_back(
                {ReasonCode::MandatoryOutOfOrder,
                 "mandatory point " + std::to_string(next + 1) + " " +
                     to_string(spec.mandatory[next]) + " is passed before its predecessors"});
    }

    verdict.metrics.total_length = total_length;
    try {
        verdict.metrics.oracle_min_length = route_pipes(spec).total_length();
    } catch (const error&) {
        // no layout exists at all; leave the oracle metric unset
    }

    if (!verdict.reasons.empty()) {
        verdict.outcome = Outcome::Fail;
        return verdict;
    }
    verdict.outcome = (verdict.metrics.oracle_min_length &&
                       total_length == *verdict.metrics.oracle_min_length)
                          ? Outcome::SuccessOptimal
                          : Outcome::SuccessSubOptimal;
    return verdict;
}

} // namespace

Verdict validate_pipe_layout(const std::vector<PipeSegmentSpec>& specs,
                             const PipeTaskSpec& spec) {
    std::vector<CheckSegment> segs;
    GridPoint head = spec.start;
    for (const auto& s : specs) {
        segs.push_back({head, s.head, s.length, s.axis});
        head = s.head;
    }
    return check_pipe_segments(segs, spec, /*explicit_endpoints=*/false);
}

Verdict validate_pipe_layout(const PipeLayout& layout, const PipeTaskSpec& spec) {
    std::vector<CheckSegment> segs;
    for (const auto& s : layout.segments)
        segs.push_back({s.segment.from, s.segment.to, s.length, s.segment.axis()});
    return check_pipe_segments(segs, spec, /*explicit_endpoints=*/true);
}

} // namespace seqplan
