#pragma once

#include <seqplan/decoder.hpp>
#include <seqplan/planners.hpp>
#include <seqplan/world.hpp>

#include <optional>
#include <string>
#include <vector>

namespace seqplan {

enum class ReasonCode {
    GapBetweenSegments,
    NotAxisParallel,
    DisallowedLength,
    ObstacleHit,
    MandatoryMissed,
    MandatoryOutOfOrder,
    WrongStart,
    WrongEnd,
    WrongStartAxis,
    WrongEndAxis,
    OutOfRoom,
    LargerOnSmaller,
    MoveFromWrongPeg,
    UnstableStack,
    IncompleteTower,
    AxisMismatch,
    NoMatch,
    UnknownPeg,
    ExecutionError,
    DecodeError,
};

const char* reason_code_name(ReasonCode code);

struct Reason {
    ReasonCode code;
    std::string detail;

    bool operator==(const Reason&) const = default;
};

enum class Outcome { SuccessOptimal, SuccessSubOptimal, Fail };

const char* outcome_name(Outcome o);

struct VerdictMetrics {
    std::optional<int> total_length;
    std::optional<int> step_count;
    std::optional<int> oracle_min_length;

    bool operator==(const VerdictMetrics&) const = default;
};

/// Classification of one plan or layout: Fail carries at least one reason,
/// Success carries none.
struct Verdict {
    Outcome outcome = Outcome::Fail;
    std::vector<Reason> reasons;
    VerdictMetrics metrics;

    bool success() const { return outcome != Outcome::Fail; }
    bool has_reason(ReasonCode code) const;

    bool operator==(const Verdict&) const = default;
};

std::string verdict_to_json(const Verdict& v);

/// Replay the plan as abstract stack placements. Fail reasons: UnstableStack
/// (part placed on a strictly smaller footprint), IncompleteTower (final state
/// is not one tower holding every part), NoMatch (unknown part). Optimal iff
/// the placement sequence is strictly decreasing in footprint.
Verdict validate_stacking(const Plan& plan, const Scene& scene);

/// Replay the moves on a Hanoi board. Fail reasons: MoveFromWrongPeg (disk not
/// on top of its current peg, or the stated source disagrees with the actual
/// peg), LargerOnSmaller, UnknownPeg, IncompleteTower (not all disks end on
/// `to`). Optimal iff the step count is 2^n - 1.
Verdict validate_hanoi(const Plan& plan, int disks, const std::vector<std::string>& pegs,
                       const std::string& from, const std::string& to);

/// Head-chained reply form: segments reconstructed from spec.start through the
/// stated heads, then checked against the task.
Verdict validate_pipe_layout(const std::vector<PipeSegmentSpec>& specs, const PipeTaskSpec& spec);

/// Explicit from/to form (layout files); additionally checks WrongStart and
/// GapBetweenSegments at every joint.
Verdict validate_pipe_layout(const PipeLayout& layout, const PipeTaskSpec& spec);

} // namespace seqplan
