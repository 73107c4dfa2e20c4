#pragma once

#include <seqplan/world.hpp>

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace seqplan {

/// Known action verbs and object labels, all stored lowercase-normalized.
struct Dictionary {
    std::set<std::string> actions;
    std::set<std::string> objects;

    bool has_action(std::string_view s) const { return actions.count(normalize_label(s)) > 0; }
    bool has_object(std::string_view s) const { return objects.count(normalize_label(s)) > 0; }

    /// Default action set plus the task-supplied object labels.
    static Dictionary with_default_actions(const std::vector<std::string>& object_labels);
};

struct NamedLocation {
    std::string label;
    bool operator==(const NamedLocation&) const = default;
};
struct OnTopOf {
    std::string label;
    bool operator==(const OnTopOf&) const = default;
};
struct Coordinate {
    Vec3 value;
    bool operator==(const Coordinate&) const = default;
};
struct BaseLocation {
    bool operator==(const BaseLocation&) const = default;
};

using TargetSpec = std::variant<NamedLocation, OnTopOf, Coordinate, BaseLocation>;

std::string target_to_string(const TargetSpec& t);

struct PlanStep {
    int index = 1;
    std::string action; // normalized dictionary form
    std::string object; // label as written in the reply
    TargetSpec target;
    std::optional<std::string> source; // stated source location ("from [a]"), when present

    bool operator==(const PlanStep&) const = default;
};

struct Plan {
    std::vector<PlanStep> steps;

    bool operator==(const Plan&) const = default;
};

/// One laid pipe as stated in a reply: "pipe <length>ft #<k> (x, y, z) <a> axis".
/// The coordinate is the new head (far endpoint) of the laid segment.
struct PipeSegmentSpec {
    int length = 0;     // declared length class, ft
    int pipe_index = 0; // per-length-class counter (#k)
    GridPoint head;
    AxisName axis = AxisName::X;

    bool operator==(const PipeSegmentSpec&) const = default;
};

/// Numbered lines of a reply ("1. ..." or "Step 1. ..."), numbering stripped,
/// in order; prose lines are dropped. Throws empty_plan when none match.
std::vector<std::string> split_steps(const std::string& transcript);

/// Parse one step body against the bracket grammar. The action comes from a
/// bracketed token in the action dictionary or, failing that, the step's
/// leading verb; the moved object is the first remaining bracketed token in
/// the object dictionary after the target and stated source are consumed.
PlanStep parse_step(const std::string& raw, const Dictionary& dict, int index = 1);

/// split_steps + parse_step with sequential indices.
Plan decode_plan(const std::string& transcript, const Dictionary& dict);

/// Canonical template "Step n. [action] [object] to <target>."; re-parsing the
/// result yields an equal plan.
std::string render_plan(const Plan& plan);

/// All fragments matching the pipe grammar, in text order. Throws
/// no_segments_found / malformed_coordinate.
std::vector<PipeSegmentSpec> parse_pipe_plan(const std::string& transcript);

/// "pipe 2ft #1 (5, 5, 2) z axis, pipe 2ft #2 (5, 5, 4) z axis, ..."
std::string render_pipe_plan(const std::vector<PipeSegmentSpec>& specs);

/// Decoded plan JSON: array of {index, action, object, target:{kind, value}, source?}.
std::string plan_to_json(const Plan& plan);
Plan plan_from_json(const std::string& json_text);

} // namespace seqplan
