#pragma once

#include <seqplan/decoder.hpp>
#include <seqplan/world.hpp>

#include <string>
#include <vector>

namespace seqplan {

/// One routing task: connect start to end inside a cubic room, laying straight
/// pipes of the allowed lengths, avoiding obstacle points and passing the
/// mandatory points in order.
struct PipeTaskSpec {
    int room = 10;
    GridPoint start;
    Axis start_axis{AxisName::Z, +1};
    GridPoint end;
    Axis end_axis{AxisName::Z, -1};
    std::vector<int> lengths;   // allowed pipe length classes
    std::vector<int> inventory; // pipe types on site, prompt wording only; defaults to lengths
    std::vector<GridPoint> obstacles;
    std::vector<GridPoint> mandatory; // must be passed in this order

    void validate() const; // throws invalid_task
};

PipeTaskSpec pipe_spec_from_json(const std::string& json_text);
std::string pipe_spec_to_json(const PipeTaskSpec& spec);

/// A laid pipe: the grid segment plus its declared length class.
struct PipeSegment {
    Segment segment;
    int length; // length class; equals segment.length() for well-formed layouts

    bool operator==(const PipeSegment&) const = default;
};

struct PipeLayout {
    std::vector<PipeSegment> segments;

    int total_length() const;
    bool operator==(const PipeLayout&) const = default;
};

/// Render a layout as the head-chained reply grammar, numbering pipes per
/// length class in order of use.
std::vector<PipeSegmentSpec> layout_to_specs(const PipeLayout& layout);

/// Tower-of-Hanoi board: peg label -> disk stack, bottom first, each disk a
/// size rank (1 = smallest). Within a peg, ranks strictly decrease upward.
struct HanoiState {
    std::vector<std::string> pegs;           // normalized labels
    std::vector<std::vector<int>> stacks;    // parallel to pegs

    static HanoiState initial(int disks, const std::vector<std::string>& pegs,
                              const std::string& from);
    int peg_index(std::string_view label) const; // -1 if unknown
};

/// Disk label used by the oracle planner and the validator: rank 1 -> "A".
std::string hanoi_disk_label(int rank);

/// Steps that place the parts in strictly decreasing footprint order: largest
/// to the base location, each next on top of the previous. Throws
/// duplicate_size when two parts share a footprint.
Plan plan_stacking(const std::vector<SceneObject>& parts);

/// Classic recursive solution, 2^n - 1 steps, disks labeled from "A" (smallest).
Plan plan_hanoi(int disks, const std::string& from, const std::string& to,
                const std::string& aux);

/// Shortest-total-length layout by uniform-cost search over (head, mandatory
/// progress, last axis) states. Ties break to fewer segments, then to the
/// lexicographically least move sequence (direction rank x+ < x- < y+ < y- <
/// z+ < z-, then shorter pipe first). Throws unreachable.
/// The default entry point expands each cost frontier in parallel; the serial
/// variant is the reference implementation and returns identical layouts.
PipeLayout route_pipes(const PipeTaskSpec& spec);
PipeLayout route_pipes_serial(const PipeTaskSpec& spec);

} // namespace seqplan
