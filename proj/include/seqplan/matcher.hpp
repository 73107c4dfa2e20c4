#pragma once

#include <seqplan/decoder.hpp>
#include <seqplan/world.hpp>

#include <string>
#include <vector>

namespace seqplan {

/// A decoded step bound to a detected scene object: the object's size and
/// current position plus the action verb and the resolved target coordinate.
struct MatchedOperation {
    std::string object_name;
    Vec3 size;
    Vec3 current_position;
    std::string action;
    Vec3 target_position;

    bool operator==(const MatchedOperation&) const = default;
};

/// Resolve a target form into a concrete coordinate against the given scene
/// state. NamedLocation and BaseLocation anchor at a peg/marker and stack on
/// whatever already sits in that column; OnTopOf centers on the topmost object
/// of the support's stack. Throws unknown_label / no_base_defined.
Vec3 resolve_target(const TargetSpec& target, const Scene& scene, const SceneObject& moving);

/// Bind every step to a scene object (case-insensitive label equality over the
/// movable kinds) and resolve its target against the scene state after all
/// earlier steps have been applied. Label ties break to the candidate nearest
/// the previous step's target (scene origin for step 1).
/// Throws no_match / ambiguous_match.
std::vector<MatchedOperation> match_objects(const Plan& plan, const Scene& scene,
                                            const Dictionary& dict);

std::string matched_ops_to_json(const std::vector<MatchedOperation>& ops);

} // namespace seqplan
