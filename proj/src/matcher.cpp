#include <seqplan/matcher.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace seqplan {

using json = nlohmann::json;

namespace {

// Objects whose centers share a horizontal column within this tolerance are
// treated as one stack.
constexpr double kColumnTol = 1e-6;

bool same_column(const Vec3& a, const Vec3& b) {
    return std::abs(a.x - b.x) <= kColumnTol && std::abs(a.y - b.y) <= kColumnTol;
}

const SceneObject* find_anchor(const Scene& scene, std::string_view label) {
    const std::string n = normalize_label(label);
    for (const auto& obj : scene.objects)
        if (!is_movable(obj.kind) && normalize_label(obj.name) == n) return &obj;
    return nullptr;
}

const SceneObject* find_movable(const Scene& scene, std::string_view label) {
    const std::string n = normalize_label(label);
    for (const auto& obj : scene.objects)
        if (is_movable(obj.kind) && normalize_label(obj.name) == n) return &obj;
    return nullptr;
}

double stack_height_at(const Scene& scene, const Vec3& column, const SceneObject& moving) {
    double total = 0.0;
    for (const auto& obj : scene.objects) {
        if (!is_movable(obj.kind)) continue;
        if (&obj == &moving || normalize_label(obj.name) == normalize_label(moving.name)) continue;
        if (same_column(obj.position, column)) total += obj.height();
    }
    return total;
}

} // namespace

Vec3 resolve_target(const TargetSpec& target, const Scene& scene, const SceneObject& moving) {
    if (const auto* c = std::get_if<Coordinate>(&target)) return c->value;

    if (const auto* n = std::get_if<NamedLocation>(&target)) {
        const SceneObject* anchor = find_anchor(scene, n->label);
        if (!anchor) raise(errc::unknown_label, "no peg or marker named '" + n->label + "'");
        const double stack = stack_height_at(scene, anchor->position, moving);
        return {anchor->position.x, anchor->position.y,
                anchor->position.z + stack + moving.height() / 2.0};
    }

    if (std::holds_alternative<BaseLocation>(target)) {
        const SceneObject* base = find_anchor(scene, "base");
        if (!base) base = find_anchor(scene, "base location");
        if (!base) raise(errc::no_base_defined, "scene has no base marker");
        const double stack = stack_height_at(scene, base->position, moving);
        return {base->position.x, base->position.y,
                base->position.z + stack + moving.height() / 2.0};
    }

    const auto& on = std::get<OnTopOf>(target);
    const SceneObject* support = find_movable(scene, on.label);
    if (!support) raise(errc::unknown_label, "no object named '" + on.label + "'");

    // Topmost object of the support's stack, ignoring the one being moved.
    const SceneObject* top = support;
    for (const auto& obj : scene.objects) {
        if (!is_movable(obj.kind)) continue;
        if (normalize_label(obj.name) == normalize_label(moving.name)) continue;
        if (same_column(obj.position, support->position) && obj.position.z > top->position.z)
            top = &obj;
    }
    return {top->position.x, top->position.y,
            top->position.z + top->height() / 2.0 + moving.height() / 2.0};
}

std::vector<MatchedOperation> match_objects(const Plan& plan, const Scene& scene,
                                            const Dictionary& dict) {
    std::vector<MatchedOperation> ops;
    Scene work = scene;
    Vec3 prev_ref{0.0, 0.0, 0.0};

    for (const auto& step : plan.steps) {
        if (!dict.has_action(step.action))
            raise(errc::no_match, "step " + std::to_string(step.index) + " action '" +
                                      step.action + "' not in dictionary");

        const std::string wanted = normalize_label(step.object);
        std::vector<SceneObject*> candidates;
        for (auto& obj : work.objects)
            if (is_movable(obj.kind) && normalize_label(obj.name) == wanted)
                candidates.push_back(&obj);

        if (candidates.empty())
            raise(errc::no_match, "no scene object labeled '" + step.object + "'");

        SceneObject* chosen = candidates[0];
        if (candidates.size() > 1) {
            // Tie-break: nearest to the previous step's target.
            double best = (candidates[0]->position - prev_ref).norm();
            bool tie = false;
            for (std::size_t i = 1; i < candidates.size(); ++i) {
                const double d = (candidates[i]->position - prev_ref).norm();
                if (d < best) {
                    best = d;
                    chosen = candidates[i];
                    tie = false;
                } else if (d == best) {
                    tie = true;
                }
            }
            if (tie)
                raise(errc::ambiguous_match,
                      "two candidates for '" + step.object + "' at equal distance");
        }

        MatchedOperation op;
        op.object_name = chosen->name;
        op.size = chosen->size;
        op.current_position = chosen->position;
        op.action = step.action;
        op.target_position = resolve_target(step.target, work, *chosen);
        ops.push_back(op);

        chosen->position = op.target_position;
        prev_ref = op.target_position;
    }
    return ops;
}

std::string matched_ops_to_json(const std::vector<MatchedOperation>& ops) {
    json arr = json::array();
    for (const auto& op : ops) {
        arr.push_back({
            {"object", op.object_name},
            {"size", {op.size.x, op.size.y, op.size.z}},
            {"position", {op.current_position.x, op.current_position.y, op.current_position.z}},
            {"action", op.action},
            {"target", {op.target_position.x, op.target_position.y, op.target_position.z}},
        });
    }
    return arr.dump(2);
}

} // namespace seqplan
