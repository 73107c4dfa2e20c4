#include <seqplan/executor.hpp>

#include <cmath>
#include <sstream>

namespace seqplan {

void ImpedanceParams::validate() const {
    if (!(stiffness.x > 0 && stiffness.y > 0 && stiffness.z > 0))
        raise(errc::invalid_task, "stiffness must be positive on every axis");
    if (damping.x < 0 || damping.y < 0 || damping.z < 0)
        raise(errc::invalid_task, "damping must be nonnegative");
    if (!(mass > 0)) raise(errc::invalid_task, "mass must be positive");
}

Vec3 impedance_force(const ImpedanceParams& p, const EEState& s, const Vec3& x_des) {
    const Vec3 dx = x_des - s.x;
    return hadamard(p.damping, s.v) + hadamard(p.stiffness, dx) + p.payload;
}

EEState step_dynamics(const ImpedanceParams& p, const EEState& s, const Vec3& x_des, double dt) {
    const Vec3 dx = x_des - s.x;
    const Vec3 accel = (hadamard(p.stiffness, dx) - hadamard(p.damping, s.v)) / p.mass;
    EEState next = s;
    next.v = s.v + accel * dt;
    next.x = s.x + next.v * dt;
    return next;
}

double tracking_energy(const ImpedanceParams& p, const EEState& s, const Vec3& x_des) {
    const Vec3 dx = x_des - s.x;
    return 0.5 * p.mass * dot(s.v, s.v) + 0.5 * dot(hadamard(p.stiffness, dx), dx);
}

namespace {

// Strict interior overlap of two axis-aligned boxes; touching faces (stacked
// objects) do not count.
bool boxes_overlap(const Vec3& c1, const Vec3& s1, const Vec3& c2, const Vec3& s2) {
    constexpr double eps = 1e-9;
    const auto overlap1d = [](double a, double ha, double b, double hb) {
        return (a - ha) < (b + hb) - eps && (b - hb) < (a + ha) - eps;
    };
    return overlap1d(c1.x, s1.x / 2, c2.x, s2.x / 2) &&
           overlap1d(c1.y, s1.y / 2, c2.y, s2.y / 2) &&
           overlap1d(c1.z, s1.z / 2, c2.z, s2.z / 2);
}

class PlanRunner {
public:
    PlanRunner(Scene scene, const ImpedanceParams& params, const ExecutorConfig& cfg)
        : scene_(std::move(scene)), params_(params), cfg_(cfg) {
        traj_.dt = cfg.dt;
    }

    ExecutionResult run(const std::vector<MatchedOperation>& ops) {
        for (const auto& op : ops) run_one(op);
        return {std::move(traj_), std::move(scene_)};
    }

private:
    void run_one(const MatchedOperation& op) {
        // Labels may collide across kinds after normalization (disk "A" vs peg
        // "a"); only movable objects can be operated on.
        SceneObject* obj = nullptr;
        const std::string wanted = normalize_label(op.object_name);
        for (auto& candidate : scene_.objects)
            if (is_movable(candidate.kind) && normalize_label(candidate.name) == wanted)
                obj = &candidate;
        if (!obj)
            raise(errc::object_missing, "object '" + op.object_name + "' is not in the scene");

        const double clearance = cfg_.clearance_factor * std::max(obj->height(), 1e-3);
        const Vec3 source = obj->position;
        const Vec3 above_source = source + Vec3{0, 0, clearance};
        const Vec3 target = op.target_position;
        const Vec3 above_target = target + Vec3{0, 0, clearance};

        // Occupancy check before committing to the place.
        for (const auto& other : scene_.objects) {
            if (&other == obj || !is_movable(other.kind)) continue;
            if (boxes_overlap(target, obj->size, other.position, other.size))
                raise(errc::target_occupied, "placing '" + op.object_name + "' at " +
                                                 format_vec(target) + " overlaps '" + other.name +
                                                 "'");
        }

        goto_waypoint(above_source);
        goto_waypoint(source);
        ee_.holding = obj->name; // close gripper
        goto_waypoint(above_source);
        goto_waypoint(above_target);
        goto_waypoint(target);
        ee_.holding.reset(); // open gripper
        obj->position = target;
    }

    void goto_waypoint(const Vec3& x_des) {
        for (int i = 0; i < cfg_.max_steps_per_waypoint; ++i) {
            if ((x_des - ee_.x).norm() < cfg_.pos_tol && ee_.v.norm() < cfg_.vel_tol) return;
            ee_ = step_dynamics(params_, ee_, x_des, cfg_.dt);
            t_ += cfg_.dt;
            traj_.samples.push_back({t_, ee_});
        }
        raise(errc::convergence_timeout,
              "waypoint " + format_vec(x_des) + " not reached within " +
                  std::to_string(cfg_.max_steps_per_waypoint) + " steps");
    }

    static std::string format_vec(const Vec3& v) {
        std::ostringstream os;
        os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
        return os.str();
    }

    Scene scene_;
    ImpedanceParams params_;
    ExecutorConfig cfg_;
    EEState ee_;
    Trajectory traj_;
    double t_ = 0.0;
};

} // namespace

ExecutionResult execute_plan(const std::vector<MatchedOperation>& ops, Scene scene,
                             const ImpedanceParams& params, const ExecutorConfig& cfg) {
    params.validate();
    if (cfg.dt <= 0) raise(errc::invalid_task, "dt must be positive");
    PlanRunner runner(std::move(scene), params, cfg);
    return runner.run(ops);
}

void write_trajectory_csv(const Trajectory& traj, std::ostream& out) {
    out << "t,x,y,z,vx,vy,vz,gripper\n";
    for (const auto& s : traj.samples) {
        out << s.t << "," << s.state.x.x << "," << s.state.x.y << "," << s.state.x.z << ","
            << s.state.v.x << "," << s.state.v.y << "," << s.state.v.z << ","
            << (s.state.holding ? "closed:" + *s.state.holding : std::string("open")) << "\n";
    }
}

} // namespace seqplan
