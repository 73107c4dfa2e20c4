#pragma once

#include <seqplan/matcher.hpp>
#include <seqplan/world.hpp>

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace seqplan {

/// Per-axis spring-damper gains plus the payload term of the control law.
struct ImpedanceParams {
    Vec3 stiffness{100.0, 100.0, 100.0};  // K, force per unit displacement
    Vec3 damping{20.0, 20.0, 20.0};       // C, force per unit velocity
    Vec3 payload{0.0, 0.0, 0.0};          // ld, constant force term
    double mass = 1.0;

    void validate() const; // throws invalid_task on non-physical values
};

struct EEState {
    Vec3 x;
    Vec3 v;
    std::optional<std::string> holding; // gripper: closed on an object, or open
};

struct TrajectorySample {
    double t = 0.0;
    EEState state;
};

struct Trajectory {
    double dt = 1e-3;
    std::vector<TrajectorySample> samples;
};

struct ExecutorConfig {
    double dt = 1e-3;
    double pos_tol = 1e-3;
    double vel_tol = 1e-3;
    double clearance_factor = 1.5; // clearance = factor * object height
    int max_steps_per_waypoint = 100000;
};

/// Commanded force F = C v + K (x_des - x) + ld.
Vec3 impedance_force(const ImpedanceParams& p, const EEState& s, const Vec3& x_des);

/// Semi-implicit update with the payload treated as gravity-compensated:
/// a = (K (x_des - x) - C v) / m; v' = v + a dt; x' = x + v' dt.
EEState step_dynamics(const ImpedanceParams& p, const EEState& s, const Vec3& x_des, double dt);

/// Spring-plus-kinetic energy 1/2 m |v|^2 + 1/2 (x_des-x)^T K (x_des-x), the
/// quantity that is non-increasing under damped step_dynamics.
double tracking_energy(const ImpedanceParams& p, const EEState& s, const Vec3& x_des);

struct ExecutionResult {
    Trajectory trajectory;
    Scene scene;
};

/// Drive the end effector through pick-and-place waypoints for each operation:
/// above the source, the source (grip), back above, above the target, the
/// target (release). Each waypoint is converged with step_dynamics; the scene
/// object's position becomes the target on release.
/// Throws object_missing / target_occupied / convergence_timeout.
ExecutionResult execute_plan(const std::vector<MatchedOperation>& ops, Scene scene,
                             const ImpedanceParams& params, const ExecutorConfig& cfg = {});

/// CSV columns: t,x,y,z,vx,vy,vz,gripper.
void write_trajectory_csv(const Trajectory& traj, std::ostream& out);

} // namespace seqplan
