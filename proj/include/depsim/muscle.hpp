#pragma once

#include <Eigen/Core>
#include <stdexcept>

#include "depsim/dynamics.hpp"

namespace depsim {

// arm26 muscle routing: 6 muscles over 2 joints. Muscles 0/1 are the shoulder
// flexor/extensor pair, 2/3 the elbow pair, 4/5 biarticular flexor/extensor.
inline constexpr int kNumMuscles = 6;

struct MuscleParams {
    Eigen::VectorXd f_max;        // N, per muscle
    Eigen::VectorXd l_opt;        // m, optimal fiber length
    Eigen::VectorXd l_tendon;     // m, constant tendon length
    Eigen::VectorXd l_ref;        // m, total path length at q = 0
    Eigen::MatrixXd moment_arms;  // muscle x joint (m); l_total(q) = l_ref - R q
    double tau_act = 0.01;        // s
    double tau_deact = 0.04;      // s
    double fv_vmax_scale = 10.0;  // max shortening speed, in l_opt per second
    double fv_clip_hi = 1.35;
    double passive_gain = 3.0;

    static MuscleParams arm26_default();
    void validate() const;
};

struct MuscleState {
    Eigen::VectorXd activity;  // in [0, 1], per muscle
};

// One explicit-Euler step of the first-order activation dynamics. The time
// constant depends on activity and excitation so that activity rises faster
// than it decays.
double activation_step(double activity, double excitation, double dt, const MuscleParams& p);

Eigen::VectorXd activation_step(const Eigen::VectorXd& activity, const Eigen::VectorXd& excitation,
                                double dt, const MuscleParams& p);

// Fiber lengths under the rigid-tendon path model: l_muscle = l_ref - R q - l_tendon.
Eigen::VectorXd muscle_lengths(const std::array<double, 2>& q, const MuscleParams& p);

// Fiber velocities: d/dt l_muscle = -R qdot.
Eigen::VectorXd muscle_velocities(const std::array<double, 2>& qdot, const MuscleParams& p);

// Hill-type force: F = F_max * (a * FL(l~) * FV(v~) + FP(l~)), always >= 0.
double muscle_force(double activity, double l_norm, double v_norm, double f_max,
                    const MuscleParams& p);

Eigen::VectorXd muscle_forces(const Eigen::VectorXd& activity, const Eigen::VectorXd& lengths,
                              const Eigen::VectorXd& velocities, const MuscleParams& p);

// tau_joint = R^T F. Antagonist pairs with equal force cancel.
std::array<double, 2> joint_torques_from_muscles(const Eigen::VectorXd& forces,
                                                 const MuscleParams& p);

}  // namespace depsim
