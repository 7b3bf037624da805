#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace depsim {

// Generalized coordinates of the planar 2-link arm. q = (0, 0) is the arm
// fully extended along gravity ("down"); angles are measured from that pose.
struct JointState {
    std::array<double, 2> q{0.0, 0.0};     // rad
    std::array<double, 2> qdot{0.0, 0.0};  // rad/s
};

struct ArmGeometry {
    std::array<double, 2> link_length{0.30, 0.33};  // m
    std::array<double, 2> link_mass{1.0, 1.0};      // kg, point mass at link tip
    std::array<double, 2> joint_limit{2.0944, 2.0944};  // |q_i| <= limit (rad), +-120 deg
    double gravity = 9.81;       // m/s^2, pulls toward q = 0
    double joint_damping = 0.05; // N*m*s viscous damping per joint
    double dt = 0.01;            // control interval (s)
    int substeps = 20;           // integrator substeps per control interval
    double max_torque = 5.0;     // N*m per joint

    void validate() const;
};

// Joint accelerations of the 2-link chain (mass matrix, Coriolis, in-plane
// gravity) for point masses at the link tips.
std::array<double, 2> arm_accel(const JointState& s, const std::array<double, 2>& torques,
                                const ArmGeometry& g);

// Semi-implicit Euler step over one control interval; joints exceeding their
// limit are clamped with the corresponding velocity zeroed.
JointState arm_step(const JointState& s, std::array<double, 2> torques, const ArmGeometry& g);

// Hand position of the planar chain. Convention: q = (0,0) -> (0, -(l1+l2)),
// q = (90deg, 0) -> (-(l1+l2), 0).
std::array<double, 2> forward_kinematics(const std::array<double, 2>& q, const ArmGeometry& g);

// Kinetic energy of the point-mass chain, used by the energy property tests.
double arm_kinetic_energy(const JointState& s, const ArmGeometry& g);

struct MountainCarState {
    double x = -0.5;  // position in [-1.2, 0.6]
    double v = 0.0;   // velocity in [-0.07, 0.07]
};

struct MountainCarParams {
    double force_scale = 0.0015;
    double gravity_scale = 0.0025;
    double x_min = -1.2;
    double x_max = 0.6;
    double v_max = 0.07;
    double success_threshold = 0.45;
};

// v' = clamp(v + a*force - gravity*cos(3x)); x' = clamp(x + v'); velocity is
// zeroed at the left wall. The action is clipped to [-1, 1] before use.
MountainCarState mountain_car_step(const MountainCarState& s, double action,
                                   const MountainCarParams& p);

}  // namespace depsim
