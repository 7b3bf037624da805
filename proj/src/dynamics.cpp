#include "depsim/dynamics.hpp"

#include <algorithm>

namespace depsim {

namespace {

bool finite2(const std::array<double, 2>& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]);
}

}  // namespace

void ArmGeometry::validate() const {
    if (link_length[0] <= 0 || link_length[1] <= 0) throw std::invalid_argument("link lengths must be > 0");
    if (link_mass[0] <= 0 || link_mass[1] <= 0) throw std::invalid_argument("link masses must be > 0");
    if (joint_limit[0] <= 0 || joint_limit[1] <= 0) throw std::invalid_argument("joint limits must be > 0");
    if (dt <= 0) throw std::invalid_argument("dt must be > 0");
    if (substeps < 1) throw std::invalid_argument("substeps must be >= 1");
}

std::array<double, 2> arm_accel(const JointState& s, const std::array<double, 2>& torques,
                                const ArmGeometry& g) {
    const double l1 = g.link_length[0], l2 = g.link_length[1];
    const double m1 = g.link_mass[0], m2 = g.link_mass[1];
    const double q2 = s.q[1];
    const double c2 = std::cos(q2), s2 = std::sin(q2);

    const double M11 = (m1 + m2) * l1 * l1 + m2 * l2 * l2 + 2.0 * m2 * l1 * l2 * c2;
    const double M12 = m2 * l2 * l2 + m2 * l1 * l2 * c2;
    const double M22 = m2 * l2 * l2;

    const double h = m2 * l1 * l2 * s2;
    const double c1 = -h * (2.0 * s.qdot[0] * s.qdot[1] + s.qdot[1] * s.qdot[1]);
    const double cor2 = h * s.qdot[0] * s.qdot[0];

    const double gr = g.gravity;
    const double g1 = (m1 + m2) * gr * l1 * std::sin(s.q[0]) + m2 * gr * l2 * std::sin(s.q[0] + q2);
    const double g2 = m2 * gr * l2 * std::sin(s.q[0] + q2);

    const double rhs1 = torques[0] - c1 - g1 - g.joint_damping * s.qdot[0];
    const double rhs2 = torques[1] - cor2 - g2 - g.joint_damping * s.qdot[1];

    const double det = M11 * M22 - M12 * M12;
    return {(M22 * rhs1 - M12 * rhs2) / det, (M11 * rhs2 - M12 * rhs1) / det};
}

JointState arm_step(const JointState& s, std::array<double, 2> torques, const ArmGeometry& g) {
    if (!finite2(torques) || !finite2(s.q) || !finite2(s.qdot))
        throw std::invalid_argument("arm_step: non-finite state or torque");

    for (int i = 0; i < 2; ++i)
        torques[i] = std::clamp(torques[i], -g.max_torque, g.max_torque);

    JointState out = s;
    const double h = g.dt / g.substeps;
    for (int k = 0; k < g.substeps; ++k) {
        const auto acc = arm_accel(out, torques, g);
        for (int i = 0; i < 2; ++i) {
            out.qdot[i] += h * acc[i];
            out.q[i] += h * out.qdot[i];
            if (out.q[i] > g.joint_limit[i]) {
                out.q[i] = g.joint_limit[i];
                out.qdot[i] = 0.0;
            } else if (out.q[i] < -g.joint_limit[i]) {
                out.q[i] = -g.joint_limit[i];
                out.qdot[i] = 0.0;
            }
        }
    }
    return out;
}

std::array<double, 2> forward_kinematics(const std::array<double, 2>& q, const ArmGeometry& g) {
    const double a1 = q[0], a12 = q[0] + q[1];
    const double x = -g.link_length[0] * std::sin(a1) - g.link_length[1] * std::sin(a12);
    const double y = -g.link_length[0] * std::cos(a1) - g.link_length[1] * std::cos(a12);
    return {x, y};
}

double arm_kinetic_energy(const JointState& s, const ArmGeometry& g) {
    const double l1 = g.link_length[0], l2 = g.link_length[1];
    const double m1 = g.link_mass[0], m2 = g.link_mass[1];
    const double c2 = std::cos(s.q[1]);
    const double M11 = (m1 + m2) * l1 * l1 + m2 * l2 * l2 + 2.0 * m2 * l1 * l2 * c2;
    const double M12 = m2 * l2 * l2 + m2 * l1 * l2 * c2;
    const double M22 = m2 * l2 * l2;
    const double w1 = s.qdot[0], w2 = s.qdot[1];
    return 0.5 * (M11 * w1 * w1 + 2.0 * M12 * w1 * w2 + M22 * w2 * w2);
}

MountainCarState mountain_car_step(const MountainCarState& s, double action,
                                   const MountainCarParams& p) {
    const double a = std::clamp(action, -1.0, 1.0);
    MountainCarState out;
    out.v = std::clamp(s.v + a * p.force_scale - p.gravity_scale * std::cos(3.0 * s.x),
                       -p.v_max, p.v_max);
    out.x = std::clamp(s.x + out.v, p.x_min, p.x_max);
    if (out.x <= p.x_min && out.v < 0.0) out.v = 0.0;
    return out;
}

}  // namespace depsim
