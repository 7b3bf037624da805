#include "depsim/muscle.hpp"

#include <algorithm>
#include <cmath>

namespace depsim {

MuscleParams MuscleParams::arm26_default() {
    MuscleParams p;
    p.f_max = Eigen::VectorXd::Constant(kNumMuscles, 100.0);
    p.l_opt = Eigen::VectorXd::Constant(kNumMuscles, 0.12);
    p.l_tendon = Eigen::VectorXd::Constant(kNumMuscles, 0.15);

    p.moment_arms = Eigen::MatrixXd::Zero(kNumMuscles, 2);
    p.moment_arms(0, 0) = 0.04;   // shoulder flexor
    p.moment_arms(1, 0) = -0.04;  // shoulder extensor
    p.moment_arms(2, 1) = 0.04;   // elbow flexor
    p.moment_arms(3, 1) = -0.04;  // elbow extensor
    p.moment_arms(4, 0) = 0.03;   // biarticular flexor
    p.moment_arms(4, 1) = 0.03;
    p.moment_arms(5, 0) = -0.03;  // biarticular extensor
    p.moment_arms(5, 1) = -0.03;

    // fiber at optimal length in the rest pose q = 0
    p.l_ref = p.l_opt + p.l_tendon;
    return p;
}

void MuscleParams::validate() const {
    if ((f_max.array() <= 0).any()) throw std::invalid_argument("f_max must be > 0");
    if ((l_opt.array() <= 0).any()) throw std::invalid_argument("l_opt must be > 0");
    if (tau_act >= tau_deact) throw std::invalid_argument("tau_act must be < tau_deact");
    if (moment_arms.rows() != f_max.size() || moment_arms.cols() != 2)
        throw std::invalid_argument("moment_arms must be muscles x 2");
}

double activation_step(double activity, double excitation, double dt, const MuscleParams& p) {
    if (dt <= 0) throw std::invalid_argument("activation_step: dt must be > 0");
    const double a = std::clamp(excitation, 0.0, 1.0);
    const double scale = 0.5 + 1.5 * activity;
    const double tau = (a > activity) ? p.tau_act * scale : p.tau_deact / scale;
    const double next = activity + dt * (a - activity) / tau;
    return std::clamp(next, 0.0, 1.0);
}

Eigen::VectorXd activation_step(const Eigen::VectorXd& activity, const Eigen::VectorXd& excitation,
                                double dt, const MuscleParams& p) {
    Eigen::VectorXd out(activity.size());
    for (Eigen::Index i = 0; i < activity.size(); ++i)
        out[i] = activation_step(activity[i], excitation[i], dt, p);
    return out;
}

Eigen::VectorXd muscle_lengths(const std::array<double, 2>& q, const MuscleParams& p) {
    const Eigen::Vector2d qv(q[0], q[1]);
    return p.l_ref - p.moment_arms * qv - p.l_tendon;
}

Eigen::VectorXd muscle_velocities(const std::array<double, 2>& qdot, const MuscleParams& p) {
    const Eigen::Vector2d qv(qdot[0], qdot[1]);
    return -(p.moment_arms * qv);
}

double muscle_force(double activity, double l_norm, double v_norm, double f_max,
                    const MuscleParams& p) {
    // FL: quadratic bell, 1 at l~ = 1, 0 outside [0.5, 1.5]
    double fl = 1.0 - 4.0 * (l_norm - 1.0) * (l_norm - 1.0);
    fl = std::max(fl, 0.0);
    // FV: linear in normalized velocity, 1 at rest, clipped
    const double fv = std::clamp(1.0 + v_norm / p.fv_vmax_scale, 0.0, p.fv_clip_hi);
    // FP: passive stretch beyond optimal length
    const double ex = l_norm - 1.0;
    const double fp = (ex > 0.0) ? p.passive_gain * ex * ex : 0.0;
    return f_max * (activity * fl * fv + fp);
}

Eigen::VectorXd muscle_forces(const Eigen::VectorXd& activity, const Eigen::VectorXd& lengths,
                              const Eigen::VectorXd& velocities, const MuscleParams& p) {
    Eigen::VectorXd out(activity.size());
    for (Eigen::Index i = 0; i < activity.size(); ++i) {
        const double ln = lengths[i] / p.l_opt[i];
        const double vn = velocities[i] / p.l_opt[i];  // in l_opt per second
        out[i] = muscle_force(activity[i], ln, vn, p.f_max[i], p);
    }
    return out;
}

std::array<double, 2> joint_torques_from_muscles(const Eigen::VectorXd& forces,
                                                 const MuscleParams& p) {
    const Eigen::Vector2d tau = p.moment_arms.transpose() * forces;
    return {tau[0], tau[1]};
}

}  // namespace depsim
