#include "depsim/envs.hpp"

#include <algorithm>
#include <cmath>

#include "depsim/action_space.hpp"

namespace depsim {

TorqueArmEnv::TorqueArmEnv(ArmGeometry geometry, int multiplier, int horizon)
    : geometry_(geometry), multiplier_(multiplier), horizon_(horizon) {
    geometry_.validate();
    if (multiplier < 1) throw std::invalid_argument("torquearm: multiplier must be >= 1");
}

Eigen::VectorXd TorqueArmEnv::reset(std::mt19937_64& rng) {
    std::normal_distribution<double> pos(0.0, 0.01), vel(0.0, 0.03);
    state_ = JointState{};
    for (int i = 0; i < 2; ++i) {
        state_.q[i] = std::clamp(pos(rng), -geometry_.joint_limit[i], geometry_.joint_limit[i]);
        state_.qdot[i] = vel(rng);
    }
    t_ = 0;
    Eigen::VectorXd obs(4);
    obs << state_.q[0], state_.q[1], state_.qdot[0], state_.qdot[1];
    return obs;
}

StepResult TorqueArmEnv::step(const Eigen::VectorXd& action) {
    if (action.size() != action_dim())
        throw std::invalid_argument("torquearm: wrong action dimension");
    const Eigen::VectorXd a = collapse_actions(action, multiplier_);
    const std::array<double, 2> torques{a[0] * geometry_.max_torque, a[1] * geometry_.max_torque};
    state_ = arm_step(state_, torques, geometry_);
    ++t_;
    StepResult res;
    res.observation.resize(4);
    res.observation << state_.q[0], state_.q[1], state_.qdot[0], state_.qdot[1];
    res.reward = 0.0;
    res.done = t_ >= horizon_;
    return res;
}

Eigen::VectorXd TorqueArmEnv::dep_sensors() const {
    Eigen::VectorXd s(2);
    s << state_.q[0] / geometry_.joint_limit[0], state_.q[1] / geometry_.joint_limit[1];
    return inflate_sensors(s, multiplier_);
}

std::array<double, 2> TorqueArmEnv::hand_position() const {
    return forward_kinematics(state_.q, geometry_);
}

std::pair<ChannelNormalizer, ChannelNormalizer> Arm26Env::calibrate_sensors(
    const MuscleParams& p, const ArmGeometry& g) {
    const int steps = 61;
    Eigen::VectorXd len_lo, len_hi, force_lo, force_hi;
    bool first = true;
    for (int i = 0; i < steps; ++i) {
        for (int j = 0; j < steps; ++j) {
            const double q1 = -g.joint_limit[0] + 2.0 * g.joint_limit[0] * i / (steps - 1);
            const double q2 = -g.joint_limit[1] + 2.0 * g.joint_limit[1] * j / (steps - 1);
            const Eigen::VectorXd lengths = muscle_lengths({q1, q2}, p);
            const Eigen::VectorXd zero_v = Eigen::VectorXd::Zero(lengths.size());
            const Eigen::VectorXd f_passive =
                muscle_forces(Eigen::VectorXd::Zero(lengths.size()), lengths, zero_v, p);
            const Eigen::VectorXd f_active =
                muscle_forces(Eigen::VectorXd::Ones(lengths.size()), lengths, zero_v, p);
            if (first) {
                len_lo = lengths; len_hi = lengths;
                force_lo = f_passive.cwiseMin(f_active);
                force_hi = f_passive.cwiseMax(f_active);
                first = false;
            } else {
                len_lo = len_lo.cwiseMin(lengths);
                len_hi = len_hi.cwiseMax(lengths);
                force_lo = force_lo.cwiseMin(f_passive).cwiseMin(f_active);
                force_hi = force_hi.cwiseMax(f_passive).cwiseMax(f_active);
            }
        }
    }
    // guard against degenerate force channels
    for (Eigen::Index k = 0; k < force_hi.size(); ++k)
        if (force_hi[k] - force_lo[k] < 1e-9) force_hi[k] = force_lo[k] + 1e-9;
    return {ChannelNormalizer(len_lo, len_hi), ChannelNormalizer(force_lo, force_hi)};
}

Arm26Env::Arm26Env(Arm26Config config) : config_(std::move(config)) {
    config_.geometry.validate();
    config_.muscles.validate();
    if (config_.multiplier < 1) throw std::invalid_argument("arm26: multiplier must be >= 1");
    auto [ln, fn] = calibrate_sensors(config_.muscles, config_.geometry);
    length_norm_ = ln;
    force_norm_ = fn;
    muscles_.activity = Eigen::VectorXd::Zero(kNumMuscles);
    refresh_muscle_kinematics();
}

void Arm26Env::refresh_muscle_kinematics() {
    lengths_ = muscle_lengths(state_.q, config_.muscles);
    velocities_ = muscle_velocities(state_.qdot, config_.muscles);
    forces_ = muscle_forces(muscles_.activity, lengths_, velocities_, config_.muscles);
}

Eigen::VectorXd Arm26Env::reset(std::mt19937_64& rng) {
    std::normal_distribution<double> pos(0.0, config_.reset_pos_std);
    std::normal_distribution<double> vel(0.0, config_.reset_vel_std);
    state_ = JointState{};
    for (int i = 0; i < 2; ++i) {
        state_.q[i] = std::clamp(pos(rng), -config_.geometry.joint_limit[i],
                                 config_.geometry.joint_limit[i]);
        state_.qdot[i] = vel(rng);
    }
    muscles_.activity.setZero();
    std::uniform_real_distribution<double> gx(config_.goal_x[0], config_.goal_x[1]);
    std::uniform_real_distribution<double> gy(config_.goal_y[0], config_.goal_y[1]);
    goal_.target = {gx(rng), gy(rng)};
    goal_.radius = config_.goal_radius;
    t_ = 0;
    refresh_muscle_kinematics();
    return observation();
}

StepResult Arm26Env::step(const Eigen::VectorXd& action) {
    // [-1, 1] interface actions map affinely onto excitations
    return step_excitations(((action.array() + 1.0) / 2.0).matrix());
}

StepResult Arm26Env::step_excitations(const Eigen::VectorXd& excitations) {
    if (excitations.size() != action_dim())
        throw std::invalid_argument("arm26: wrong action dimension");
    Eigen::VectorXd e = collapse_actions(excitations, config_.multiplier);
    e = e.cwiseMax(0.0).cwiseMin(1.0);

    muscles_.activity = activation_step(muscles_.activity, e, config_.geometry.dt, config_.muscles);
    refresh_muscle_kinematics();
    const auto torques = joint_torques_from_muscles(forces_, config_.muscles);
    state_ = arm_step(state_, torques, config_.geometry);
    refresh_muscle_kinematics();
    ++t_;

    const auto hand = hand_position();
    const double dx = hand[0] - goal_.target[0], dy = hand[1] - goal_.target[1];
    const double dist = std::sqrt(dx * dx + dy * dy);
    StepResult res;
    const bool reached = dist < goal_.radius;
    res.reward = reached ? config_.reward_reach : config_.reward_step;
    res.done = reached || t_ >= config_.horizon;
    res.observation = observation();
    return res;
}

Eigen::VectorXd Arm26Env::observation() const {
    const int n = config_.multiplier;
    const auto hand = hand_position();
    Eigen::VectorXd obs(4 + 4 * kNumMuscles * n + 4);
    Eigen::Index at = 0;
    obs.segment(at, 2) << state_.q[0], state_.q[1]; at += 2;
    obs.segment(at, 2) << state_.qdot[0], state_.qdot[1]; at += 2;
    obs.segment(at, kNumMuscles * n) = inflate_sensors(lengths_, n); at += kNumMuscles * n;
    obs.segment(at, kNumMuscles * n) = inflate_sensors(velocities_, n); at += kNumMuscles * n;
    obs.segment(at, kNumMuscles * n) = inflate_sensors(forces_, n); at += kNumMuscles * n;
    obs.segment(at, kNumMuscles * n) = inflate_sensors(muscles_.activity, n); at += kNumMuscles * n;
    obs.segment(at, 2) << goal_.target[0], goal_.target[1]; at += 2;
    obs.segment(at, 2) << hand[0], hand[1];
    return obs;
}

Eigen::VectorXd Arm26Env::dep_sensors() const {
    const Eigen::VectorXd s =
        dep_sensor(lengths_, forces_, length_norm_, force_norm_, config_.dep_c_force);
    return inflate_sensors(s, config_.multiplier);
}

std::array<double, 2> Arm26Env::hand_position() const {
    return forward_kinematics(state_.q, config_.geometry);
}

MountainCarEnv::MountainCarEnv(MountainCarConfig config) : config_(config) {
    state_ = {config_.init_x, config_.init_v};
}

Eigen::VectorXd MountainCarEnv::reset(std::mt19937_64& /*rng*/) {
    state_ = {config_.init_x, config_.init_v};
    succeeded_ = false;
    t_ = 0;
    Eigen::VectorXd obs(2);
    obs << state_.x, state_.v;
    return obs;
}

StepResult MountainCarEnv::step(const Eigen::VectorXd& action) {
    if (action.size() != 1) throw std::invalid_argument("mountain car: scalar action expected");
    state_ = mountain_car_step(state_, action[0], config_.params);
    ++t_;
    if (state_.x >= config_.params.success_threshold) succeeded_ = true;
    StepResult res;
    res.observation.resize(2);
    res.observation << state_.x, state_.v;
    res.done = succeeded_ || t_ >= config_.horizon;
    return res;
}

double MountainCarEnv::sensor() const {
    return state_.x + M_PI / 6.0;  // valley bottom maps to s = 0
}

Eigen::VectorXd MountainCarEnv::dep_sensors() const {
    Eigen::VectorXd s(1);
    s << sensor();
    return s;
}

}  // namespace depsim
