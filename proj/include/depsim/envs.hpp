#pragma once

#include <Eigen/Core>
#include <memory>
#include <optional>
#include <random>

#include "depsim/dep.hpp"
#include "depsim/dynamics.hpp"
#include "depsim/muscle.hpp"

namespace depsim {

struct StepResult {
    Eigen::VectorXd observation;
    double reward = 0.0;
    bool done = false;
};

// Episodic task interface. Actions live in [-1, 1]^action_dim; environments
// that natively use a different actuation range map internally.
class Environment {
public:
    virtual ~Environment() = default;

    virtual int action_dim() const = 0;
    virtual int dep_sensor_dim() const = 0;
    virtual double dep_f_sign() const = 0;
    virtual int horizon() const = 0;

    virtual Eigen::VectorXd reset(std::mt19937_64& rng) = 0;
    virtual StepResult step(const Eigen::VectorXd& action) = 0;

    // Proprioceptive sensors for DEP, already normalized and inflated.
    virtual Eigen::VectorXd dep_sensors() const = 0;
    virtual std::array<double, 2> hand_position() const = 0;
};

// Torque-driven 2-link arm with a virtual action multiplier. No reward; used
// as a comparative exploration testbed only.
class TorqueArmEnv : public Environment {
public:
    explicit TorqueArmEnv(ArmGeometry geometry = {}, int multiplier = 1, int horizon = 1000);

    int action_dim() const override { return 2 * multiplier_; }
    int dep_sensor_dim() const override { return 2 * multiplier_; }
    double dep_f_sign() const override { return 1.0; }
    int horizon() const override { return horizon_; }

    Eigen::VectorXd reset(std::mt19937_64& rng) override;
    StepResult step(const Eigen::VectorXd& action) override;
    Eigen::VectorXd dep_sensors() const override;
    std::array<double, 2> hand_position() const override;

    const JointState& joint_state() const { return state_; }
    const ArmGeometry& geometry() const { return geometry_; }

private:
    ArmGeometry geometry_;
    int multiplier_;
    int horizon_;
    JointState state_;
    int t_ = 0;
};

struct Goal {
    std::array<double, 2> target{0.0, 0.0};  // m
    double radius = 0.05;                    // m
};

struct Arm26Config {
    ArmGeometry geometry{};
    MuscleParams muscles = MuscleParams::arm26_default();
    int multiplier = 1;
    int horizon = 300;
    double reset_pos_std = 0.01;
    double reset_vel_std = 0.03;
    // goal sampling rectangle in the upper-right workspace (0.35 m x 0.15 m)
    std::array<double, 2> goal_x{0.10, 0.45};
    std::array<double, 2> goal_y{0.10, 0.25};
    double goal_radius = 0.05;
    double reward_reach = 10.0;
    double reward_step = -1.0;
    double dep_c_force = 3e-4;
};

// Muscle-driven 2-link arm (6 muscles) with sparse reaching reward. Native
// actuation is an excitation vector in [0, 1]^(6n); the Environment action
// interface maps [-1, 1] onto it affinely.
class Arm26Env : public Environment {
public:
    explicit Arm26Env(Arm26Config config = {});

    int action_dim() const override { return kNumMuscles * config_.multiplier; }
    int dep_sensor_dim() const override { return kNumMuscles * config_.multiplier; }
    double dep_f_sign() const override { return -1.0; }
    int horizon() const override { return config_.horizon; }

    Eigen::VectorXd reset(std::mt19937_64& rng) override;
    StepResult step(const Eigen::VectorXd& action) override;
    StepResult step_excitations(const Eigen::VectorXd& excitations);  // native [0, 1]^(6n)
    Eigen::VectorXd dep_sensors() const override;
    std::array<double, 2> hand_position() const override;

    const JointState& joint_state() const { return state_; }
    const MuscleState& muscle_state() const { return muscles_; }
    const Goal& goal() const { return goal_; }
    const Arm26Config& config() const { return config_; }

    // Min/max sensor calibration from a scripted sweep of the joint range.
    static std::pair<ChannelNormalizer, ChannelNormalizer> calibrate_sensors(
        const MuscleParams& p, const ArmGeometry& g);

private:
    Eigen::VectorXd observation() const;
    void refresh_muscle_kinematics();

    Arm26Config config_;
    ChannelNormalizer length_norm_, force_norm_;
    JointState state_;
    MuscleState muscles_;
    Eigen::VectorXd lengths_, velocities_, forces_;
    Goal goal_;
    int t_ = 0;
};

struct MountainCarConfig {
    MountainCarParams params{};
    int horizon = 1000;
    // Start a little up the left slope with a rightward push: the classic
    // (-0.5, 0) start is a fixed point of the deterministic rule (zero
    // velocity => zero action forever), and with too little initial energy
    // the short-lag controllers settle into a sub-goal limit cycle.
    double init_x = -0.60;
    double init_v = 0.046;
};

// Continuous mountain car. The DEP sensor is the position relative to the
// valley bottom, so s > 0 means "right of the valley".
class MountainCarEnv : public Environment {
public:
    explicit MountainCarEnv(MountainCarConfig config = {});

    int action_dim() const override { return 1; }
    int dep_sensor_dim() const override { return 1; }
    double dep_f_sign() const override { return 1.0; }
    int horizon() const override { return config_.horizon; }

    Eigen::VectorXd reset(std::mt19937_64& rng) override;
    StepResult step(const Eigen::VectorXd& action) override;
    Eigen::VectorXd dep_sensors() const override;
    std::array<double, 2> hand_position() const override { return {state_.x, state_.v}; }

    double sensor() const;
    const MountainCarState& state() const { return state_; }
    bool succeeded() const { return succeeded_; }

private:
    MountainCarConfig config_;
    MountainCarState state_;
    bool succeeded_ = false;
    int t_ = 0;
};

}  // namespace depsim
