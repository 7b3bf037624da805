#pragma once

#include <Eigen/Core>
#include <functional>
#include <random>
#include <vector>

#include "depsim/dep.hpp"
#include "depsim/envs.hpp"

namespace depsim {

enum class ControllerTag { policy, dep, avg };

const char* to_string(ControllerTag tag);

struct SwitchConfig {
    enum class Mode { init_only, avg, det, stoch };
    Mode mode = Mode::stoch;
    double p_switch = 0.01;  // switch probability evaluated on policy steps
    int h_dep = 20;          // DEP takeover horizon (steps)
    int h_rl = 20;           // policy horizon for det mode (steps)
    double w_avg = 0.1;      // DEP weight for avg mode
    bool background_learning = true;  // false = the "noback" variant

    void validate() const;
};

// Renewal process over {policy, dep}. In stoch mode the switch decision is
// drawn once per policy-controlled step; a DEP span always runs to completion.
class SwitchState {
public:
    ControllerTag next(const SwitchConfig& config, std::mt19937_64& rng);
    void reset();

private:
    int dep_remaining_ = 0;
    int det_clock_ = 0;
};

struct Transition {
    Eigen::VectorXd state;
    Eigen::VectorXd action;
    double reward = 0.0;
    Eigen::VectorXd next_state;
    bool done = false;
    ControllerTag tag = ControllerTag::policy;
};

// Fixed-capacity FIFO ring of transitions.
class ReplayBuffer {
public:
    explicit ReplayBuffer(size_t capacity);

    void push(Transition t);
    size_t size() const { return data_.size(); }
    size_t capacity() const { return capacity_; }
    const Transition& at(size_t i) const;  // 0 = oldest

private:
    size_t capacity_;
    size_t head_ = 0;  // index of oldest element
    std::vector<Transition> data_;
};

struct LogStep {
    int t = 0;
    Eigen::VectorXd observation;
    Eigen::VectorXd action;
    double reward = 0.0;
    ControllerTag tag = ControllerTag::policy;
};

struct EpisodeLog {
    std::vector<LogStep> steps;
    double total_reward = 0.0;
};

using Policy = std::function<Eigen::VectorXd(const Eigen::VectorXd& observation)>;

// One episode of policy/DEP alternation. DEP sees sensors and trains every
// step unless background_learning is off and the policy is in control.
EpisodeLog run_episode(Environment& env, const Policy& policy, DepController& dep,
                       const SwitchConfig& config, std::mt19937_64& rng,
                       ReplayBuffer* buffer = nullptr);

// Unsupervised DEP-only phase; episodes auto-reset until n_steps transitions
// were pushed.
void prefill(Environment& env, DepController& dep, int n_steps, ReplayBuffer& buffer,
             std::mt19937_64& rng);

}  // namespace depsim
