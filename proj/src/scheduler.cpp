#include "depsim/scheduler.hpp"

#include <stdexcept>

namespace depsim {

const char* to_string(ControllerTag tag) {
    switch (tag) {
        case ControllerTag::policy: return "policy";
        case ControllerTag::dep: return "dep";
        case ControllerTag::avg: return "avg";
    }
    return "?";
}

void SwitchConfig::validate() const {
    if (p_switch < 0.0 || p_switch > 1.0)
        throw std::invalid_argument("scheduler: p_switch must be in [0, 1]");
    if (h_dep < 1 || h_rl < 1) throw std::invalid_argument("scheduler: horizons must be >= 1");
    if (w_avg < 0.0 || w_avg > 1.0)
        throw std::invalid_argument("scheduler: w_avg must be in [0, 1]");
}

ControllerTag SwitchState::next(const SwitchConfig& config, std::mt19937_64& rng) {
    switch (config.mode) {
        case SwitchConfig::Mode::init_only:
            return ControllerTag::policy;
        case SwitchConfig::Mode::avg:
            return ControllerTag::avg;
        case SwitchConfig::Mode::det: {
            const int phase = det_clock_ % (config.h_rl + config.h_dep);
            ++det_clock_;
            return phase < config.h_rl ? ControllerTag::policy : ControllerTag::dep;
        }
        case SwitchConfig::Mode::stoch: {
            if (dep_remaining_ > 0) {
                --dep_remaining_;
                return ControllerTag::dep;
            }
            // decision made after this policy step
            std::uniform_real_distribution<double> u(0.0, 1.0);
            if (u(rng) < config.p_switch) dep_remaining_ = config.h_dep;
            return ControllerTag::policy;
        }
    }
    return ControllerTag::policy;
}

void SwitchState::reset() {
    dep_remaining_ = 0;
    det_clock_ = 0;
}

ReplayBuffer::ReplayBuffer(size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("replay buffer: capacity must be > 0");
    data_.reserve(capacity);
}

void ReplayBuffer::push(Transition t) {
    if (data_.size() < capacity_) {
        data_.push_back(std::move(t));
    } else {
        data_[head_] = std::move(t);
        head_ = (head_ + 1) % capacity_;
    }
}

const Transition& ReplayBuffer::at(size_t i) const {
    if (i >= data_.size()) throw std::out_of_range("replay buffer index");
    return data_[(head_ + i) % data_.size()];
}

EpisodeLog run_episode(Environment& env, const Policy& policy, DepController& dep,
                       const SwitchConfig& config, std::mt19937_64& rng, ReplayBuffer* buffer) {
    config.validate();
    EpisodeLog log;
    SwitchState sw;
    Eigen::VectorXd obs = env.reset(rng);

    for (int t = 0; t < env.horizon(); ++t) {
        const ControllerTag tag = sw.next(config, rng);
        const bool dep_in_control = tag != ControllerTag::policy;

        Eigen::VectorXd dep_action;
        if (config.background_learning || dep_in_control) {
            dep_action = dep.step(env.dep_sensors());
        }

        Eigen::VectorXd action;
        switch (tag) {
            case ControllerTag::policy:
                action = policy(obs);
                break;
            case ControllerTag::dep:
                action = dep_action;
                break;
            case ControllerTag::avg:
                action = (1.0 - config.w_avg) * policy(obs) + config.w_avg * dep_action;
                break;
        }

        const StepResult res = env.step(action);
        log.steps.push_back({t, obs, action, res.reward, tag});
        log.total_reward += res.reward;
        if (buffer) buffer->push({obs, action, res.reward, res.observation, res.done, tag});
        obs = res.observation;
        if (res.done) break;
    }
    return log;
}

void prefill(Environment& env, DepController& dep, int n_steps, ReplayBuffer& buffer,
             std::mt19937_64& rng) {
    if (n_steps < 0) throw std::invalid_argument("prefill: n_steps must be >= 0");
    int pushed = 0;
    while (pushed < n_steps) {
        Eigen::VectorXd obs = env.reset(rng);
        for (int t = 0; t < env.horizon() && pushed < n_steps; ++t) {
            const Eigen::VectorXd action = dep.step(env.dep_sensors());
            const StepResult res = env.step(action);
            buffer.push({obs, action, res.reward, res.observation, res.done, ControllerTag::dep});
            ++pushed;
            obs = res.observation;
            if (res.done) break;
        }
    }
}

}  // namespace depsim
