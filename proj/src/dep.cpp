#include "depsim/dep.hpp"

#include <algorithm>
#include <cmath>

namespace depsim {

DepParams DepParams::arm_preset() {
    DepParams p;
    p.kappa = 1000.0;
    p.tau = 80.0;
    p.time_dist = 60;
    p.buffer_size = 600;
    p.bias_rate = 2e-5;
    p.s4avg = 6;
    p.c_force = 3e-4;
    return p;
}

DepParams DepParams::locomotion_preset() {
    DepParams p;
    p.kappa = 20.0;
    p.tau = 8.0;
    p.time_dist = 5;
    p.buffer_size = 90;
    p.bias_rate = 0.03;
    p.s4avg = 1;
    p.c_force = 3e-4;
    return p;
}

void DepParams::validate() const {
    if (kappa <= 0) throw std::invalid_argument("DEP: kappa must be > 0");
    if (tau < 1) throw std::invalid_argument("DEP: tau must be >= 1");
    if (time_dist < 1 || time_dist >= buffer_size)
        throw std::invalid_argument("DEP: require 1 <= time_dist < buffer_size");
    if (eps <= 0) throw std::invalid_argument("DEP: eps must be > 0");
}

ChannelNormalizer::ChannelNormalizer(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi)
    : lo_(lo), hi_(hi), calibrated_(true) {
    if (lo.size() != hi.size()) throw std::invalid_argument("normalizer: size mismatch");
    if (((hi - lo).array() <= 0).any())
        throw std::invalid_argument("normalizer: hi must exceed lo per channel");
}

Eigen::VectorXd ChannelNormalizer::normalize(const Eigen::VectorXd& x) const {
    if (!calibrated_) throw std::logic_error("normalizer: not calibrated");
    if (x.size() != lo_.size()) throw std::invalid_argument("normalizer: dimension mismatch");
    return 2.0 * (x - lo_).cwiseQuotient(hi_ - lo_) - Eigen::VectorXd::Ones(x.size());
}

Eigen::VectorXd dep_sensor(const Eigen::VectorXd& lengths, const Eigen::VectorXd& forces,
                           const ChannelNormalizer& length_norm,
                           const ChannelNormalizer& force_norm, double c_force) {
    return length_norm.normalize(lengths) + c_force * force_norm.normalize(forces);
}

Eigen::MatrixXd normalize_C(const Eigen::MatrixXd& C, double eps) {
    Eigen::MatrixXd out(C.rows(), C.cols());
    for (Eigen::Index j = 0; j < C.cols(); ++j) {
        const double scale = C.col(j).cwiseAbs().maxCoeff() + eps;
        out.col(j) = C.col(j) / scale;
    }
    return out;
}

DepController::DepController(int num_actions, int num_sensors, DepParams params)
    : params_(params),
      m_(num_actions),
      n_(num_sensors),
      C_(Eigen::MatrixXd::Zero(num_actions, num_sensors)),
      h_(Eigen::VectorXd::Zero(num_actions)),
      last_action_(Eigen::VectorXd::Zero(num_actions)) {
    params_.validate();
    if (num_actions < 1 || num_sensors < 1)
        throw std::invalid_argument("DEP: need at least 1 action and 1 sensor");
}

Eigen::VectorXd DepController::smooth(const Eigen::VectorXd& raw) {
    const size_t window = std::max(params_.s4avg, 1);
    raw_window_.push_back(raw);
    if (raw_window_.size() > window) raw_window_.pop_front();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(raw.size());
    for (const auto& v : raw_window_) mean += v;
    return mean / static_cast<double>(raw_window_.size());
}

void DepController::update(const Eigen::VectorXd& raw_sensors) {
    if (raw_sensors.size() != n_)
        throw std::invalid_argument("DEP: sensor dimension mismatch");

    history_.push_back(smooth(raw_sensors));
    if (history_.size() > static_cast<size_t>(params_.buffer_size)) history_.pop_front();

    if (warmed_up()) {
        const size_t t = history_.size() - 1;
        const Eigen::VectorXd vel_now = history_[t] - history_[t - 1];
        const Eigen::VectorXd vel_lag =
            history_[t - params_.time_dist] - history_[t - params_.time_dist - 1];
        C_ += (1.0 / params_.tau) * (params_.f_sign * vel_now * vel_lag.transpose() - C_);
    }

    h_ = (h_ - params_.bias_rate * last_action_).cwiseMax(-1.0).cwiseMin(1.0);
}

bool DepController::warmed_up() const {
    return history_.size() >= static_cast<size_t>(params_.time_dist) + 2;
}

Eigen::VectorXd DepController::action() {
    if (history_.empty()) return Eigen::VectorXd::Zero(m_);
    const Eigen::VectorXd z = params_.kappa * (normalized_C() * history_.back()) + h_;
    last_action_ = z.array().tanh();
    return last_action_;
}

Eigen::VectorXd DepController::step(const Eigen::VectorXd& raw_sensors) {
    update(raw_sensors);
    return action();
}

void DepController::reset() {
    C_.setZero();
    h_.setZero();
    last_action_.setZero();
    raw_window_.clear();
    history_.clear();
}

SimplifiedDep1d::SimplifiedDep1d(int time_dist, double kappa)
    : time_dist_(time_dist), kappa_(kappa) {
    if (time_dist < 1) throw std::invalid_argument("simplified DEP: time_dist must be >= 1");
}

double SimplifiedDep1d::step(double sensor) {
    history_.push_back(sensor);
    const size_t needed = static_cast<size_t>(time_dist_) + 2;
    if (history_.size() > needed) history_.pop_front();
    if (history_.size() < needed) return 0.0;

    const size_t t = history_.size() - 1;
    const double vel_now = history_[t] - history_[t - 1];
    const double vel_lag = history_[t - time_dist_] - history_[t - time_dist_ - 1];
    const double c = std::tanh(kappa_ * vel_now * vel_lag);
    return std::clamp(c * sensor, -1.0, 1.0);
}

}  // namespace depsim
