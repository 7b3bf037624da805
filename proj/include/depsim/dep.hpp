#pragma once

#include <Eigen/Core>
#include <deque>
#include <stdexcept>

namespace depsim {

struct DepParams {
    double kappa = 1000.0;   // amplification constant
    double tau = 80.0;       // update time scale (steps)
    int time_dist = 60;      // lag between the two velocity samples (steps)
    int buffer_size = 600;   // sensor history capacity (steps)
    double bias_rate = 2e-5;
    int s4avg = 6;           // sensor smoothing window, <= 1 disables
    double eps = 1e-5;       // normalization regularizer
    double c_force = 3e-4;   // force sensor scale in the fused DEP sensor
    double f_sign = 1.0;     // +1 identity inverse model, -1 for muscles

    // Reaching preset: kappa 1000, tau 80, buffer 600, bias 2e-5, s4avg 6, lag 60.
    static DepParams arm_preset();
    // Locomotion preset: kappa 20, tau 8, buffer 90, bias 0.03, s4avg 1, lag 5.
    static DepParams locomotion_preset();

    void validate() const;
};

// Per-channel min/max affine map onto [-1, 1]; values outside the calibrated
// range extrapolate linearly.
class ChannelNormalizer {
public:
    ChannelNormalizer() = default;
    ChannelNormalizer(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);

    bool calibrated() const { return calibrated_; }
    Eigen::VectorXd normalize(const Eigen::VectorXd& x) const;

private:
    Eigen::VectorXd lo_, hi_;
    bool calibrated_ = false;
};

// Fused muscle sensor: s = l~ + c_force * f~, both channels normalized to [-1, 1].
Eigen::VectorXd dep_sensor(const Eigen::VectorXd& lengths, const Eigen::VectorXd& forces,
                           const ChannelNormalizer& length_norm,
                           const ChannelNormalizer& force_norm, double c_force);

// Column-wise max normalization: C~_ij = C_ij / (max_i |C_ij| + eps).
Eigen::MatrixXd normalize_C(const Eigen::MatrixXd& C, double eps);

// DEP controller: a = tanh(kappa * C~ s + h), with C tracking the lagged
// velocity correlation of its sensors and h a slow anti-bias term.
class DepController {
public:
    DepController(int num_actions, int num_sensors, DepParams params);

    // Feeds one raw sensor sample: smoothing, history append, C and bias
    // update. A no-op on C until the history can supply both velocities.
    void update(const Eigen::VectorXd& raw_sensors);

    // Action for the most recent (smoothed) sensor sample.
    Eigen::VectorXd action();

    // update + action; records the emitted action for the bias dynamics.
    Eigen::VectorXd step(const Eigen::VectorXd& raw_sensors);

    void reset();

    bool warmed_up() const;
    const Eigen::MatrixXd& raw_C() const { return C_; }
    Eigen::MatrixXd normalized_C() const { return normalize_C(C_, params_.eps); }
    const Eigen::VectorXd& bias() const { return h_; }
    const DepParams& params() const { return params_; }
    int num_actions() const { return m_; }
    int num_sensors() const { return n_; }

private:
    Eigen::VectorXd smooth(const Eigen::VectorXd& raw);

    DepParams params_;
    int m_, n_;
    Eigen::MatrixXd C_;
    Eigen::VectorXd h_;
    Eigen::VectorXd last_action_;
    std::deque<Eigen::VectorXd> raw_window_;   // for s4avg smoothing
    std::deque<Eigen::VectorXd> history_;      // smoothed sensors, capacity buffer_size
};

// The 1-sensor rule: a_t = clip(tanh(kappa * sdot_t * sdot_{t-lag}) * s_t).
// Emits zero during warm-up.
class SimplifiedDep1d {
public:
    SimplifiedDep1d(int time_dist, double kappa);

    double step(double sensor);
    void reset() { history_.clear(); }

private:
    int time_dist_;
    double kappa_;
    std::deque<double> history_;
};

}  // namespace depsim
