#pragma once

#include <Eigen/Core>
#include <stdexcept>

namespace depsim {

// Group-wise mean of an inflated action vector: a_k = (1/n) sum_j a^_{j + n(k-1)}.
inline Eigen::VectorXd collapse_actions(const Eigen::VectorXd& inflated, int n) {
    if (n < 1) throw std::invalid_argument("collapse_actions: n must be >= 1");
    if (inflated.size() % n != 0)
        throw std::invalid_argument("collapse_actions: length not divisible by n");
    const Eigen::Index m = inflated.size() / n;
    Eigen::VectorXd out(m);
    for (Eigen::Index k = 0; k < m; ++k) out[k] = inflated.segment(k * n, n).mean();
    return out;
}

// Replicates each native sensor channel n times, matching the action grouping.
inline Eigen::VectorXd inflate_sensors(const Eigen::VectorXd& native, int n) {
    if (n < 1) throw std::invalid_argument("inflate_sensors: n must be >= 1");
    if (n == 1) return native;
    Eigen::VectorXd out(native.size() * n);
    for (Eigen::Index k = 0; k < native.size(); ++k)
        out.segment(k * n, n).setConstant(native[k]);
    return out;
}

// Variance of the collapsed action: sigma^2/n + (1 - 1/n) * rho * sigma^2.
inline double predicted_effective_variance(double sigma2, int n, double mean_corr) {
    if (sigma2 < 0) throw std::invalid_argument("variance must be >= 0");
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    return sigma2 / n + (1.0 - 1.0 / n) * mean_corr * sigma2;
}

}  // namespace depsim
