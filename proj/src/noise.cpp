#include "depsim/noise.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace depsim {

namespace {

// FFTW plan creation is not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

double clip1(double x) { return std::clamp(x, -1.0, 1.0); }

}  // namespace

OUNoise::OUNoise(OUParams params, int dims, std::uint64_t seed)
    : params_(params), state_(Eigen::VectorXd::Constant(dims, params.x0)), rng_(seed) {
    if (params_.theta < 0 || params_.sigma < 0)
        throw std::invalid_argument("OU: theta and sigma must be >= 0");
}

Eigen::VectorXd OUNoise::sample() {
    Eigen::VectorXd out(state_.size());
    for (Eigen::Index i = 0; i < state_.size(); ++i) {
        state_[i] += params_.theta * (params_.mu - state_[i]) + params_.sigma * normal_(rng_);
        out[i] = clip1(state_[i]);
    }
    return out;
}

void OUNoise::reset() { state_.setConstant(params_.x0); }

ColoredNoise::ColoredNoise(ColoredNoiseParams params, int dims, std::uint64_t seed)
    : params_(params), dims_(dims), rng_(seed) {
    if (params_.beta < 0) throw std::invalid_argument("colored noise: beta must be >= 0");
    if (params_.sigma < 0) throw std::invalid_argument("colored noise: sigma must be >= 0");
    if (params_.horizon < 2) throw std::invalid_argument("colored noise: horizon must be >= 2");
    regenerate();
}

std::vector<double> ColoredNoise::synthesize(double beta, int horizon, std::mt19937_64& rng) {
    const int n = horizon;
    const int nf = n / 2 + 1;
    std::vector<double> spec(2 * static_cast<size_t>(nf), 0.0);
    std::normal_distribution<double> normal(0.0, 1.0);

    // zero-mean: DC component stays 0
    for (int k = 1; k < nf; ++k) {
        const double f = static_cast<double>(k) / n;
        const double mag = std::pow(f, -beta / 2.0);
        spec[2 * k] = mag * normal(rng);
        // Nyquist bin is real for even n
        spec[2 * k + 1] = (2 * k == n) ? 0.0 : mag * normal(rng);
    }

    std::vector<double> out(n);
    {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            plan = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(spec.data()),
                                        out.data(), FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan);
        }
    }

    // standardize to unit variance
    const double mean = std::accumulate(out.begin(), out.end(), 0.0) / n;
    double var = 0.0;
    for (double x : out) var += (x - mean) * (x - mean);
    var /= n;
    const double inv = (var > 0.0) ? 1.0 / std::sqrt(var) : 0.0;
    for (double& x : out) x = (x - mean) * inv;
    return out;
}

void ColoredNoise::regenerate() {
    chunks_.assign(dims_, {});
    for (int d = 0; d < dims_; ++d)
        chunks_[d] = synthesize(params_.beta, params_.horizon, rng_);
    cursor_ = 0;
}

Eigen::VectorXd ColoredNoise::sample() {
    if (cursor_ >= params_.horizon) regenerate();
    Eigen::VectorXd out(dims_);
    for (int d = 0; d < dims_; ++d) out[d] = clip1(params_.sigma * chunks_[d][cursor_]);
    ++cursor_;
    return out;
}

void ColoredNoise::reset() { regenerate(); }

WhiteNoise::WhiteNoise(double sigma, int dims, std::uint64_t seed)
    : sigma_(sigma), dims_(dims), rng_(seed) {
    if (sigma < 0) throw std::invalid_argument("white noise: sigma must be >= 0");
}

Eigen::VectorXd WhiteNoise::sample() {
    Eigen::VectorXd out(dims_);
    for (int d = 0; d < dims_; ++d) out[d] = clip1(sigma_ * normal_(rng_));
    return out;
}

}  // namespace depsim
