#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace depsim {

struct OUParams {
    double theta = 0.1;  // drift strength per step (dt absorbed)
    double sigma = 0.07;
    double mu = 0.0;
    double x0 = 0.0;
};

struct ColoredNoiseParams {
    double beta = 1.0;    // spectral exponent, PSD ~ 1/f^beta
    double sigma = 1.0;
    int horizon = 1000;   // synthesized chunk length in steps
};

// Stateful Ornstein-Uhlenbeck generator. The internal state is unclipped;
// only the emitted action is clipped to [-1, 1].
class OUNoise {
public:
    OUNoise(OUParams params, int dims, std::uint64_t seed);

    Eigen::VectorXd sample();
    const Eigen::VectorXd& state() const { return state_; }
    void reset();

private:
    OUParams params_;
    Eigen::VectorXd state_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

// 1/f^beta noise via spectral synthesis: Fourier magnitudes f^(-beta/2) with
// random Gaussian coefficients, inverted with an FFT. Each dimension is an
// independent sequence. Chunks are regenerated when the horizon is exhausted.
class ColoredNoise {
public:
    ColoredNoise(ColoredNoiseParams params, int dims, std::uint64_t seed);

    Eigen::VectorXd sample();
    void reset();

    // One full unclipped, unit-variance chunk for a single dimension.
    static std::vector<double> synthesize(double beta, int horizon, std::mt19937_64& rng);

private:
    void regenerate();

    ColoredNoiseParams params_;
    int dims_;
    std::mt19937_64 rng_;
    std::vector<std::vector<double>> chunks_;  // per dimension
    int cursor_ = 0;
};

// I.i.d. N(0, sigma^2) clipped to [-1, 1].
class WhiteNoise {
public:
    WhiteNoise(double sigma, int dims, std::uint64_t seed);

    Eigen::VectorXd sample();
    void reset() {}

private:
    double sigma_;
    int dims_;
    std::mt19937_64 rng_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace depsim
