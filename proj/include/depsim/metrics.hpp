#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace depsim {

// Binary occupancy grid over a 2-D box. Cells are half-open so bin-edge
// samples land in the lower-index cell; out-of-bounds samples are counted
// but never occupy a cell.
class CoverageGrid {
public:
    CoverageGrid(int resolution, std::array<double, 2> x_bounds, std::array<double, 2> y_bounds);

    void add(double x, double y);
    void merge(const CoverageGrid& other);  // elementwise OR

    double coverage() const;  // occupied cells / N^2
    int resolution() const { return n_; }
    std::int64_t out_of_bounds() const { return out_of_bounds_; }
    std::int64_t samples_seen() const { return samples_; }
    void clear();

private:
    int n_;
    std::array<double, 2> xb_, yb_;
    std::vector<char> occupied_;
    std::int64_t out_of_bounds_ = 0;
    std::int64_t samples_ = 0;
};

struct CorrelationResult {
    Eigen::MatrixXd matrix;               // symmetric, unit diagonal
    std::vector<int> zero_variance;       // channels reported as 0 rows/cols
};

// Pearson correlation across the columns of a T x m trajectory.
CorrelationResult action_correlation(const Eigen::MatrixXd& trajectory);

// Periodogram slope over the central two frequency decades, negated to the
// beta convention of PSD ~ 1/f^beta.
double psd_slope(const std::vector<double>& sequence);

// Shannon entropy (nats) of the normalized 2-D histogram of the samples.
double occupancy_entropy(const std::vector<std::array<double, 2>>& samples, int bins_per_dim,
                         std::array<double, 2> x_bounds, std::array<double, 2> y_bounds);

}  // namespace depsim
