#include "depsim/metrics.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

namespace depsim {

namespace {

std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

CoverageGrid::CoverageGrid(int resolution, std::array<double, 2> x_bounds,
                           std::array<double, 2> y_bounds)
    : n_(resolution), xb_(x_bounds), yb_(y_bounds) {
    if (resolution < 2) throw std::invalid_argument("coverage grid: resolution must be >= 2");
    if (xb_[0] >= xb_[1] || yb_[0] >= yb_[1])
        throw std::invalid_argument("coverage grid: invalid bounds");
    occupied_.assign(static_cast<size_t>(n_) * n_, 0);
}

void CoverageGrid::add(double x, double y) {
    ++samples_;
    const double fx = (x - xb_[0]) / (xb_[1] - xb_[0]);
    const double fy = (y - yb_[0]) / (yb_[1] - yb_[0]);
    if (fx < 0.0 || fx >= 1.0 || fy < 0.0 || fy >= 1.0) {
        // the upper bound itself belongs to the last cell
        if (x == xb_[1] || y == yb_[1]) {
            const int i = std::min(static_cast<int>(fx * n_), n_ - 1);
            const int j = std::min(static_cast<int>(fy * n_), n_ - 1);
            if (fx >= 0.0 && fy >= 0.0 && x <= xb_[1] && y <= yb_[1]) {
                occupied_[static_cast<size_t>(i) * n_ + j] = 1;
                return;
            }
        }
        ++out_of_bounds_;
        return;
    }
    const int i = static_cast<int>(fx * n_);
    const int j = static_cast<int>(fy * n_);
    occupied_[static_cast<size_t>(i) * n_ + j] = 1;
}

void CoverageGrid::merge(const CoverageGrid& other) {
    if (other.n_ != n_ || other.xb_ != xb_ || other.yb_ != yb_)
        throw std::invalid_argument("coverage grid: merge layout mismatch");
    for (size_t k = 0; k < occupied_.size(); ++k) occupied_[k] |= other.occupied_[k];
    out_of_bounds_ += other.out_of_bounds_;
    samples_ += other.samples_;
}

double CoverageGrid::coverage() const {
    const auto hits = std::count(occupied_.begin(), occupied_.end(), char{1});
    return static_cast<double>(hits) / (static_cast<double>(n_) * n_);
}

void CoverageGrid::clear() {
    std::fill(occupied_.begin(), occupied_.end(), 0);
    out_of_bounds_ = 0;
    samples_ = 0;
}

CorrelationResult action_correlation(const Eigen::MatrixXd& trajectory) {
    const Eigen::Index T = trajectory.rows(), m = trajectory.cols();
    if (T < 2) throw std::invalid_argument("action_correlation: need at least 2 rows");

    const Eigen::RowVectorXd mean = trajectory.colwise().mean();
    const Eigen::MatrixXd centered = trajectory.rowwise() - mean;
    const Eigen::VectorXd sd = (centered.array().square().colwise().sum() / T).sqrt();

    CorrelationResult res;
    res.matrix = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        if (sd[i] == 0.0) res.zero_variance.push_back(static_cast<int>(i));
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        res.matrix(i, i) = 1.0;
        for (Eigen::Index j = i + 1; j < m; ++j) {
            if (sd[i] == 0.0 || sd[j] == 0.0) continue;
            const double cov = centered.col(i).dot(centered.col(j)) / T;
            const double r = std::clamp(cov / (sd[i] * sd[j]), -1.0, 1.0);
            res.matrix(i, j) = r;
            res.matrix(j, i) = r;
        }
    }
    return res;
}

double psd_slope(const std::vector<double>& sequence) {
    const int n = static_cast<int>(sequence.size());
    if (n < 256) throw std::invalid_argument("psd_slope: need at least 256 samples");

    const double mean = std::accumulate(sequence.begin(), sequence.end(), 0.0) / n;
    bool constant = true;
    for (double x : sequence)
        if (x != sequence.front()) { constant = false; break; }
    if (constant) throw std::invalid_argument("psd_slope: constant sequence");

    std::vector<double> in(sequence);
    for (double& x : in) x -= mean;
    const int nf = n / 2 + 1;
    std::vector<double> spec(2 * static_cast<size_t>(nf));
    {
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            plan = fftw_plan_dft_r2c_1d(n, in.data(),
                                        reinterpret_cast<fftw_complex*>(spec.data()),
                                        FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(plan);
        }
    }

    // central two decades of the available frequency range
    const double log_f_min = std::log10(1.0 / n);
    const double log_f_max = std::log10(0.5);
    const double span = log_f_max - log_f_min;
    const double fit_span = std::min(2.0, span);
    const double lo = log_f_min + (span - fit_span) / 2.0;
    const double hi = lo + fit_span;

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int k = 1; k < nf; ++k) {
        const double f = static_cast<double>(k) / n;
        const double lf = std::log10(f);
        if (lf < lo || lf > hi) continue;
        const double re = spec[2 * k], im = spec[2 * k + 1];
        const double power = re * re + im * im;
        if (power <= 0.0) continue;
        const double lp = std::log10(power);
        sx += lf; sy += lp; sxx += lf * lf; sxy += lf * lp;
        ++count;
    }
    if (count < 8) throw std::invalid_argument("psd_slope: too few spectral bins in fit range");
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return -slope;
}

double occupancy_entropy(const std::vector<std::array<double, 2>>& samples, int bins_per_dim,
                         std::array<double, 2> x_bounds, std::array<double, 2> y_bounds) {
    if (bins_per_dim < 2) throw std::invalid_argument("occupancy_entropy: bins must be >= 2");
    if (samples.empty()) throw std::invalid_argument("occupancy_entropy: empty sample set");

    std::vector<std::int64_t> hist(static_cast<size_t>(bins_per_dim) * bins_per_dim, 0);
    std::int64_t total = 0;
    for (const auto& s : samples) {
        const double fx = (s[0] - x_bounds[0]) / (x_bounds[1] - x_bounds[0]);
        const double fy = (s[1] - y_bounds[0]) / (y_bounds[1] - y_bounds[0]);
        if (fx < 0.0 || fy < 0.0 || fx > 1.0 || fy > 1.0) continue;
        const int i = std::min(static_cast<int>(fx * bins_per_dim), bins_per_dim - 1);
        const int j = std::min(static_cast<int>(fy * bins_per_dim), bins_per_dim - 1);
        ++hist[static_cast<size_t>(i) * bins_per_dim + j];
        ++total;
    }
    if (total == 0) return 0.0;

    double entropy = 0.0;
    for (std::int64_t c : hist) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / total;
        entropy -= p * std::log(p);
    }
    return entropy;
}

}  // namespace depsim
