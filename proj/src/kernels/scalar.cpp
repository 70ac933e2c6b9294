#include "govpulse/kernels.hpp"

#include <cmath>

namespace govpulse::kernels {
namespace {

double sum_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += v;
    return acc;
}

double dot_scalar(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double pairwise_abs_diff_scalar(std::span<const double> x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) acc += std::fabs(x[i] - x[j]);
    }
    return 2.0 * acc;
}

double sum_sq_dev_scalar(std::span<const double> x, double center) {
    double acc = 0.0;
    for (double v : x) {
        const double d = v - center;
        acc += d * d;
    }
    return acc;
}

CrossMoments cross_moments_scalar(std::span<const double> x, std::span<const double> y, double mx,
                                  double my) {
    CrossMoments m;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        m.sxx += dx * dx;
        m.sxy += dx * dy;
        m.syy += dy * dy;
    }
    return m;
}

void residuals_scalar(std::span<const double> y, std::span<const double> x, double b0, double b1,
                      std::span<double> out) {
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i] - (b0 + b1 * x[i]);
}

constexpr KernelTable kScalar{
    Isa::scalar,          &sum_scalar,           &dot_scalar,       &pairwise_abs_diff_scalar,
    &sum_sq_dev_scalar,   &cross_moments_scalar, &residuals_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace govpulse::kernels
