// aarch64 only. NEON is architecturally guaranteed there, so no runtime probe.

#include "govpulse/kernels.hpp"

#include <arm_neon.h>

#include <cmath>

namespace govpulse::kernels {
namespace {

double sum_neon(std::span<const double> x) {
    const std::size_t n = x.size();
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 = vaddq_f64(a0, vld1q_f64(x.data() + i));
        a1 = vaddq_f64(a1, vld1q_f64(x.data() + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(a0, a1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double dot_neon(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    float64x2_t a0 = vdupq_n_f64(0.0);
    float64x2_t a1 = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        a0 = vfmaq_f64(a0, vld1q_f64(x.data() + i), vld1q_f64(y.data() + i));
        a1 = vfmaq_f64(a1, vld1q_f64(x.data() + i + 2), vld1q_f64(y.data() + i + 2));
    }
    double acc = vaddvq_f64(vaddq_f64(a0, a1));
    for (; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

double pairwise_abs_diff_neon(std::span<const double> x) {
    const std::size_t n = x.size();
    float64x2_t acc = vdupq_n_f64(0.0);
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t xi = vdupq_n_f64(x[i]);
        std::size_t j = i + 1;
        for (; j + 2 <= n; j += 2) acc = vaddq_f64(acc, vabdq_f64(xi, vld1q_f64(x.data() + j)));
        for (; j < n; ++j) tail += std::fabs(x[i] - x[j]);
    }
    return 2.0 * (vaddvq_f64(acc) + tail);
}

double sum_sq_dev_neon(std::span<const double> x, double center) {
    const std::size_t n = x.size();
    const float64x2_t c = vdupq_n_f64(center);
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(x.data() + i), c);
        acc = vfmaq_f64(acc, d, d);
    }
    double out = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = x[i] - center;
        out += d * d;
    }
    return out;
}

CrossMoments cross_moments_neon(std::span<const double> x, std::span<const double> y, double mx,
                                double my) {
    const std::size_t n = x.size();
    const float64x2_t vmx = vdupq_n_f64(mx);
    const float64x2_t vmy = vdupq_n_f64(my);
    float64x2_t sxx = vdupq_n_f64(0.0);
    float64x2_t sxy = vdupq_n_f64(0.0);
    float64x2_t syy = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t dx = vsubq_f64(vld1q_f64(x.data() + i), vmx);
        const float64x2_t dy = vsubq_f64(vld1q_f64(y.data() + i), vmy);
        sxx = vfmaq_f64(sxx, dx, dx);
        sxy = vfmaq_f64(sxy, dx, dy);
        syy = vfmaq_f64(syy, dy, dy);
    }
    CrossMoments m{vaddvq_f64(sxx), vaddvq_f64(sxy), vaddvq_f64(syy)};
    for (; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        m.sxx += dx * dx;
        m.sxy += dx * dy;
        m.syy += dy * dy;
    }
    return m;
}

void residuals_neon(std::span<const double> y, std::span<const double> x, double b0, double b1,
                    std::span<double> out) {
    const std::size_t n = y.size();
    const float64x2_t vb0 = vdupq_n_f64(b0);
    const float64x2_t vb1 = vdupq_n_f64(b1);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t fit = vfmaq_f64(vb0, vb1, vld1q_f64(x.data() + i));
        vst1q_f64(out.data() + i, vsubq_f64(vld1q_f64(y.data() + i), fit));
    }
    for (; i < n; ++i) out[i] = y[i] - (b0 + b1 * x[i]);
}

constexpr KernelTable kNeon{
    Isa::neon,        &sum_neon,           &dot_neon,       &pairwise_abs_diff_neon,
    &sum_sq_dev_neon, &cross_moments_neon, &residuals_neon,
};

}  // namespace

const KernelTable* neon_table() { return &kNeon; }

}  // namespace govpulse::kernels
