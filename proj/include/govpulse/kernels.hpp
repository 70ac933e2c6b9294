#pragma once

// Data-parallel reductions behind the statistics modules.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2 (x86-64) or NEON (aarch64) variant. The variant is
// chosen once per process from the CPU's capabilities; GOVPULSE_SIMD=scalar
// forces the reference path. Within one variant the reduction order is fixed,
// so results are reproducible run to run.

#include <span>
#include <string_view>

namespace govpulse::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

/// Centered second moments of a paired sample about given means.
struct CrossMoments {
    double sxx = 0.0;  ///< sum (x - mx)^2
    double sxy = 0.0;  ///< sum (x - mx)(y - my)
    double syy = 0.0;  ///< sum (y - my)^2
};

/// Function table for one instruction-set variant.
struct KernelTable {
    Isa isa;
    double (*sum)(std::span<const double> x);
    double (*dot)(std::span<const double> x, std::span<const double> y);
    /// sum over all ordered pairs (i, j) of |x_i - x_j|
    double (*pairwise_abs_diff)(std::span<const double> x);
    /// sum (x_i - center)^2
    double (*sum_sq_dev)(std::span<const double> x, double center);
    CrossMoments (*cross_moments)(std::span<const double> x, std::span<const double> y, double mx,
                                  double my);
    /// out_i = y_i - (b0 + b1 * x_i)
    void (*residuals)(std::span<const double> y, std::span<const double> x, double b0, double b1,
                      std::span<double> out);
};

const KernelTable& scalar_table();

/// nullptr when the variant was not compiled for this target.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// True when the variant is compiled in and the running CPU supports it.
bool is_supported(Isa isa);

/// Table selected for this process (see file comment).
const KernelTable& active();

/// Overrides the process-wide selection; throws DomainError if unsupported.
void select(Isa isa);

// Convenience forwarders to the active table.
inline double sum(std::span<const double> x) { return active().sum(x); }
inline double dot(std::span<const double> x, std::span<const double> y) { return active().dot(x, y); }
inline double pairwise_abs_diff(std::span<const double> x) { return active().pairwise_abs_diff(x); }
inline double sum_sq_dev(std::span<const double> x, double center) {
    return active().sum_sq_dev(x, center);
}
inline CrossMoments cross_moments(std::span<const double> x, std::span<const double> y, double mx,
                                  double my) {
    return active().cross_moments(x, y, mx, my);
}
inline void residuals(std::span<const double> y, std::span<const double> x, double b0, double b1,
                      std::span<double> out) {
    active().residuals(y, x, b0, b1, out);
}

}  // namespace govpulse::kernels
