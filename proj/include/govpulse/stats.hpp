#pragma once

#include <array>
#include <span>
#include <string>

namespace govpulse::stats {

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation
/// (modified Lentz), relative error around 1e-13 or better.
double incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x) and its complement Q(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

/// Two-sided p-value of a t statistic with `dof` degrees of freedom.
double t_two_sided_p(double t, double dof);

/// Upper tail of F(d1, d2).
double f_survival(double f, double d1, double d2);

/// Upper tail of chi-square with k degrees of freedom.
double chi2_survival(double x, double k);

/// Significance cut-offs for *, **, *** (loosest first).
struct StarThresholds {
    std::array<double, 3> levels{0.10, 0.05, 0.01};
};

/// "", "*", "**" or "***": one star per threshold the p-value is at or below.
std::string stars(double p, const StarThresholds& thresholds = {});

struct SummaryStats {
    double mean = 0.0;
    double median = 0.0;
    double maximum = 0.0;
    double minimum = 0.0;
    double std = 0.0;  ///< sample (n - 1) standard deviation; 0 when n < 2
    std::size_t n = 0;
};

/// Throws DomainError on empty input.
SummaryStats summarize(std::span<const double> values);

/// Sample standard deviation with n - 1 in the denominator.
double sample_std(std::span<const double> values);

}  // namespace govpulse::stats
