#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace govpulse::synthgov {

double gini_oracle(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n < 2) return 0.0;
    std::vector<long double> x(weights.begin(), weights.end());
    std::sort(x.begin(), x.end());
    long double total = 0, ranked = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += x[i];
        ranked += static_cast<long double>(i + 1) * x[i];
    }
    if (total == 0) return 0.0;
    const long double nn = static_cast<long double>(n);
    return static_cast<double>(2 * ranked / (nn * total) - (nn + 1) / nn);
}

double gini_pairwise_oracle(std::span<const double> weights) {
    const std::size_t n = weights.size();
    if (n < 2) return 0.0;
    long double diff = 0, total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        total += weights[i];
        for (std::size_t j = 0; j < n; ++j) diff += std::fabs(static_cast<long double>(weights[i]) - weights[j]);
    }
    if (total == 0) return 0.0;
    // sum |vi - vj| / (2 n^2 mean) = sum |vi - vj| / (2 n total)
    return static_cast<double>(diff / (2 * static_cast<long double>(n) * total));
}

std::pair<double, double> ols_oracle(std::span<const double> y, std::span<const double> x) {
    if (x.size() != y.size() || x.empty()) throw std::invalid_argument("ols_oracle: bad sizes");
    long double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= x.size();
    my /= y.size();
    long double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx == 0) throw std::invalid_argument("ols_oracle: var(x) = 0");
    const long double b1 = sxy / sxx;
    return {static_cast<double>(my - b1 * mx), static_cast<double>(b1)};
}

}  // namespace govpulse::synthgov
