#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "govpulse/date.hpp"

namespace govpulse {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

/// Date-ordered observations; NaN marks a missing value.
struct Series {
    std::vector<Date> dates;
    std::vector<double> values;

    [[nodiscard]] std::size_t size() const { return dates.size(); }
    [[nodiscard]] bool empty() const { return dates.empty(); }
    void push_back(Date d, double v) {
        dates.push_back(d);
        values.push_back(v);
    }

    friend bool operator==(const Series& a, const Series& b) {
        if (a.dates != b.dates || a.values.size() != b.values.size()) return false;
        for (std::size_t i = 0; i < a.values.size(); ++i) {
            const bool ma = is_missing(a.values[i]);
            if (ma != is_missing(b.values[i])) return false;
            if (!ma && a.values[i] != b.values[i]) return false;
        }
        return true;
    }
};

}  // namespace govpulse
