#include "govpulse/amount.hpp"

#include <algorithm>
#include <cmath>

namespace govpulse {

std::optional<TokenAmount> TokenAmount::parse(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    const auto dot = text.find('.');
    const std::string_view whole_part = text.substr(0, dot);
    const std::string_view frac_part = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
    if (whole_part.empty() && frac_part.empty()) return std::nullopt;
    if (dot != std::string_view::npos && frac_part.empty()) return std::nullopt;
    if (frac_part.size() > static_cast<std::size_t>(kScaleDigits)) return std::nullopt;
    // 2^127 ~ 1.7e38 leaves 20 integer digits above the 18 fractional ones
    if (whole_part.size() > 20) return std::nullopt;

    __int128 units = 0;
    for (char c : whole_part) {
        if (c < '0' || c > '9') return std::nullopt;
        units = units * 10 + (c - '0');
    }
    __int128 frac = 0;
    for (char c : frac_part) {
        if (c < '0' || c > '9') return std::nullopt;
        frac = frac * 10 + (c - '0');
    }
    for (std::size_t i = frac_part.size(); i < static_cast<std::size_t>(kScaleDigits); ++i) frac *= 10;
    units = units * kScale + frac;
    return from_units(negative ? -units : units);
}

TokenAmount TokenAmount::from_double(double value, int decimals) {
    decimals = std::clamp(decimals, 0, kScaleDigits);
    const double step = std::pow(10.0, decimals);
    const auto rounded = static_cast<__int128>(std::llround(value * step));
    __int128 factor = 1;
    for (int i = decimals; i < kScaleDigits; ++i) factor *= 10;
    return from_units(rounded * factor);
}

double TokenAmount::to_double() const {
    // split keeps both halves exactly representable before the final divide
    const __int128 whole = units_ / kScale;
    const __int128 frac = units_ % kScale;
    return static_cast<double>(whole) + static_cast<double>(frac) / 1e18;
}

std::string TokenAmount::to_string() const {
    __int128 v = units_ < 0 ? -units_ : units_;
    __int128 whole = v / kScale;
    __int128 frac = v % kScale;

    std::string whole_text;
    do {
        whole_text.push_back(static_cast<char>('0' + static_cast<int>(whole % 10)));
        whole /= 10;
    } while (whole > 0);
    std::reverse(whole_text.begin(), whole_text.end());

    std::string out = units_ < 0 ? "-" + whole_text : whole_text;
    if (frac != 0) {
        std::string frac_text(kScaleDigits, '0');
        for (int i = kScaleDigits - 1; i >= 0; --i) {
            frac_text[static_cast<std::size_t>(i)] = static_cast<char>('0' + static_cast<int>(frac % 10));
            frac /= 10;
        }
        while (!frac_text.empty() && frac_text.back() == '0') frac_text.pop_back();
        out += '.';
        out += frac_text;
    }
    return out;
}

}  // namespace govpulse
