#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace govpulse {

/// Token quantity held as a signed count of 1e-18 units.
///
/// Vote weights are parsed from their decimal text without going through
/// binary floating point, so sums over polls and voters are exact and do
/// not depend on summation order. Conversion to double happens only at the
/// statistics boundary via to_double().
class TokenAmount {
public:
    static constexpr int kScaleDigits = 18;
    static constexpr __int128 kScale = static_cast<__int128>(1'000'000'000'000'000'000LL);

    constexpr TokenAmount() = default;

    static constexpr TokenAmount from_units(__int128 units) {
        TokenAmount a;
        a.units_ = units;
        return a;
    }
    static constexpr TokenAmount whole(std::int64_t tokens) {
        return from_units(static_cast<__int128>(tokens) * kScale);
    }

    /// Parses `[-]digits[.digits]`; at most 18 fractional digits, no exponent.
    static std::optional<TokenAmount> parse(std::string_view text);

    /// Nearest amount to a double, rounded to `decimals` fractional digits.
    static TokenAmount from_double(double value, int decimals = 6);

    [[nodiscard]] constexpr __int128 units() const { return units_; }
    [[nodiscard]] double to_double() const;

    /// Shortest exact decimal text: no trailing zeros, no trailing point.
    [[nodiscard]] std::string to_string() const;

    [[nodiscard]] constexpr bool is_zero() const { return units_ == 0; }
    [[nodiscard]] constexpr bool is_negative() const { return units_ < 0; }

    constexpr TokenAmount& operator+=(TokenAmount other) {
        units_ += other.units_;
        return *this;
    }
    constexpr TokenAmount& operator-=(TokenAmount other) {
        units_ -= other.units_;
        return *this;
    }
    friend constexpr TokenAmount operator+(TokenAmount a, TokenAmount b) { return a += b; }
    friend constexpr TokenAmount operator-(TokenAmount a, TokenAmount b) { return a -= b; }
    friend constexpr auto operator<=>(TokenAmount, TokenAmount) = default;

private:
    __int128 units_ = 0;
};

}  // namespace govpulse
