#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace govpulse {

/// Calendar day in UTC, stored as days since 1970-01-01.
class Date {
public:
    constexpr Date() = default;
    constexpr explicit Date(std::int32_t days_since_epoch) : days_(days_since_epoch) {}

    static Date from_unix_seconds(std::int64_t seconds);
    /// Strict `YYYY-MM-DD`.
    static std::optional<Date> parse(std::string_view text);

    [[nodiscard]] constexpr std::int32_t days() const { return days_; }
    [[nodiscard]] std::int64_t unix_seconds() const { return static_cast<std::int64_t>(days_) * 86400; }
    [[nodiscard]] std::string to_string() const;

    constexpr Date operator+(std::int32_t n) const { return Date(days_ + n); }
    constexpr std::int32_t operator-(Date other) const { return days_ - other.days_; }
    friend constexpr auto operator<=>(Date, Date) = default;

private:
    std::int32_t days_ = 0;
};

/// Unix seconds from either a plain integer or ISO-8601 UTC
/// (`YYYY-MM-DDTHH:MM:SS` with optional `Z` or `+00:00`; a space may
/// replace the `T`; a bare date means midnight).
std::optional<std::int64_t> parse_timestamp(std::string_view text);

/// `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(std::int64_t unix_seconds);

}  // namespace govpulse
