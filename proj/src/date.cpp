#include "govpulse/date.hpp"

#include <charconv>

#include <fmt/format.h>

namespace govpulse {
namespace {

using namespace std::chrono;

bool parse_int(std::string_view s, int& out) {
    if (s.empty()) return false;
    for (char c : s) {
        if (c < '0' || c > '9') return false;
    }
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && ptr == s.data() + s.size();
}

std::optional<sys_days> parse_ymd(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y = 0, m = 0, d = 0;
    if (!parse_int(s.substr(0, 4), y) || !parse_int(s.substr(5, 2), m) || !parse_int(s.substr(8, 2), d)) {
        return std::nullopt;
    }
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

}  // namespace

Date Date::from_unix_seconds(std::int64_t seconds) {
    const auto days = floor<std::chrono::days>(sys_seconds{std::chrono::seconds{seconds}});
    return Date(static_cast<std::int32_t>(days.time_since_epoch().count()));
}

std::optional<Date> Date::parse(std::string_view text) {
    const auto d = parse_ymd(text);
    if (!d) return std::nullopt;
    return Date(static_cast<std::int32_t>(d->time_since_epoch().count()));
}

std::string Date::to_string() const {
    const year_month_day ymd{sys_days{std::chrono::days{days_}}};
    return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                       static_cast<unsigned>(ymd.day()));
}

std::optional<std::int64_t> parse_timestamp(std::string_view text) {
    if (text.empty()) return std::nullopt;
    if (text.find('-', 1) == std::string_view::npos) {
        std::int64_t v = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
        return v;
    }
    const auto day = parse_ymd(text.substr(0, std::min<std::size_t>(10, text.size())));
    if (!day) return std::nullopt;
    std::int64_t secs = day->time_since_epoch().count() * std::int64_t{86400};
    if (text.size() == 10) return secs;

    std::string_view rest = text.substr(10);
    if (rest.front() != 'T' && rest.front() != ' ') return std::nullopt;
    rest.remove_prefix(1);
    if (rest.size() < 8 || rest[2] != ':' || rest[5] != ':') return std::nullopt;
    int hh = 0, mm = 0, ss = 0;
    if (!parse_int(rest.substr(0, 2), hh) || !parse_int(rest.substr(3, 2), mm) || !parse_int(rest.substr(6, 2), ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    rest.remove_prefix(8);
    if (!rest.empty() && rest != "Z" && rest != "+00:00") return std::nullopt;
    return secs + hh * 3600 + mm * 60 + ss;
}

std::string format_timestamp(std::int64_t unix_seconds) {
    const Date d = Date::from_unix_seconds(unix_seconds);
    const std::int64_t in_day = unix_seconds - d.unix_seconds();
    return fmt::format("{}T{:02d}:{:02d}:{:02d}Z", d.to_string(), in_day / 3600, (in_day / 60) % 60, in_day % 60);
}

}  // namespace govpulse
