#include "govpulse/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace govpulse {

unsigned default_thread_count() {
    if (const char* env = std::getenv("GOVPULSE_THREADS")) {
        const std::string_view s(env);
        unsigned v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc{} && ptr == s.data() + s.size() && v > 0) return v;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace govpulse
