#pragma once

// Deterministic value rendering for reports: exact quantities as reduced
// rationals, measured quantities as shortest round-trip decimals.

#include <charconv>
#include <cstdint>
#include <string>

#include "rational.hpp"

namespace fppkit {

inline std::string fmt_double(double x) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline std::string fmt_int(int64_t v) { return std::to_string(v); }

inline std::string fmt_bool(bool b) { return b ? "1" : "0"; }

// "successes/trials" without reduction, for event counts.
inline std::string fmt_count(int64_t num, int64_t den) {
    return std::to_string(num) + "/" + std::to_string(den);
}

} // namespace fppkit
