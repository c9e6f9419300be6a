#pragma once

#include <cmath>
#include <vector>

namespace fppkit {

struct MeanStderr {
    double mean = 0.0;
    double se = 0.0;
    int64_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& xs) {
    MeanStderr m;
    m.n = (int64_t)xs.size();
    if (m.n == 0) return m;
    double s = 0;
    for (double x : xs) s += x;
    m.mean = s / double(m.n);
    if (m.n < 2) return m;
    double v = 0;
    for (double x : xs) v += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(v / double(m.n - 1) / double(m.n));
    return m;
}

// Wilson score interval lower bound for a binomial proportion.
inline double wilson_lower(int64_t successes, int64_t trials, double z = 1.96) {
    if (trials <= 0) return 0.0;
    double p = double(successes) / double(trials);
    double n = double(trials), z2 = z * z;
    double center = p + z2 / (2 * n);
    double rad = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    double lo = (center - rad) / (1 + z2 / n);
    return lo < 0 ? 0.0 : lo;
}

inline double wilson_upper(int64_t successes, int64_t trials, double z = 1.96) {
    if (trials <= 0) return 1.0;
    double p = double(successes) / double(trials);
    double n = double(trials), z2 = z * z;
    double center = p + z2 / (2 * n);
    double rad = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n));
    double hi = (center + rad) / (1 + z2 / n);
    return hi > 1 ? 1.0 : hi;
}

} // namespace fppkit
