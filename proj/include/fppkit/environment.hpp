#pragma once

// A sampled weight environment on a window. Two weight scalars are
// supported:
//   long long — exact mode; each weight is an integer numerator ("ticks")
//               over one environment-wide denominator, so sums and
//               comparisons of passage times are exact integer arithmetic.
//   double    — float mode, required for continuous laws.
//
// Weight draws are keyed by (seed, replica, edge slot), so identical
// (dist, window, seed, replica) always reproduce identical weights.

#include <limits>
#include <stdexcept>
#include <vector>

#include "distribution.hpp"
#include "lattice.hpp"
#include "rng.hpp"

namespace fppkit {

struct PreconditionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class W>
struct Environment {
    Window window;
    Distribution dist;
    uint64_t seed = 0;
    uint32_t replica = 0;
    std::vector<W> weights;   // indexed by Window::edge_slot
    int64_t den = 1;          // ticks per unit; 1 and unused when W = double
    Rat shift;                // total shift applied so far (exact mode)
    double shift_float = 0;   // total shift applied so far (float mode)
    bool has_negative = false;

    W weight_at_slot(int64_t slot) const { return weights[slot]; }

    // Weight of the edge leaving vertex idx by a directed step.
    W step_weight(int32_t idx, int step_code) const {
        int a = step_axis(step_code);
        if (step_sign(step_code) > 0) return weights[(int64_t)idx * window.d() + a];
        return weights[((int64_t)idx - window.stride(a)) * window.d() + a];
    }

    Rat tick_to_rat(long long ticks) const { return Rat(ticks, den); }
    double weight_to_double(long long ticks) const { return double(ticks) / double(den); }
    static double weight_to_double_id(double w) { return w; }
};

// Exact-mode sampling; the law must be atomic so ticks are well defined.
inline Environment<long long> sample_environment_exact(const Distribution& dist,
                                                       const Window& window,
                                                       uint64_t seed, uint32_t replica) {
    if (!dist.atomic())
        throw PreconditionError("exact mode requires an atomic law, got " + dist.spec());
    Environment<long long> env;
    env.window = window;
    env.dist = dist;
    env.seed = seed;
    env.replica = replica;
    env.den = dist.common_denominator();
    const auto& values = dist.atom_values();
    std::vector<long long> ticks(values.size());
    for (size_t i = 0; i < values.size(); ++i)
        ticks[i] = values[i].num() * (env.den / values[i].den());
    const int d = window.d();
    env.weights.assign(window.edge_slots(), 0);
    for (int32_t v = 0; v < window.vertex_count(); ++v)
        for (int a = 0; a < d; ++a) {
            int64_t slot = (int64_t)v * d + a;
            env.weights[slot] = ticks[dist.sample_atom(seed, replica, (uint64_t)slot)];
        }
    return env;
}

inline Environment<double> sample_environment_float(const Distribution& dist,
                                                    const Window& window,
                                                    uint64_t seed, uint32_t replica) {
    Environment<double> env;
    env.window = window;
    env.dist = dist;
    env.seed = seed;
    env.replica = replica;
    const int d = window.d();
    env.weights.assign(window.edge_slots(), 0.0);
    for (int32_t v = 0; v < window.vertex_count(); ++v)
        for (int a = 0; a < d; ++a) {
            int64_t slot = (int64_t)v * d + a;
            env.weights[slot] = dist.sample_double(seed, replica, (uint64_t)slot);
        }
    return env;
}

// Shift every weight by b. Composes: shifting by b then c equals shifting
// by b+c (exactly in exact mode). Negative weights are allowed and flagged.
inline Environment<long long> shift_environment(const Environment<long long>& env, const Rat& b) {
    Environment<long long> out = env;
    int64_t nden = lcm64(env.den, b.den());
    if (nden != env.den) {
        int64_t f = nden / env.den;
        for (auto& w : out.weights) w *= f;
        out.den = nden;
    }
    long long add = b.num() * (nden / b.den());
    bool neg = false;
    for (auto& w : out.weights) {
        w += add;
        neg |= w < 0;
    }
    out.shift = env.shift + b;
    out.shift_float = out.shift.to_double();
    out.has_negative = neg;
    return out;
}

inline Environment<double> shift_environment(const Environment<double>& env, double b) {
    Environment<double> out = env;
    bool neg = false;
    for (auto& w : out.weights) {
        w += b;
        neg |= w < 0;
    }
    out.shift_float += b;
    out.has_negative = neg;
    return out;
}

} // namespace fppkit
