#pragma once

// Monte Carlo shape-function estimation along a fixed rational direction.
//
// For direction xi (|xi|_1 <= 1) and stretch alpha >= |xi|_1, the hop count
// is k_n = floor(n*alpha) (parity-corrected when zero-steps are disallowed)
// and the target is x_n = round(n*xi) coordinatewise. The per-replica
// statistic is G[k_n][x_n]/n resp. Gz[k_n][x_n]/n; replicas are averaged.
// One DP pass per replica serves a whole alpha-grid: the trace at x_n
// already holds every hop layer.

#include <cmath>
#include <mutex>

#include "restricted.hpp"
#include "stats.hpp"
#include "threads.hpp"

namespace fppkit {

inline Point scaled_target(const std::vector<Rat>& xi, int64_t n) {
    Point x(xi.size());
    for (size_t i = 0; i < xi.size(); ++i) {
        // round(n * num/den) with ties away from zero, in exact arithmetic
        __int128 num = (__int128)n * xi[i].num();
        int64_t den = xi[i].den();
        __int128 q = num >= 0 ? (2 * num + den) / (2 * (__int128)den)
                              : -((-2 * num + den) / (2 * (__int128)den));
        x[i] = (int)q;
    }
    return x;
}

// Hop count for one grid alpha; bumped to stay admissible for the target.
inline int64_t hops_for_alpha(double alpha, int64_t n, const Point& x, bool zero_steps) {
    int64_t k = (int64_t)std::floor(alpha * double(n));
    int64_t m = l1_norm(x);
    if (k < m) k = m;
    if (!zero_steps && ((k - m) & 1)) k += 1;
    return k;
}

inline Window window_for_cone(const Point& x, int64_t K) {
    int64_t slack = (K - l1_norm(x) + 1) / 2 + 1;
    std::vector<int> half(x.size());
    for (size_t a = 0; a < x.size(); ++a)
        half[a] = (int)(std::abs((int64_t)x[a]) + slack);
    return Window(half);
}

struct ShapePoint {
    double alpha = 0;
    int64_t k_n = 0;
    double value_hat = 0, se = 0;
    std::vector<double> replica_values;
};

struct ShapeEstimate {
    std::vector<Rat> xi;
    Point x_n;
    int64_t n = 0;
    int reps = 0;
    bool zero_steps = false;
    bool clipped = false;
    std::vector<ShapePoint> points;  // one per grid alpha, same order
};

namespace detail {

template <class W>
std::pair<std::vector<std::vector<double>>, bool>
shape_replica_matrix(const Distribution& dist, const Point& x_n,
                     const std::vector<int64_t>& ks, int64_t n, int reps, uint64_t seed,
                     bool zero_steps, int threads) {
    int64_t K = 0;
    for (int64_t k : ks) K = std::max(K, k);
    Window win = window_for_cone(x_n, K);
    Point source(x_n.size(), 0);
    std::vector<std::vector<double>> vals(ks.size(), std::vector<double>(reps, 0.0));
    bool clipped = false;
    std::mutex mu;
    parallel_for(reps, threads, [&](int64_t rep) {
        Environment<W> env;
        if constexpr (std::is_same_v<W, long long>)
            env = sample_environment_exact(dist, win, seed, (uint32_t)rep);
        else
            env = sample_environment_float(dist, win, seed, (uint32_t)rep);
        TraceResult<W> tr = restricted_trace_single(env, source, x_n, K);
        std::lock_guard<std::mutex> lock(mu);
        clipped |= tr.clipped;
        for (size_t i = 0; i < ks.size(); ++i) {
            W v = zero_steps ? tr.gz[ks[i]] : tr.g[ks[i]];
            if (v >= weight_inf<W>())
                throw PreconditionError("estimate_shape: target not reachable at requested hops");
            double vd;
            if constexpr (std::is_same_v<W, long long>)
                vd = double(v) / double(env.den);
            else
                vd = v;
            vals[i][rep] = vd / double(n);
        }
    });
    return {std::move(vals), clipped};
}

} // namespace detail

// Estimate at several alphas simultaneously (shared replicas). `exact`
// requires an atomic law.
inline ShapeEstimate estimate_shape_multi(const Distribution& dist, const std::vector<Rat>& xi,
                                          const std::vector<double>& alphas, int64_t n, int reps,
                                          uint64_t seed, bool zero_steps, bool exact,
                                          int threads = 1) {
    Rat l1;
    for (const Rat& c : xi) l1 += (c < Rat(0) ? -c : c);
    if (l1 > Rat(1))
        throw PreconditionError("estimate_shape: |xi|_1 must be <= 1");
    ShapeEstimate est;
    est.xi = xi;
    est.n = n;
    est.reps = reps;
    est.zero_steps = zero_steps;
    est.x_n = scaled_target(xi, n);
    std::vector<int64_t> ks;
    for (double a : alphas) {
        if (a < l1.to_double() - 1e-12)
            throw PreconditionError("estimate_shape: alpha below |xi|_1");
        ks.push_back(hops_for_alpha(a, n, est.x_n, zero_steps));
    }
    auto [vals, clipped] =
        exact ? detail::shape_replica_matrix<long long>(dist, est.x_n, ks, n, reps, seed,
                                                        zero_steps, threads)
              : detail::shape_replica_matrix<double>(dist, est.x_n, ks, n, reps, seed,
                                                     zero_steps, threads);
    est.clipped = clipped;
    for (size_t i = 0; i < alphas.size(); ++i) {
        ShapePoint p;
        p.alpha = alphas[i];
        p.k_n = ks[i];
        MeanStderr ms = mean_stderr(vals[i]);
        p.value_hat = ms.mean;
        p.se = ms.se;
        p.replica_values = std::move(vals[i]);
        est.points.push_back(std::move(p));
    }
    return est;
}

inline ShapeEstimate estimate_shape(const Distribution& dist, const std::vector<Rat>& xi,
                                    double alpha, int64_t n, int reps, uint64_t seed,
                                    bool zero_steps, bool exact, int threads = 1) {
    return estimate_shape_multi(dist, xi, {alpha}, n, reps, seed, zero_steps, exact, threads);
}

// Empirical check of the closed-form tail bound
//   P{ Gz[ell][x] >= s } <= ell^{2d} * P{ t >= s/ell }^{2d},
// valid once ell - |x|_1 >= 8. The right side is evaluated in closed form
// from the law; the left side is a replica frequency. ok allows four
// binomial standard errors of slack.
struct TailBoundRow {
    Rat s;
    double lhs_freq = 0, rhs_bound = 0, se = 0;
    bool ok = true;
};

struct TailBoundReport {
    Point x;
    int64_t ell = 0;
    int reps = 0;
    std::vector<TailBoundRow> rows;
    bool all_ok = true;
};

inline TailBoundReport check_tail_bound(const Distribution& dist, const Point& x, int64_t ell,
                                        const std::vector<Rat>& s_grid, int reps, uint64_t seed,
                                        int threads = 1) {
    if (!dist.atomic())
        throw PreconditionError("check_tail_bound: exact comparisons need an atomic law");
    if (ell - l1_norm(x) < 8)
        throw PreconditionError("check_tail_bound: need ell - |x|_1 >= 8");
    const int d = (int)x.size();
    Window win = window_for_cone(x, ell);
    Point source(d, 0);
    std::vector<long long> gvals(reps);
    parallel_for(reps, threads, [&](int64_t rep) {
        auto env = sample_environment_exact(dist, win, seed, (uint32_t)rep);
        TraceResult<long long> tr = restricted_trace_single(env, source, x, ell);
        gvals[rep] = tr.gz[ell];
    });
    int64_t den = dist.common_denominator();

    TailBoundReport rep;
    rep.x = x;
    rep.ell = ell;
    rep.reps = reps;
    for (const Rat& s : s_grid) {
        TailBoundRow row;
        row.s = s;
        int64_t count = 0;
        for (long long g : gvals) {
            // g/den >= s exactly
            if (Rat(g, den) >= s) ++count;
        }
        row.lhs_freq = double(count) / double(reps);
        double tail = dist.upper_tail_rat(s / Rat(ell));
        row.rhs_bound = std::pow(double(ell), 2.0 * d) * std::pow(tail, 2.0 * d);
        row.se = std::sqrt(row.lhs_freq * (1 - row.lhs_freq) / double(reps));
        row.ok = row.lhs_freq <= row.rhs_bound + 4.0 * row.se;
        rep.rows.push_back(row);
        rep.all_ok = rep.all_ok && row.ok;
    }
    return rep;
}

} // namespace fppkit
