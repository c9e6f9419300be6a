#pragma once

// Duality between the radial hop-constrained curve and the shifted shape
// function.
//
// The radial curve stores estimates of alpha * g(xi/alpha) on an alpha
// grid. The dual reconstruction of the shifted shape value is the lower
// envelope over that grid:
//     mu(b) = min_i ( value_i + alpha_i * b ),
// a finite minimum of affine functions of b, hence exactly concave and
// (for alpha_i > 0) exactly nondecreasing. Structural checks evaluate
// these facts in exact rational arithmetic over the stored doubles, so
// they are zero-tolerance by construction, not up to rounding.

#include <optional>
#include <string>

#include "bigrat.hpp"
#include "shape.hpp"

namespace fppkit {

struct RadialCurve {
    std::vector<Rat> xi;
    int64_t n = 0;
    int reps = 0;
    bool zero_steps = false;  // true: the curve is alpha * g_zero(xi/alpha)
    Point x_n;
    std::vector<double> alpha, value, se;
    double boundary_value = 0;             // extrapolated value at alpha = |xi|_1
    std::string boundary_method = "linear-extrapolation";
    bool clipped = false;
};

// Default alpha grid: the closed left edge, a geometric approach to it,
// then a linear tail.
inline std::vector<double> default_alpha_grid(double lo, double hi) {
    std::vector<double> g;
    g.push_back(lo);
    double off = 0.02;
    while (lo + off < std::min(hi, lo + 1.0)) {
        g.push_back(lo + off);
        off *= 1.6;
    }
    for (double a = std::ceil((lo + 1.0) * 2) / 2; a <= hi + 1e-9; a += 0.5) g.push_back(a);
    if (g.empty() || g.back() < hi - 1e-9) g.push_back(hi);
    return g;
}

namespace detail {

inline void fill_boundary(RadialCurve& c) {
    if (c.alpha.size() >= 2) {
        double a0 = c.alpha[0], a1 = c.alpha[1];
        double l1 = 0;
        for (const Rat& r : c.xi) l1 += std::abs(r.to_double());
        c.boundary_value = c.value[0] + (c.value[1] - c.value[0]) * (l1 - a0) / (a1 - a0);
    } else if (!c.alpha.empty()) {
        c.boundary_value = c.value[0];
        c.boundary_method = "nearest-point";
    }
}

} // namespace detail

// Both radial curves (with and without zero-steps) from one replica set.
inline std::pair<RadialCurve, RadialCurve> build_radial_curves(
    const Distribution& dist, const std::vector<Rat>& xi, const std::vector<double>& alphas,
    int64_t n, int reps, uint64_t seed, bool exact, int threads = 1) {
    RadialCurve g, gz;
    for (int pass = 0; pass < 2; ++pass) {
        bool zero_steps = pass == 1;
        ShapeEstimate est =
            estimate_shape_multi(dist, xi, alphas, n, reps, seed, zero_steps, exact, threads);
        RadialCurve& c = zero_steps ? gz : g;
        c.xi = xi;
        c.n = n;
        c.reps = reps;
        c.zero_steps = zero_steps;
        c.x_n = est.x_n;
        c.clipped = est.clipped;
        // Store the realized stretch k_n/n (hop counts are parity-corrected,
        // so it can differ from the requested grid alpha); collapse grid
        // points that landed on the same hop count.
        int64_t prev_k = -1;
        for (const ShapePoint& p : est.points) {
            if (p.k_n == prev_k) continue;
            prev_k = p.k_n;
            c.alpha.push_back(double(p.k_n) / double(n));
            c.value.push_back(p.value_hat);
            c.se.push_back(p.se);
        }
        detail::fill_boundary(c);
    }
    return {g, gz};
}

inline RadialCurve build_radial_curve(const Distribution& dist, const std::vector<Rat>& xi,
                                      const std::vector<double>& alphas, int64_t n, int reps,
                                      uint64_t seed, bool zero_steps, bool exact,
                                      int threads = 1) {
    auto [g, gz] = build_radial_curves(dist, xi, alphas, n, reps, seed, exact, threads);
    return zero_steps ? gz : g;
}

struct ShiftCurve {
    std::vector<double> b, mu, se;
    std::vector<int> argmin;        // dual curves: index of the achieving alpha
    std::string provenance;         // "dual" or "direct"
};

// Lower envelope reconstruction; the reported se is the pointwise stderr of
// the achieving curve point.
inline ShiftCurve mu_from_g(const RadialCurve& c, const std::vector<double>& b_grid) {
    if (c.alpha.empty()) throw PreconditionError("mu_from_g: empty curve");
    ShiftCurve sc;
    sc.provenance = "dual";
    for (double b : b_grid) {
        BigRat bb = bigrat_from_double(b);
        BigRat best;
        int besti = -1;
        for (size_t i = 0; i < c.alpha.size(); ++i) {
            BigRat f = bigrat_from_double(c.value[i]) + bigrat_from_double(c.alpha[i]) * bb;
            if (besti < 0 || f < best) {
                best = f;
                besti = (int)i;
            }
        }
        sc.b.push_back(b);
        sc.mu.push_back(best.convert_to<double>());
        sc.se.push_back(c.se[besti]);
        sc.argmin.push_back(besti);
    }
    return sc;
}

// [lo, hi] of grid alphas achieving the envelope at b, within slack.
// slack < 0 selects the pointwise rule slack_i = 2 * se_i; slack = 0 is the
// exact argmin set (evaluated in exact arithmetic).
struct LambdaInterval {
    double lo = 0, hi = 0;
    int lo_idx = 0, hi_idx = 0;
};

inline LambdaInterval lambda_interval(const RadialCurve& c, double b, double slack = 0.0) {
    if (c.alpha.empty()) throw PreconditionError("lambda_interval: empty curve");
    BigRat bb = bigrat_from_double(b);
    std::vector<BigRat> f(c.alpha.size());
    BigRat best;
    for (size_t i = 0; i < c.alpha.size(); ++i) {
        f[i] = bigrat_from_double(c.value[i]) + bigrat_from_double(c.alpha[i]) * bb;
        if (i == 0 || f[i] < best) best = f[i];
    }
    LambdaInterval iv;
    iv.lo_idx = -1;
    for (size_t i = 0; i < c.alpha.size(); ++i) {
        BigRat allowed = best;
        if (slack < 0)
            allowed += bigrat_from_double(2.0 * c.se[i]);
        else if (slack > 0)
            allowed += bigrat_from_double(slack);
        if (f[i] <= allowed) {
            if (iv.lo_idx < 0) iv.lo_idx = (int)i;
            iv.hi_idx = (int)i;
        }
    }
    iv.lo = c.alpha[iv.lo_idx];
    iv.hi = c.alpha[iv.hi_idx];
    return iv;
}

// Zero-step curve from the plain curve: running minimum over the grid,
// i.e. alpha*gz(xi/alpha) = min_{tau <= alpha} tau*g(xi/tau).
inline RadialCurve zgpp_from_g(const RadialCurve& c) {
    RadialCurve z = c;
    z.zero_steps = true;
    for (size_t i = 1; i < z.value.size(); ++i) {
        if (z.value[i - 1] < z.value[i]) {
            z.value[i] = z.value[i - 1];
            z.se[i] = z.se[i - 1];
        }
    }
    detail::fill_boundary(z);
    return z;
}

// Exact structural facts about a dual reconstruction on a grid: concavity
// (chord below value) and monotone increase, both zero tolerance.
struct EnvelopeShapeReport {
    bool concave_ok = true;
    bool increasing_ok = true;
};

inline EnvelopeShapeReport check_envelope_shape(const RadialCurve& c,
                                                const std::vector<double>& b_grid) {
    EnvelopeShapeReport rep;
    std::vector<BigRat> f(b_grid.size());
    for (size_t j = 0; j < b_grid.size(); ++j) {
        BigRat bb = bigrat_from_double(b_grid[j]);
        for (size_t i = 0; i < c.alpha.size(); ++i) {
            BigRat v = bigrat_from_double(c.value[i]) + bigrat_from_double(c.alpha[i]) * bb;
            if (i == 0 || v < f[j]) f[j] = v;
        }
    }
    for (size_t j = 0; j + 1 < f.size(); ++j)
        if (f[j + 1] < f[j]) rep.increasing_ok = false;
    for (size_t j = 0; j + 2 < f.size(); ++j) {
        BigRat b1 = bigrat_from_double(b_grid[j]);
        BigRat b2 = bigrat_from_double(b_grid[j + 1]);
        BigRat b3 = bigrat_from_double(b_grid[j + 2]);
        // chord through (b1,f1),(b3,f3) must not exceed f2 at b2
        if ((b3 - b1) * f[j + 1] < (b3 - b2) * f[j] + (b2 - b1) * f[j + 2])
            rep.concave_ok = false;
    }
    return rep;
}

// Difference-quotient concavity of a measured shift curve, and strictness
// of the total quotient drop against combined stderr.
struct ConcavityReport {
    std::vector<double> quotients, quotient_se;
    bool concave_ok = true;   // within 2 combined se per adjacent pair
    double drop = 0, drop_se = 0;
    bool strict_ok = false;   // drop >= 3 combined se
};

inline ConcavityReport check_strict_concavity(const ShiftCurve& sc) {
    ConcavityReport rep;
    size_t m = sc.b.size();
    if (m < 2) return rep;
    for (size_t i = 0; i + 1 < m; ++i) {
        double db = sc.b[i + 1] - sc.b[i];
        rep.quotients.push_back((sc.mu[i + 1] - sc.mu[i]) / db);
        rep.quotient_se.push_back(
            std::sqrt(sc.se[i + 1] * sc.se[i + 1] + sc.se[i] * sc.se[i]) / db);
    }
    for (size_t i = 0; i + 1 < rep.quotients.size(); ++i) {
        double comb = std::sqrt(rep.quotient_se[i] * rep.quotient_se[i] +
                                rep.quotient_se[i + 1] * rep.quotient_se[i + 1]);
        if (rep.quotients[i + 1] > rep.quotients[i] + 2.0 * comb) rep.concave_ok = false;
    }
    rep.drop = rep.quotients.front() - rep.quotients.back();
    rep.drop_se = std::sqrt(rep.quotient_se.front() * rep.quotient_se.front() +
                            rep.quotient_se.back() * rep.quotient_se.back());
    rep.strict_ok = rep.drop >= 3.0 * rep.drop_se;
    return rep;
}

// As the shift grows the exact argmin interval must slide left toward the
// smallest grid alpha (the |xi|_1 end of the grid).
struct DerivativeLimitReport {
    std::vector<double> hi;   // lambda-bar per b, exact argmin
    bool monotone_ok = true;
    bool limit_ok = false;    // last interval pinned at the first grid point
};

inline DerivativeLimitReport check_derivative_limit(const RadialCurve& c,
                                                    const std::vector<double>& b_grid) {
    DerivativeLimitReport rep;
    for (double b : b_grid) rep.hi.push_back(lambda_interval(c, b, 0.0).hi);
    for (size_t i = 0; i + 1 < rep.hi.size(); ++i)
        if (rep.hi[i + 1] > rep.hi[i] + 1e-12) rep.monotone_ok = false;
    if (!rep.hi.empty()) rep.limit_ok = rep.hi.back() <= c.alpha.front() + 1e-12;
    return rep;
}

// Pointwise comparison of alpha*g, alpha*gz and a direct estimate of mu:
// the grid should decompose into three runs.
struct TrichotomyRow {
    double alpha = 0, g = 0, gz = 0;
    std::string label;
};

struct TrichotomyReport {
    std::vector<TrichotomyRow> rows;
    double mu = 0, mu_se = 0;
    bool pattern_ok = true;
};

inline TrichotomyReport trichotomy_report(const RadialCurve& g, const RadialCurve& gz,
                                          double mu, double mu_se, double z = 3.0) {
    TrichotomyReport rep;
    rep.mu = mu;
    rep.mu_se = mu_se;
    int last_phase = 0;
    for (size_t i = 0; i < g.alpha.size(); ++i) {
        TrichotomyRow row;
        row.alpha = g.alpha[i];
        row.g = g.value[i];
        row.gz = gz.value[i];
        double s_gm = z * std::sqrt(g.se[i] * g.se[i] + mu_se * mu_se);
        double s_zm = z * std::sqrt(gz.se[i] * gz.se[i] + mu_se * mu_se);
        double s_gz = z * std::sqrt(g.se[i] * g.se[i] + gz.se[i] * gz.se[i]);
        bool g_at_mu = std::abs(row.g - mu) <= s_gm;
        bool gz_at_mu = std::abs(row.gz - mu) <= s_zm;
        bool agree = std::abs(row.g - row.gz) <= s_gz;
        int phase;
        if (agree && row.g > mu + s_gm) {
            row.label = "decreasing-agree";
            phase = 0;
        } else if (g_at_mu && gz_at_mu) {
            row.label = "flat-agree";
            phase = 1;
        } else if (gz_at_mu && row.g > mu + s_gm) {
            row.label = "g-rises-g0-flat";
            phase = 2;
        } else {
            row.label = "ambiguous";
            phase = -1;
        }
        if (phase >= 0) {
            if (phase < last_phase) rep.pattern_ok = false;
            last_phase = phase;
        }
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

// Integer detour parameters: the smallest (k, l), k >= k_min, with
//   k*s < (k+2l)*r < k*s + (2l-1)*b       (strict),
// plus the largest safe perturbation delta certifying
//   k*(s+d) < (k+2l)*(r-d) < (k+2l)*(r+d) < k*(s-d) + (2l-1)*b.
struct DetourParams {
    int64_t k = 0, l = 0;
    Rat delta;
    bool verified = false;
};

inline std::optional<DetourParams> find_detour_params(const Rat& r, const Rat& s, const Rat& b,
                                                      int64_t k_min, int64_t k_cap = 100000) {
    if (!(Rat(0) < r) || !(r < s) || !(b > Rat(0)))
        throw PreconditionError("find_detour_params: need 0 < r < s and b > 0");
    auto chain_ok = [&](int64_t k, int64_t l) {
        Rat ks = Rat(k) * s, mid = Rat(k + 2 * l) * r;
        return ks < mid && mid < ks + Rat(2 * l - 1) * b;
    };
    for (int64_t k = std::max<int64_t>(k_min, 1); k <= k_cap; ++k) {
        // l > k(s-r)/(2r) is forced by the first inequality
        Rat lo = Rat(k) * (s - r) / (Rat(2) * r);
        int64_t l = lo.floor() + 1;
        if (l < 1) l = 1;
        if (!chain_ok(k, l)) {
            // second inequality: 2l(r-b) < k(s-r) - b; if r <= b larger l
            // eventually works, otherwise no l works for this k
            if (r <= b) {
                Rat num = b - Rat(k) * (s - r);
                if (b > r) {
                    Rat need = num / (Rat(2) * (b - r));
                    int64_t l2 = std::max(l, need.floor() + 1);
                    if (!chain_ok(k, l2)) continue;
                    l = l2;
                } else {
                    continue;
                }
            } else {
                continue;
            }
        }
        DetourParams p;
        p.k = k;
        p.l = l;
        Rat room1 = (Rat(k + 2 * l) * r - Rat(k) * s) / Rat(2 * k + 2 * l);
        Rat room2 = (Rat(k) * s + Rat(2 * l - 1) * b - Rat(k + 2 * l) * r) / Rat(2 * k + 2 * l);
        Rat room = room1 < room2 ? room1 : room2;
        p.delta = room / Rat(2);
        Rat d = p.delta;
        Rat lhs = Rat(k) * (s + d);
        Rat m1 = Rat(k + 2 * l) * (r - d);
        Rat m2 = Rat(k + 2 * l) * (r + d);
        Rat rhs = Rat(k) * (s - d) + Rat(2 * l - 1) * b;
        p.verified = d > Rat(0) && lhs < m1 && m1 < m2 && m2 < rhs;
        return p;
    }
    return std::nullopt;
}

} // namespace fppkit
