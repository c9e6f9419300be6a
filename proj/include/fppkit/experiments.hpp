#pragma once

// Replicated Monte Carlo experiment drivers. Reports carry pre-formatted
// cells: every value is rendered to its final string here, so a rerun with
// the same config reproduces the table bytes exactly. Replicas use
// counter-based streams indexed by replica number; thread count cannot
// change any output.

#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "blackbox.hpp"
#include "duality.hpp"
#include "format.hpp"
#include "singular.hpp"
#include "stats.hpp"
#include "threads.hpp"

namespace fppkit {

struct Table {
    std::string name;  // file stem: <name>.csv
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct ExperimentReport {
    std::string name;
    std::vector<std::pair<std::string, std::string>> config;  // resolved, echoed
    std::vector<Table> tables;                                // tables[0] is report.csv
    std::vector<std::pair<std::string, std::string>> aggregates;
    std::vector<std::string> notes;
};

inline std::string targets_str(const std::vector<Point>& ts) {
    std::string s;
    for (size_t i = 0; i < ts.size(); ++i) {
        if (i) s += " ";
        s += point_str(ts[i]);
    }
    return s;
}

// Window centered at the origin covering all targets with padding room for
// geodesic wander.
inline Window window_for_targets(const std::vector<Point>& targets, int pad) {
    const int d = (int)targets.front().size();
    int64_t maxl1 = 0;
    for (const Point& x : targets) maxl1 = std::max(maxl1, l1_norm(x));
    if (pad <= 0) pad = (int)std::max<int64_t>(16, maxl1 / 4);
    std::vector<int> half(d, 0);
    for (const Point& x : targets)
        for (int a = 0; a < d; ++a) half[a] = std::max(half[a], std::abs(x[a]));
    for (int a = 0; a < d; ++a) half[a] += pad;
    return Window(half);
}

// ---------------------------------------------------------------------------
// Normalized minimal geodesic length: L_min / |x|_1 per replica and target.

struct RatioParams {
    Distribution dist;
    std::vector<Point> targets;
    int reps = 100;
    uint64_t seed = 0;
    std::vector<double> delta_grid = {0.01, 0.02, 0.05, 0.1, 0.2};
    int pad = 0;  // <= 0: auto
    int threads = 1;
};

inline ExperimentReport geodesic_ratio_experiment(const RatioParams& prm) {
    if (prm.targets.empty()) throw PreconditionError("ratio: no targets");
    for (const Point& x : prm.targets)
        if (l1_norm(x) == 0) throw PreconditionError("ratio: target must differ from the origin");
    if (prm.reps < 1) throw PreconditionError("ratio: reps >= 1");
    Window win = window_for_targets(prm.targets, prm.pad);
    const bool exact = prm.dist.atomic();
    const int T = (int)prm.targets.size();

    ExperimentReport rep;
    rep.name = "ratio";
    rep.config = {{"dist", prm.dist.spec()},
                  {"targets", targets_str(prm.targets)},
                  {"reps", fmt_int(prm.reps)},
                  {"seed", std::to_string(prm.seed)},
                  {"window", win.spec()},
                  {"mode", exact ? "exact" : "float"}};

    Table tab;
    tab.name = "report";
    tab.columns = {"replica", "target", "t", "l_min", "l1", "ratio", "ratio_dec"};
    tab.rows.resize((size_t)prm.reps * T);
    std::vector<Rat> ratios((size_t)prm.reps * T);

    Point source(win.d(), 0);
    parallel_for(prm.reps, prm.threads, [&](int64_t r) {
        Environment<long long> env_e;
        Environment<double> env_f;
        if (exact) env_e = sample_environment_exact(prm.dist, win, prm.seed, (uint64_t)r);
        else env_f = sample_environment_float(prm.dist, win, prm.seed, (uint64_t)r);
        for (int ti = 0; ti < T; ++ti) {
            const Point& x = prm.targets[ti];
            std::string t_str;
            int64_t lmin;
            if (exact) {
                Geodesic<long long> g = min_length_geodesic(env_e, source, x);
                t_str = (Rat(g.time, 1) / Rat(env_e.den)).str();
                lmin = g.length;
            } else {
                Geodesic<double> g = min_length_geodesic(env_f, source, x, 1e-9);
                t_str = fmt_double(g.time);
                lmin = g.length;
            }
            int64_t l1 = l1_norm(x);
            Rat ratio(lmin, l1);
            size_t row = (size_t)r * T + ti;
            ratios[row] = ratio;
            tab.rows[row] = {fmt_int(r),      point_str(x), t_str,
                             fmt_int(lmin),   fmt_int(l1),  ratio.str(),
                             fmt_double(ratio.to_double())};
        }
    });

    Rat min_ratio = ratios[0];
    double sum = 0;
    for (const Rat& q : ratios) {
        if (q < min_ratio) min_ratio = q;
        sum += q.to_double();
    }
    Rat margin = min_ratio - Rat(1);
    const int64_t nrows = (int64_t)ratios.size();
    rep.aggregates.emplace_back("min_ratio", min_ratio.str());
    rep.aggregates.emplace_back("mean_ratio", fmt_double(sum / double(nrows)));
    rep.aggregates.emplace_back("margin", margin.str());
    // every row satisfies ratio >= 1 + margin by definition of the minimum
    rep.aggregates.emplace_back("wilson_lb_at_margin",
                                fmt_double(wilson_lower(nrows, nrows)));
    for (double dl : prm.delta_grid) {
        BigRat thr = BigRat(1) + bigrat_from_double(dl);
        int64_t succ = 0;
        for (const Rat& q : ratios)
            if (bigrat_from_rat(q) >= thr) ++succ;
        std::string key = "[delta=" + fmt_double(dl) + "]";
        rep.aggregates.emplace_back("p" + key, fmt_count(succ, nrows));
        rep.aggregates.emplace_back("wilson_lo" + key, fmt_double(wilson_lower(succ, nrows)));
    }

    rep.notes.push_back(
        "assumes the minimal edge value does not percolate; not verified by this run");
    if (exact && prm.dist.ess_sup() == prm.dist.r0())
        rep.notes.push_back("deterministic law: every coordinate-monotone path is a geodesic "
                            "and the ratio is identically 1");
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------------------
// Normalized spread of geodesic lengths, (L_max - L_min) / |x|_1, under a
// weight shift b. Exact mode only: tie detection drives L_max.

struct GapParams {
    Distribution dist;
    Rat b;
    std::vector<Point> targets;
    int reps = 100;
    uint64_t seed = 0;
    std::vector<double> d_grid = {0.005, 0.01, 0.02, 0.05, 0.1};
    int64_t budget = 1'000'000;
    int pad = 0;
    int threads = 1;
};

inline ExperimentReport length_gap_experiment(const GapParams& prm) {
    if (!prm.dist.atomic())
        throw PreconditionError(
            "gap: non-atomic law rejected (float ties make L_max ill-defined)");
    if (prm.targets.empty()) throw PreconditionError("gap: no targets");
    if (prm.dist.r0_exact() + prm.b < Rat(0))
        throw PreconditionError("gap: shift drives weights negative");
    Window win = window_for_targets(prm.targets, prm.pad);
    const int T = (int)prm.targets.size();

    // Atom structure: a zero atom, or several positive atoms (stored as
    // rationals, so their ratios are automatically rational). Anything else
    // is still run but labeled exploratory.
    std::string assumption = "exploratory";
    bool zero_atom = false;
    for (const Rat& v : prm.dist.atom_values())
        if (v == Rat(0)) zero_atom = true;
    if (zero_atom) assumption = "zero-atom";
    else if (prm.dist.atom_values().size() >= 2) assumption = "rational-ratio-atoms";

    ExperimentReport rep;
    rep.name = "gap";
    rep.config = {{"dist", prm.dist.spec()}, {"b", prm.b.str()},
                  {"targets", targets_str(prm.targets)}, {"reps", fmt_int(prm.reps)},
                  {"seed", std::to_string(prm.seed)}, {"budget", fmt_int(prm.budget)},
                  {"window", win.spec()}, {"mode", "exact"},
                  {"assumption", assumption}};

    Table tab;
    tab.name = "report";
    tab.columns = {"replica", "target", "t",   "l_min",   "l_max",
                   "lmax_exact", "gap", "gap_used"};
    tab.rows.resize((size_t)prm.reps * T);
    std::vector<Rat> gaps_used((size_t)prm.reps * T);
    std::vector<char> exceeded((size_t)prm.reps * T, 0);

    Point source(win.d(), 0);
    parallel_for(prm.reps, prm.threads, [&](int64_t r) {
        Environment<long long> env = sample_environment_exact(prm.dist, win, prm.seed, (uint64_t)r);
        Environment<long long> envb = shift_environment(env, prm.b);
        for (int ti = 0; ti < T; ++ti) {
            const Point& x = prm.targets[ti];
            Geodesic<long long> gmin = min_length_geodesic(envb, source, x);
            MaxGeodesic gmax = max_length_geodesic(envb, source, x, prm.budget);
            int64_t l1 = l1_norm(x);
            Rat gap(gmax.length - gmin.length, l1);
            // a truncated search yields only a lower bound on L_max; count
            // the replica as gap 0 so aggregates never overstate
            Rat used = gmax.exact ? gap : Rat(0);
            size_t row = (size_t)r * T + ti;
            gaps_used[row] = used;
            exceeded[row] = !gmax.exact;
            tab.rows[row] = {fmt_int(r),
                             point_str(x),
                             (Rat(gmin.time, 1) / Rat(envb.den)).str(),
                             fmt_int(gmin.length),
                             fmt_int(gmax.length),
                             fmt_bool(gmax.exact),
                             gap.str(),
                             used.str()};
        }
    });

    const int64_t nrows = (int64_t)gaps_used.size();
    double sum = 0;
    int64_t nexceeded = 0;
    for (int64_t i = 0; i < nrows; ++i) {
        sum += gaps_used[i].to_double();
        nexceeded += exceeded[i];
    }
    rep.aggregates.emplace_back("mean_gap", fmt_double(sum / double(nrows)));
    rep.aggregates.emplace_back("budget_exceeded", fmt_count(nexceeded, nrows));
    for (double D : prm.d_grid) {
        BigRat thr = bigrat_from_double(D);
        int64_t succ = 0;
        for (const Rat& q : gaps_used)
            if (bigrat_from_rat(q) >= thr) ++succ;
        std::string key = "[D=" + fmt_double(D) + "]";
        rep.aggregates.emplace_back("p" + key, fmt_count(succ, nrows));
        rep.aggregates.emplace_back("wilson_lo" + key, fmt_double(wilson_lower(succ, nrows)));
    }
    if (assumption == "exploratory")
        rep.notes.push_back("law lacks the expected atom structure; results are exploratory");
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------------------
// Shift values where two atoms tie across detour lengths.

struct SingularParams {
    Rat r, s, r0;
    int64_t l_max = 20, m_max = 50;
    Rat lo, hi;  // density interval for the gap aggregate
};

inline ExperimentReport singularity_experiment(const SingularParams& prm) {
    SingularitySet set = enumerate_singularity_shifts(prm.r, prm.s, prm.r0, prm.l_max, prm.m_max);
    ExperimentReport rep;
    rep.name = "singularities";
    rep.config = {{"r", prm.r.str()},         {"s", prm.s.str()},
                  {"r0", prm.r0.str()},       {"l_max", fmt_int(prm.l_max)},
                  {"m_max", fmt_int(prm.m_max)}, {"lo", prm.lo.str()},
                  {"hi", prm.hi.str()}};
    Table tab;
    tab.name = "report";
    tab.columns = {"l", "k", "m", "b"};
    for (const SingularityEntry& e : set.entries)
        tab.rows.push_back({fmt_int(e.l), fmt_int(e.k), fmt_int(e.m), e.b.str()});

    Rat gap = max_gap(set, prm.lo, prm.hi);
    Rat bound = (prm.s - prm.r) / Rat(2 * prm.l_max);
    rep.aggregates.emplace_back("entries", fmt_int((int64_t)set.entries.size()));
    rep.aggregates.emplace_back("identity_ok", fmt_bool(set.identity_ok));
    rep.aggregates.emplace_back("b_min", set.entries.front().b.str());
    rep.aggregates.emplace_back("b_max", set.entries.back().b.str());
    rep.aggregates.emplace_back("max_gap", gap.str());
    rep.aggregates.emplace_back("spacing_bound", bound.str());
    rep.aggregates.emplace_back("gap_within_bound", fmt_bool(!(gap > bound)));
    if (set.entries.back().b < prm.hi)
        rep.notes.push_back("m_max too small for the finest family to reach hi; the gap "
                            "aggregate reflects the truncated set");
    rep.tables.push_back(std::move(tab));
    return rep;
}

// ---------------------------------------------------------------------------
// Box coloring and geodesic crossings, swept over (s0, delta0).

struct BlackBoxExpParams {
    Distribution dist;
    int N = 4;
    std::vector<Rat> s0_grid;      // sorted ascending internally
    std::vector<Rat> delta0_grid;  // sorted ascending internally
    Point target;
    int reps = 50;
    uint64_t seed = 0;
    int spacing = 4;  // residue classes of box corners, for class labels
    int pad = 0;
    int threads = 1;
};

namespace detail {

inline std::string box_label(const std::vector<int>& kk, int axis) {
    std::string s = "ax" + std::to_string(axis) + "@(";
    for (size_t i = 0; i < kk.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(kk[i]);
    }
    return s + ")";
}

inline std::string box_class(const std::vector<int>& kk, int axis, int spacing) {
    std::string s = "ax" + std::to_string(axis) + ":r(";
    for (size_t i = 0; i < kk.size(); ++i) {
        if (i) s += ",";
        int m = kk[i] % spacing;
        if (m < 0) m += spacing;
        s += std::to_string(m);
    }
    return s + ")";
}

} // namespace detail

inline ExperimentReport black_box_experiment(const BlackBoxExpParams& prm) {
    if (!prm.dist.atomic())
        throw PreconditionError("blackbox: non-atomic law rejected (coloring is an exact event)");
    if (prm.N < 1) throw PreconditionError("blackbox: N >= 1");
    if (prm.s0_grid.empty() || prm.delta0_grid.empty())
        throw PreconditionError("blackbox: empty sweep grid");
    for (const Rat& v : prm.s0_grid)
        if (!(v > Rat(0))) throw PreconditionError("blackbox: s0 > 0");
    for (const Rat& v : prm.delta0_grid)
        if (!(v > Rat(0))) throw PreconditionError("blackbox: delta0 > 0");
    if (prm.spacing < 1) throw PreconditionError("blackbox: spacing >= 1");

    const int d = (int)prm.target.size();
    const int N = prm.N;
    const int64_t radius = neighborhood_radius(N, d);

    // the reference box sits just off the origin; its neighborhood must fit
    std::vector<int> kk0(d, 0);
    BoxGeometry central = make_box(N, kk0, 0, +1);
    std::vector<int> half(d);
    for (int a = 0; a < d; ++a) {
        int need_box = (int)(std::max(std::abs(central.lo[a]), std::abs(central.hi[a])) + radius + 1);
        int need_path = std::abs(prm.target[a]) + (prm.pad > 0 ? prm.pad : std::max(8, 2 * N));
        half[a] = std::max(need_box, need_path);
    }
    Window win(half);
    if (win.vertex_count() > (int64_t)1 << 26)
        throw PreconditionError("blackbox: window too large");

    std::vector<Rat> s0s = prm.s0_grid, d0s = prm.delta0_grid;
    std::sort(s0s.begin(), s0s.end());
    std::sort(d0s.begin(), d0s.end());
    const int ncells = (int)(s0s.size() * d0s.size());
    const bool bounded = prm.dist.bounded();

    ExperimentReport rep;
    rep.name = "blackbox";
    rep.config = {{"dist", prm.dist.spec()},
                  {"N", fmt_int(N)},
                  {"target", point_str(prm.target)},
                  {"reps", fmt_int(prm.reps)},
                  {"seed", std::to_string(prm.seed)},
                  {"window", win.spec()},
                  {"spacing", fmt_int(prm.spacing)},
                  {"bounded_mode", bounded ? "per-edge-cap" : "box-sum-cap"}};
    {
        std::string g;
        for (size_t i = 0; i < s0s.size(); ++i) g += (i ? " " : "") + s0s[i].str();
        rep.config.emplace_back("s0_grid", g);
        g.clear();
        for (size_t i = 0; i < d0s.size(); ++i) g += (i ? " " : "") + d0s[i].str();
        rep.config.emplace_back("delta0_grid", g);
    }

    Table main;
    main.name = "report";
    main.columns = {"replica", "s0", "delta0", "central_black", "boxes_crossed",
                    "black_crossed", "crossings_per_l1"};
    main.rows.resize((size_t)prm.reps * ncells);

    Table xtab;
    xtab.name = "crossings";
    xtab.columns = {"replica", "box", "class", "v", "w",
                    "weight_max", "weight_sum", "min_ratio", "nbhd_clipped"};
    std::vector<std::vector<std::vector<std::string>>> xrows(prm.reps);

    // per-replica, per-cell tallies for the aggregates
    std::vector<std::vector<char>> central_black(prm.reps, std::vector<char>(ncells, 0));
    std::vector<std::vector<int64_t>> black_crossed(prm.reps, std::vector<int64_t>(ncells, 0));
    std::vector<int64_t> crossed_count(prm.reps, 0);
    std::vector<char> replica_monotone(prm.reps, 1);
    const int64_t l1x = l1_norm(prm.target);
    Point source(d, 0);
    const Rat base_rate = prm.dist.r0_exact();  // experiment runs at shift 0

    parallel_for(prm.reps, prm.threads, [&](int64_t r) {
        Environment<long long> env = sample_environment_exact(prm.dist, win, prm.seed, (uint64_t)r);
        BoxStats cstats = box_stats(env, central);
        if (cstats.clipped) throw PreconditionError("blackbox: reference box neighborhood clipped");

        Geodesic<long long> geo = min_length_geodesic(env, source, prm.target);

        // distinct boxes crossed by the geodesic: every box is make_box(kk,
        // axis, +1) for exactly one (kk, axis)
        std::vector<int> mn(d), mx(d);
        for (int a = 0; a < d; ++a) mn[a] = mx[a] = geo.points[0][a];
        for (const Point& p : geo.points)
            for (int a = 0; a < d; ++a) {
                mn[a] = std::min(mn[a], p[a]);
                mx[a] = std::max(mx[a], p[a]);
            }
        std::map<std::pair<int, std::vector<int>>, BoxStats> cache;
        std::vector<std::pair<int, std::vector<int>>> crossed;
        std::vector<int> klo(d), khi(d), kk(d);
        for (int a = 0; a < d; ++a) {
            klo[a] = (int)std::floor(double(mn[a] - 2 * N) / N) - 1;
            khi[a] = (int)std::ceil(double(mx[a] + N) / N) + 1;
        }
        for (int a = 0; a < d; ++a) kk[a] = klo[a];
        while (true) {
            for (int axis = 0; axis < d; ++axis) {
                BoxGeometry box = make_box(N, kk, axis, +1);
                bool overlap = true;
                for (int a = 0; a < d; ++a)
                    if (box.hi[a] < mn[a] || box.lo[a] > mx[a]) { overlap = false; break; }
                if (!overlap) continue;
                if (path_crosses_box(geo.points, box)) {
                    crossed.push_back({axis, kk});
                    cache.emplace(std::make_pair(axis, kk), box_stats(env, box));
                }
            }
            int a = d - 1;
            while (a >= 0 && ++kk[a] > khi[a]) {
                kk[a] = klo[a];
                --a;
            }
            if (a < 0) break;
        }
        crossed_count[r] = (int64_t)crossed.size();

        for (const auto& [axis, kkc] : crossed) {
            BoxGeometry box = make_box(N, kkc, axis, +1);
            auto [vin, vout] = crossing_endpoints(geo.points, box);
            const BoxStats& st = cache.at({axis, kkc});
            xrows[r].push_back({fmt_int(r), detail::box_label(kkc, axis),
                                detail::box_class(kkc, axis, prm.spacing), point_str(vin),
                                point_str(vout), st.weight_max.str(), st.weight_sum.str(),
                                st.has_ratio ? st.min_ratio.str() : "none",
                                fmt_bool(st.clipped)});
        }

        for (size_t si = 0; si < s0s.size(); ++si)
            for (size_t di = 0; di < d0s.size(); ++di) {
                int cell = (int)(si * d0s.size() + di);
                bool cb = stats_black(cstats, bounded, s0s[si], base_rate + d0s[di]);
                central_black[r][cell] = cb;
                int64_t bc = 0;
                for (const auto& key : crossed)
                    if (stats_black(cache.at(key), bounded, s0s[si], base_rate + d0s[di])) ++bc;
                black_crossed[r][cell] = bc;
                Rat cpl(crossed_count[r], l1x);
                main.rows[(size_t)r * ncells + cell] = {
                    fmt_int(r),        s0s[si].str(),  d0s[di].str(), fmt_bool(cb),
                    fmt_int(crossed_count[r]), fmt_int(bc), cpl.str()};
            }

        // blackness is monotone in s0 and antitone in delta0 on the same
        // weights; verify per replica
        for (size_t di = 0; di < d0s.size(); ++di)
            for (size_t si = 0; si + 1 < s0s.size(); ++si)
                if (central_black[r][si * d0s.size() + di] >
                    central_black[r][(si + 1) * d0s.size() + di])
                    replica_monotone[r] = 0;
        for (size_t si = 0; si < s0s.size(); ++si)
            for (size_t di = 0; di + 1 < d0s.size(); ++di)
                if (central_black[r][si * d0s.size() + di] <
                    central_black[r][si * d0s.size() + di + 1])
                    replica_monotone[r] = 0;
    });

    for (int64_t r = 0; r < prm.reps; ++r)
        for (auto& row : xrows[r]) xtab.rows.push_back(std::move(row));

    bool mono = true;
    for (char c : replica_monotone) mono = mono && c;
    double mean_cross = 0;
    for (int64_t c : crossed_count) mean_cross += double(c) / double(l1x);
    mean_cross /= double(prm.reps);
    rep.aggregates.emplace_back("mean_crossings_per_l1", fmt_double(mean_cross));
    for (size_t si = 0; si < s0s.size(); ++si)
        for (size_t di = 0; di < d0s.size(); ++di) {
            int cell = (int)(si * d0s.size() + di);
            int64_t succ = 0;
            double bc = 0;
            for (int64_t r = 0; r < prm.reps; ++r) {
                succ += central_black[r][cell];
                bc += double(black_crossed[r][cell]) / double(l1x);
            }
            std::string key = "[s0=" + s0s[si].str() + ",delta0=" + d0s[di].str() + "]";
            rep.aggregates.emplace_back("p_black" + key, fmt_count(succ, prm.reps));
            rep.aggregates.emplace_back("wilson_lo" + key,
                                        fmt_double(wilson_lower(succ, prm.reps)));
            rep.aggregates.emplace_back("wilson_hi" + key,
                                        fmt_double(wilson_upper(succ, prm.reps)));
            rep.aggregates.emplace_back("mean_black_crossings_per_l1" + key,
                                        fmt_double(bc / double(prm.reps)));
        }
    rep.aggregates.emplace_back("sweep_monotone", fmt_bool(mono));
    rep.notes.push_back("sweep cells share weights per replica, so the coloring is monotone "
                        "in s0 and antitone in delta0 by construction");
    rep.tables.push_back(std::move(main));
    rep.tables.push_back(std::move(xtab));
    return rep;
}

// ---------------------------------------------------------------------------
// Direct estimate of the shifted time constant: mean T(0, x_n)/n per shift,
// with an independent replica stream per shift value.

inline ShiftCurve direct_shift_curve(const Distribution& dist, const std::vector<Rat>& xi,
                                     int64_t n, int reps, uint64_t seed,
                                     const std::vector<Rat>& b_grid, int pad = 0,
                                     int threads = 1) {
    if (b_grid.empty()) throw PreconditionError("direct_shift_curve: empty shift grid");
    Point x = scaled_target(xi, n);
    if (l1_norm(x) == 0) throw PreconditionError("direct_shift_curve: target is the origin");
    Window win = window_for_targets({x}, pad);
    Point source(win.d(), 0);
    const bool exact = dist.atomic();
    int32_t dst = win.index_of(x);

    ShiftCurve sc;
    sc.provenance = "direct";
    for (size_t bi = 0; bi < b_grid.size(); ++bi) {
        const Rat& b = b_grid[bi];
        if (dist.r0_exact() + b < Rat(0))
            throw PreconditionError("direct_shift_curve: shift drives weights negative");
        std::vector<double> vals(reps);
        uint64_t sb = derive_seed(seed, 0x5C00 + bi);
        parallel_for(reps, threads, [&](int64_t r) {
            if (exact) {
                Environment<long long> env = sample_environment_exact(dist, win, sb, (uint64_t)r);
                Environment<long long> envb = shift_environment(env, b);
                PassageField<long long> f = passage_times(envb, source);
                vals[r] = Rat(f.time[dst], envb.den).to_double() / double(n);
            } else {
                Environment<double> env = sample_environment_float(dist, win, sb, (uint64_t)r);
                Environment<double> envb = shift_environment(env, b.to_double());
                PassageField<double> f = passage_times(envb, source);
                vals[r] = f.time[dst] / double(n);
            }
        });
        MeanStderr ms = mean_stderr(vals);
        sc.b.push_back(b.to_double());
        sc.mu.push_back(ms.mean);
        sc.se.push_back(ms.se);
        sc.argmin.push_back(-1);
    }
    return sc;
}

// ---------------------------------------------------------------------------
// Normalized geodesic length against the dual length bracket, per (b, n).

struct SandwichExpParams {
    Distribution dist;
    std::vector<Rat> xi;
    std::vector<Rat> b_grid;
    std::vector<int64_t> n_grid;
    int reps = 50;
    uint64_t seed = 0;
    int64_t curve_n = 120;  // scale of the radial curves behind the bracket
    int curve_reps = 40;
    double alpha_hi = 3.0;
    int64_t budget = 1'000'000;
    int pad = 0;
    int threads = 1;
};

inline ExperimentReport hw_sandwich_experiment(const SandwichExpParams& prm) {
    if (!prm.dist.atomic())
        throw PreconditionError("sandwich: non-atomic law rejected (needs exact ties)");
    if (prm.b_grid.empty() || prm.n_grid.empty())
        throw PreconditionError("sandwich: empty grid");
    for (const Rat& b : prm.b_grid)
        if (prm.dist.r0_exact() + b < Rat(0))
            throw PreconditionError("sandwich: shift drives weights negative");

    double l1 = 0;
    for (const Rat& q : prm.xi) l1 += std::abs(q.to_double());
    std::vector<double> alphas = default_alpha_grid(l1, prm.alpha_hi);
    auto [g, gz] = build_radial_curves(prm.dist, prm.xi, alphas, prm.curve_n, prm.curve_reps,
                                       derive_seed(prm.seed, 0xC0), true, prm.threads);

    ExperimentReport rep;
    rep.name = "sandwich";
    std::string xis;
    for (size_t i = 0; i < prm.xi.size(); ++i) xis += (i ? "," : "") + prm.xi[i].str();
    rep.config = {{"dist", prm.dist.spec()},
                  {"xi", xis},
                  {"reps", fmt_int(prm.reps)},
                  {"seed", std::to_string(prm.seed)},
                  {"curve_n", fmt_int(prm.curve_n)},
                  {"curve_reps", fmt_int(prm.curve_reps)},
                  {"budget", fmt_int(prm.budget)}};

    Table tab;
    tab.name = "report";
    tab.columns = {"b",  "n",         "mean_lmin_n", "se_lmin", "mean_lmax_n",
                   "se_lmax", "lambda_lo", "lambda_hi",   "budget_exceeded", "ok"};

    int rows_ok = 0, rows_total = 0;
    for (int64_t n : prm.n_grid) {
        Point x = scaled_target(prm.xi, n);
        if (l1_norm(x) == 0) throw PreconditionError("sandwich: scaled target is the origin");
        Window win = window_for_targets({x}, prm.pad > 0 ? prm.pad : (int)std::max<int64_t>(16, n / 4));
        Point source(win.d(), 0);
        const int B = (int)prm.b_grid.size();
        std::vector<std::vector<double>> lmins(B, std::vector<double>(prm.reps));
        std::vector<std::vector<double>> lmaxs(B, std::vector<double>(prm.reps));
        std::vector<int64_t> nexceed(B, 0);
        std::mutex mu;
        uint64_t sn = derive_seed(prm.seed, 0xA000 + (uint64_t)n);
        parallel_for(prm.reps, prm.threads, [&](int64_t r) {
            Environment<long long> env = sample_environment_exact(prm.dist, win, sn, (uint64_t)r);
            for (int bi = 0; bi < B; ++bi) {
                Environment<long long> envb = shift_environment(env, prm.b_grid[bi]);
                Geodesic<long long> gmin = min_length_geodesic(envb, source, x);
                MaxGeodesic gmax = max_length_geodesic(envb, source, x, prm.budget);
                lmins[bi][r] = double(gmin.length) / double(n);
                lmaxs[bi][r] = double(gmax.length) / double(n);
                if (!gmax.exact) {
                    std::lock_guard<std::mutex> lk(mu);
                    ++nexceed[bi];
                }
            }
        });
        for (int bi = 0; bi < B; ++bi) {
            double b = prm.b_grid[bi].to_double();
            LambdaInterval lam_z = lambda_interval(gz, b, -1.0);
            LambdaInterval lam_g = lambda_interval(g, b, -1.0);
            MeanStderr m_lo = mean_stderr(lmins[bi]);
            MeanStderr m_hi = mean_stderr(lmaxs[bi]);
            bool ok = lam_z.lo <= m_lo.mean + 3 * m_lo.se && m_lo.mean <= m_hi.mean &&
                      m_hi.mean <= lam_g.hi + 3 * m_hi.se;
            rows_ok += ok;
            ++rows_total;
            tab.rows.push_back({prm.b_grid[bi].str(), fmt_int(n), fmt_double(m_lo.mean),
                                fmt_double(m_lo.se), fmt_double(m_hi.mean), fmt_double(m_hi.se),
                                fmt_double(lam_z.lo), fmt_double(lam_g.hi),
                                fmt_count(nexceed[bi], prm.reps), fmt_bool(ok)});
        }
    }
    rep.aggregates.emplace_back("rows_ok", fmt_count(rows_ok, rows_total));
    rep.notes.push_back("bracket endpoints use the within-2se level set of the radial curves; "
                        "row check allows 3se on the measured means");
    rep.tables.push_back(std::move(tab));
    return rep;
}

} // namespace fppkit
