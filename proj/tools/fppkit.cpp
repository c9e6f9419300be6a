// Command-line front end. Every subcommand that writes results produces a
// run directory containing one CSV per table plus manifest.json; the CSV
// bytes and their digests are reproducible from the recorded config and
// seed. Exit codes: 0 success, 2 bad config, 3 precondition violated,
// 4 inconclusive check, 1 anything else.

#include <cstdio>
#include <functional>
#include <iostream>

#include "CLI11.hpp"
#include "fppkit/config.hpp"
#include "fppkit/manifest.hpp"
#include "fppkit/restricted.hpp"

using namespace fppkit;

namespace {

struct Inconclusive : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GlobalOpts {
    uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;  // 0: FPPKIT_THREADS or hardware
    std::string mode = "exact";
    std::string out;
    bool force = false;
};

std::vector<Rat> parse_xi(const std::string& s) {
    std::vector<Rat> xi;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            xi.push_back(Rat::parse(cur));
            cur.clear();
        }
    };
    for (char c : s) {
        if (c == ',' || c == ' ') flush();
        else cur.push_back(c);
    }
    flush();
    if (xi.size() < 2) throw ConfigError("xi: need at least 2 coordinates");
    return xi;
}

Point parse_point(const std::string& s) {
    Point p;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            p.push_back(std::stoi(cur));
            cur.clear();
        }
    };
    for (char c : s) {
        if (c == ',' || c == ' ' || c == '(' || c == ')') flush();
        else if (c == '-' || (c >= '0' && c <= '9')) cur.push_back(c);
        else throw ConfigError("point: bad character in '" + s + "'");
    }
    flush();
    if (p.size() < 2) throw ConfigError("point: need at least 2 coordinates");
    return p;
}

std::string step_str(int code) {
    return std::string(step_sign(code) > 0 ? "+" : "-") + "e" + std::to_string(step_axis(code) + 1);
}

std::string join_argv(int argc, char** argv) {
    std::string s;
    for (int i = 0; i < argc; ++i) {
        if (i) s += " ";
        s += argv[i];
    }
    return s;
}

void print_and_emit(const ExperimentReport& rep, const GlobalOpts& g, const std::string& command,
                    const std::string& started) {
    for (const auto& [k, v] : rep.aggregates) std::printf("%s = %s\n", k.c_str(), v.c_str());
    for (const std::string& n : rep.notes) std::printf("note: %s\n", n.c_str());
    std::string out = g.out;
    if (out.empty()) out = "runs/" + rep.name;
    RunManifest meta;
    meta.command = command;
    meta.seed = g.seed;
    meta.threads = resolve_threads(g.threads);
    meta.mode = g.mode;
    meta.started = started;
    emit_results(rep, out, g.force, meta);
    std::printf("wrote %s/\n", out.c_str());
}

// ---------------------------------------------------------------------- //

void run_sample(const GlobalOpts& g, const std::string& dist_spec,
                const std::string& window_spec, int64_t replica, const std::string& command,
                const std::string& started) {
    Distribution dist = Distribution::parse(dist_spec);
    Window win = window_from_spec(window_spec);
    ExperimentReport rep;
    rep.name = "sample";
    rep.config = {{"dist", dist.spec()},
                  {"window", win.spec()},
                  {"replica", fmt_int(replica)},
                  {"seed", std::to_string(g.seed)},
                  {"mode", g.mode}};
    Table t;
    t.name = "report";
    t.columns = {"point", "axis", "weight"};
    if (g.mode == "exact") {
        Environment<long long> env = sample_environment_exact(dist, win, g.seed, (uint64_t)replica);
        for (int32_t idx = 0; idx < win.vertex_count(); ++idx)
            for (int a = 0; a < win.d(); ++a) {
                if (!win.edge_slot_valid(idx, a)) continue;
                t.rows.push_back({point_str(win.point_of(idx)), fmt_int(a),
                                  Rat(env.weights[win.edge_slot(idx, a)], env.den).str()});
            }
        rep.aggregates.emplace_back("ticks_per_unit", fmt_int(env.den));
    } else {
        Environment<double> env = sample_environment_float(dist, win, g.seed, (uint64_t)replica);
        for (int32_t idx = 0; idx < win.vertex_count(); ++idx)
            for (int a = 0; a < win.d(); ++a) {
                if (!win.edge_slot_valid(idx, a)) continue;
                t.rows.push_back({point_str(win.point_of(idx)), fmt_int(a),
                                  fmt_double(env.weights[win.edge_slot(idx, a)])});
            }
    }
    rep.aggregates.emplace_back("edges", fmt_int((int64_t)t.rows.size()));
    rep.tables.push_back(std::move(t));
    print_and_emit(rep, g, command, started);
}

void run_geodesic(const GlobalOpts& g, const std::string& dist_spec,
                  const std::string& target_spec, const std::string& window_spec,
                  const std::string& shift_spec, int64_t budget, int64_t replica, int pad,
                  const std::string& command, const std::string& started) {
    Distribution dist = Distribution::parse(dist_spec);
    Point x = parse_point(target_spec);
    Window win = window_spec.empty() ? window_for_targets({x}, pad) : window_from_spec(window_spec);
    Point source(win.d(), 0);
    ExperimentReport rep;
    rep.name = "geodesic";
    rep.config = {{"dist", dist.spec()},     {"target", point_str(x)},
                  {"window", win.spec()},    {"shift", shift_spec},
                  {"budget", fmt_int(budget)}, {"replica", fmt_int(replica)},
                  {"seed", std::to_string(g.seed)}, {"mode", g.mode}};
    Table t;
    t.name = "report";
    t.columns = {"hop", "step", "point"};
    if (g.mode == "exact") {
        Rat b = Rat::parse(shift_spec);
        Environment<long long> env = sample_environment_exact(dist, win, g.seed, (uint64_t)replica);
        Environment<long long> envb = shift_environment(env, b);
        Geodesic<long long> geo = min_length_geodesic(envb, source, x);
        MaxGeodesic mx = max_length_geodesic(envb, source, x, budget);
        t.rows.push_back({"0", "", point_str(geo.points[0])});
        for (size_t i = 0; i < geo.steps.size(); ++i)
            t.rows.push_back({fmt_int((int64_t)i + 1), step_str(geo.steps[i]),
                              point_str(geo.points[i + 1])});
        rep.aggregates.emplace_back("t", (Rat(geo.time, 1) / Rat(envb.den)).str());
        rep.aggregates.emplace_back("l_min", fmt_int(geo.length));
        rep.aggregates.emplace_back("l_max", fmt_int(mx.length));
        rep.aggregates.emplace_back("lmax_exact", fmt_bool(mx.exact));
    } else {
        double b = std::stod(shift_spec);
        Environment<double> env = sample_environment_float(dist, win, g.seed, (uint64_t)replica);
        Environment<double> envb = shift_environment(env, b);
        Geodesic<double> geo = min_length_geodesic(envb, source, x, 1e-9);
        t.rows.push_back({"0", "", point_str(geo.points[0])});
        for (size_t i = 0; i < geo.steps.size(); ++i)
            t.rows.push_back({fmt_int((int64_t)i + 1), step_str(geo.steps[i]),
                              point_str(geo.points[i + 1])});
        rep.aggregates.emplace_back("t", fmt_double(geo.time));
        rep.aggregates.emplace_back("l_min", fmt_int(geo.length));
        rep.notes.push_back("float mode: maximal geodesic length skipped (tie detection "
                            "needs exact arithmetic)");
    }
    rep.tables.push_back(std::move(t));
    print_and_emit(rep, g, command, started);
}

void run_restricted(const GlobalOpts& g, const std::string& dist_spec,
                    const std::string& target_spec, int64_t K, const std::string& window_spec,
                    int64_t replica, bool check_t, int64_t budget, const std::string& command,
                    const std::string& started) {
    if (g.mode != "exact") throw PreconditionError("restricted: exact mode only");
    Distribution dist = Distribution::parse(dist_spec);
    Point x = parse_point(target_spec);
    Window win = window_spec.empty() ? window_for_cone(x, K) : window_from_spec(window_spec);
    Point source(win.d(), 0);
    Environment<long long> env = sample_environment_exact(dist, win, g.seed, (uint64_t)replica);
    TraceResult<long long> tr = restricted_trace_single(env, source, x, K);

    ExperimentReport rep;
    rep.name = "restricted";
    rep.config = {{"dist", dist.spec()},  {"target", point_str(x)},
                  {"k", fmt_int(K)},      {"window", win.spec()},
                  {"replica", fmt_int(replica)}, {"seed", std::to_string(g.seed)},
                  {"mode", g.mode}};
    Table t;
    t.name = "report";
    t.columns = {"k", "g", "gz"};
    const long long INF = weight_inf<long long>();
    for (int64_t k = 0; k <= K; ++k)
        t.rows.push_back({fmt_int(k),
                          tr.g[k] >= INF ? "inf" : Rat(tr.g[k], env.den).str(),
                          tr.gz[k] >= INF ? "inf" : Rat(tr.gz[k], env.den).str()});
    rep.aggregates.emplace_back("clipped", fmt_bool(tr.clipped));
    rep.aggregates.emplace_back("peak_layers", fmt_int(tr.peak_layers));
    if (check_t) {
        TFromGReport chk = check_T_from_G(env, source, {x}, K, budget);
        const char* status = chk.status == CheckStatus::ok ? "ok"
                             : chk.status == CheckStatus::fail ? "fail"
                                                               : "inconclusive";
        rep.aggregates.emplace_back("t_from_g", status);
        rep.tables.push_back(std::move(t));
        print_and_emit(rep, g, command, started);
        if (chk.status == CheckStatus::inconclusive)
            throw Inconclusive("k may be below the maximal geodesic length; raise --k");
        if (chk.status == CheckStatus::fail)
            throw std::runtime_error("restricted check failed: inf_k G_zero != T");
        return;
    }
    rep.tables.push_back(std::move(t));
    print_and_emit(rep, g, command, started);
}

void run_shape(const GlobalOpts& g, const std::string& dist_spec, const std::string& xi_spec,
               int64_t n, int reps, const std::string& alphas_spec, double alpha_hi,
               const std::string& command, const std::string& started) {
    Distribution dist = Distribution::parse(dist_spec);
    std::vector<Rat> xi = parse_xi(xi_spec);
    double l1 = 0;
    for (const Rat& q : xi) l1 += std::abs(q.to_double());
    std::vector<double> alphas;
    if (alphas_spec.empty()) {
        alphas = default_alpha_grid(l1, alpha_hi);
    } else {
        Config tmp = Config::parse_text("alphas=" + alphas_spec, "<cli>");
        alphas = tmp.get_double_list("alphas", "");
    }
    auto [gc, gzc] = build_radial_curves(dist, xi, alphas, n, reps, g.seed, g.mode == "exact",
                                         g.threads);
    ExperimentReport rep;
    rep.name = "shape";
    rep.config = {{"dist", dist.spec()}, {"xi", xi_spec},
                  {"n", fmt_int(n)},     {"reps", fmt_int(reps)},
                  {"seed", std::to_string(g.seed)}, {"mode", g.mode}};
    Table t;
    t.name = "report";
    t.columns = {"zero_steps", "alpha", "value", "se"};
    for (int pass = 0; pass < 2; ++pass) {
        const RadialCurve& c = pass ? gzc : gc;
        for (size_t i = 0; i < c.alpha.size(); ++i)
            t.rows.push_back({fmt_bool(pass == 1), fmt_double(c.alpha[i]),
                              fmt_double(c.value[i]), fmt_double(c.se[i])});
    }
    rep.aggregates.emplace_back("x_n", point_str(gc.x_n));
    rep.aggregates.emplace_back("clipped", fmt_bool(gc.clipped || gzc.clipped));
    rep.aggregates.emplace_back("boundary_value", fmt_double(gc.boundary_value));
    rep.tables.push_back(std::move(t));
    print_and_emit(rep, g, command, started);
}

void run_duality(const GlobalOpts& g, const std::string& dist_spec, const std::string& xi_spec,
                 int64_t n, int reps, const std::string& alphas_spec, double alpha_hi,
                 const std::string& b_grid_spec, int64_t direct_n, int direct_reps,
                 const std::string& command, const std::string& started) {
    Distribution dist = Distribution::parse(dist_spec);
    std::vector<Rat> xi = parse_xi(xi_spec);
    double l1 = 0;
    for (const Rat& q : xi) l1 += std::abs(q.to_double());
    std::vector<double> alphas;
    if (alphas_spec.empty()) {
        alphas = default_alpha_grid(l1, alpha_hi);
    } else {
        Config tmp = Config::parse_text("alphas=" + alphas_spec, "<cli>");
        alphas = tmp.get_double_list("alphas", "");
    }
    Config bg = Config::parse_text("b_grid=" + b_grid_spec, "<cli>");
    std::vector<Rat> b_grid = bg.get_rat_list("b_grid", "");
    std::vector<double> b_dbl;
    for (const Rat& b : b_grid) b_dbl.push_back(b.to_double());

    auto [gc, gzc] = build_radial_curves(dist, xi, alphas, n, reps, g.seed, g.mode == "exact",
                                         g.threads);
    ShiftCurve dual = mu_from_g(gc, b_dbl);
    if (direct_n <= 0) direct_n = n;
    if (direct_reps <= 0) direct_reps = reps;
    ShiftCurve direct = direct_shift_curve(dist, xi, direct_n, direct_reps,
                                           derive_seed(g.seed, 0xD1), b_grid, 0, g.threads);

    ExperimentReport rep;
    rep.name = "duality";
    rep.config = {{"dist", dist.spec()},   {"xi", xi_spec},
                  {"n", fmt_int(n)},       {"reps", fmt_int(reps)},
                  {"direct_n", fmt_int(direct_n)}, {"direct_reps", fmt_int(direct_reps)},
                  {"b_grid", b_grid_spec}, {"seed", std::to_string(g.seed)},
                  {"mode", g.mode}};

    Table rc;
    rc.name = "radial_curve";
    rc.columns = {"zero_steps", "alpha", "value", "se"};
    for (int pass = 0; pass < 2; ++pass) {
        const RadialCurve& c = pass ? gzc : gc;
        for (size_t i = 0; i < c.alpha.size(); ++i)
            rc.rows.push_back({fmt_bool(pass == 1), fmt_double(c.alpha[i]),
                               fmt_double(c.value[i]), fmt_double(c.se[i])});
    }
    Table sd;
    sd.name = "shift_curve_dual";
    sd.columns = {"b", "mu", "se", "argmin_alpha"};
    for (size_t i = 0; i < dual.b.size(); ++i)
        sd.rows.push_back({b_grid[i].str(), fmt_double(dual.mu[i]), fmt_double(dual.se[i]),
                           fmt_double(gc.alpha[dual.argmin[i]])});
    Table sx;
    sx.name = "shift_curve_direct";
    sx.columns = {"b", "mu", "se"};
    for (size_t i = 0; i < direct.b.size(); ++i)
        sx.rows.push_back({b_grid[i].str(), fmt_double(direct.mu[i]), fmt_double(direct.se[i])});
    Table lam;
    lam.name = "lambda";
    lam.columns = {"b", "lo", "hi", "lo_exact", "hi_exact"};
    for (size_t i = 0; i < b_grid.size(); ++i) {
        LambdaInterval soft_lo = lambda_interval(gzc, b_dbl[i], -1.0);
        LambdaInterval soft_hi = lambda_interval(gc, b_dbl[i], -1.0);
        LambdaInterval hard_lo = lambda_interval(gzc, b_dbl[i], 0.0);
        LambdaInterval hard_hi = lambda_interval(gc, b_dbl[i], 0.0);
        lam.rows.push_back({b_grid[i].str(), fmt_double(soft_lo.lo), fmt_double(soft_hi.hi),
                            fmt_double(hard_lo.lo), fmt_double(hard_hi.hi)});
    }
    ShiftCurve mu0 = mu_from_g(gc, {0.0});
    TrichotomyReport tri = trichotomy_report(gc, gzc, mu0.mu[0], mu0.se[0]);
    Table tt;
    tt.name = "trichotomy";
    tt.columns = {"alpha", "g", "gz", "label"};
    for (const TrichotomyRow& row : tri.rows)
        tt.rows.push_back({fmt_double(row.alpha), fmt_double(row.g), fmt_double(row.gz),
                           row.label});

    EnvelopeShapeReport env_shape = check_envelope_shape(gc, b_dbl);
    ConcavityReport conc = check_strict_concavity(direct);
    // The slide toward the left edge is a large-shift statement; evaluating it
    // is pure arithmetic on the measured curve, so extend the grid well past
    // the user's largest b.
    std::vector<double> b_ext = b_dbl;
    double b_top = std::max(50.0, (b_dbl.empty() ? 0.0 : b_dbl.back()) * 10.0);
    for (double f : {0.25, 0.5, 1.0}) b_ext.push_back(b_top * f);
    DerivativeLimitReport dlim = check_derivative_limit(gc, b_ext);
    rep.aggregates.emplace_back("mu0", fmt_double(mu0.mu[0]));
    rep.aggregates.emplace_back("mu0_se", fmt_double(mu0.se[0]));
    rep.aggregates.emplace_back("envelope_increasing_ok", fmt_bool(env_shape.increasing_ok));
    rep.aggregates.emplace_back("envelope_concave_ok", fmt_bool(env_shape.concave_ok));
    rep.aggregates.emplace_back("direct_concave_ok", fmt_bool(conc.concave_ok));
    rep.aggregates.emplace_back("direct_strict_ok", fmt_bool(conc.strict_ok));
    rep.aggregates.emplace_back("derivative_limit_ok", fmt_bool(dlim.limit_ok));
    rep.aggregates.emplace_back("trichotomy_pattern_ok", fmt_bool(tri.pattern_ok));
    for (size_t i = 0; i < b_grid.size(); ++i) {
        double diff = std::abs(dual.mu[i] - direct.mu[i]);
        double comb = std::sqrt(dual.se[i] * dual.se[i] + direct.se[i] * direct.se[i]);
        rep.aggregates.emplace_back("dual_vs_direct[b=" + b_grid[i].str() + "]",
                                    fmt_double(diff) + " (3se=" + fmt_double(3 * comb) + ")");
    }
    rep.tables.push_back(std::move(rc));
    rep.tables.push_back(std::move(sd));
    rep.tables.push_back(std::move(sx));
    rep.tables.push_back(std::move(lam));
    rep.tables.push_back(std::move(tt));
    print_and_emit(rep, g, command, started);
}

void run_experiment(const GlobalOpts& g_in, const std::string& kind,
                    const std::string& config_path, const std::string& command,
                    const std::string& started) {
    GlobalOpts g = g_in;
    Config cfg = Config::parse_file(config_path);
    uint64_t seed = cfg.get_seed("seed", 0);
    if (g.seed_set) seed = g.seed;
    g.seed = seed;
    int threads = resolve_threads(g.threads);

    ExperimentReport rep;
    if (kind == "ratio") {
        RatioParams p;
        p.dist = Distribution::parse(cfg.get_str("dist"));
        p.targets = cfg.get_points("targets");
        p.reps = (int)cfg.get_int("reps", 100);
        p.seed = seed;
        p.delta_grid = cfg.get_double_list("delta_grid", "0.01 0.02 0.05 0.1 0.2");
        p.pad = (int)cfg.get_int("pad", 0);
        p.threads = threads;
        cfg.finish();
        rep = geodesic_ratio_experiment(p);
    } else if (kind == "gap") {
        GapParams p;
        p.dist = Distribution::parse(cfg.get_str("dist"));
        p.b = cfg.get_rat("b", Rat(0));
        p.targets = cfg.get_points("targets");
        p.reps = (int)cfg.get_int("reps", 100);
        p.seed = seed;
        p.d_grid = cfg.get_double_list("d_grid", "0.005 0.01 0.02 0.05 0.1");
        p.budget = cfg.get_int("budget", 1'000'000);
        p.pad = (int)cfg.get_int("pad", 0);
        p.threads = threads;
        cfg.finish();
        rep = length_gap_experiment(p);
    } else if (kind == "singularities") {
        SingularParams p;
        p.r = cfg.get_rat("r");
        p.s = cfg.get_rat("s");
        p.r0 = cfg.get_rat("r0", p.r);
        p.l_max = cfg.get_int("l_max", 20);
        p.m_max = cfg.get_int("m_max", 50);
        p.lo = cfg.get_rat("lo", Rat(0) - p.r0);
        p.hi = cfg.get_rat("hi", Rat(5));
        cfg.finish();
        rep = singularity_experiment(p);
    } else if (kind == "blackbox") {
        BlackBoxExpParams p;
        p.dist = Distribution::parse(cfg.get_str("dist"));
        p.N = (int)cfg.get_int("n", 4);
        p.s0_grid = cfg.get_rat_list("s0_grid", "");
        p.delta0_grid = cfg.get_rat_list("delta0_grid", "");
        p.target = cfg.get_points("target").front();
        p.reps = (int)cfg.get_int("reps", 50);
        p.seed = seed;
        p.spacing = (int)cfg.get_int("spacing", 4);
        p.pad = (int)cfg.get_int("pad", 0);
        p.threads = threads;
        cfg.finish();
        rep = black_box_experiment(p);
    } else if (kind == "sandwich") {
        SandwichExpParams p;
        p.dist = Distribution::parse(cfg.get_str("dist"));
        {
            Config tmp = Config::parse_text("xi=" + cfg.get_str("xi"), "<xi>");
            p.xi = tmp.get_rat_list("xi", "");
        }
        p.b_grid = cfg.get_rat_list("b_grid", "0 1/2 1");
        p.n_grid = cfg.get_int_list("n_grid", "50 100");
        p.reps = (int)cfg.get_int("reps", 50);
        p.seed = seed;
        p.curve_n = cfg.get_int("curve_n", 120);
        p.curve_reps = (int)cfg.get_int("curve_reps", 40);
        p.alpha_hi = cfg.get_double("alpha_hi", 3.0);
        p.budget = cfg.get_int("budget", 1'000'000);
        p.pad = (int)cfg.get_int("pad", 0);
        p.threads = threads;
        cfg.finish();
        rep = hw_sandwich_experiment(p);
    } else {
        throw ConfigError("unknown experiment kind '" + kind +
                          "' (expected ratio|gap|singularities|blackbox|sandwich)");
    }
    print_and_emit(rep, g, command, started);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-passage percolation toolkit"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    auto* seed_opt = app.add_option("--seed", g.seed, "master seed (default 0)");
    app.add_option("--threads", g.threads, "worker threads (default: FPPKIT_THREADS or all cores)");
    app.add_option("--mode", g.mode, "exact|float (default exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    app.add_option("--out", g.out, "output directory (default runs/<command>)");
    app.add_flag("--force", g.force, "allow writing into a nonempty output directory");

    std::string dist_spec, window_spec, target_spec, xi_spec, alphas_spec, b_grid_spec;
    std::string shift_spec = "0", config_path, kind;
    int64_t replica = 0, K = 0, n = 100, budget = 1'000'000, direct_n = 0;
    int reps = 50, direct_reps = 0, pad = 0;
    double alpha_hi = 3.0;
    bool check_t = false;

    auto* sample = app.add_subcommand("sample", "draw one weight configuration");
    sample->add_option("--dist", dist_spec, "weight law, e.g. bern:0.3:0:1")->required();
    sample->add_option("--window", window_spec, "half-widths, e.g. 8x8")->required();
    sample->add_option("--replica", replica, "replica index (default 0)");

    auto* geodesic = app.add_subcommand("geodesic", "passage time and geodesic lengths 0 -> x");
    geodesic->add_option("--dist", dist_spec)->required();
    geodesic->add_option("--target", target_spec, "e.g. (60,60)")->required();
    geodesic->add_option("--window", window_spec, "default: fits the target plus padding");
    geodesic->add_option("--shift", shift_spec, "add b to every weight (rational)");
    geodesic->add_option("--budget", budget, "max-length search budget");
    geodesic->add_option("--replica", replica);
    geodesic->add_option("--pad", pad, "window padding around the target");

    auto* restricted = app.add_subcommand("restricted", "hop-constrained values G, G0 at a target");
    restricted->add_option("--dist", dist_spec)->required();
    restricted->add_option("--target", target_spec)->required();
    restricted->add_option("--k", K, "hop bound")->required();
    restricted->add_option("--window", window_spec, "default: cone window for k hops");
    restricted->add_option("--replica", replica);
    restricted->add_flag("--check-t", check_t, "verify inf_k G0 equals the passage time");
    restricted->add_option("--budget", budget, "max-length budget for the check");

    auto* shape = app.add_subcommand("shape", "radial curves alpha * g(xi/alpha)");
    shape->add_option("--dist", dist_spec)->required();
    shape->add_option("--xi", xi_spec, "direction, e.g. 1,0 or 1/2,1/2")->required();
    shape->add_option("--n", n, "scale (default 100)");
    shape->add_option("--reps", reps, "replicas (default 50)");
    shape->add_option("--alphas", alphas_spec, "explicit alpha grid");
    shape->add_option("--alpha-hi", alpha_hi, "auto grid upper end (default 3)");

    auto* duality = app.add_subcommand("duality", "dual reconstruction of the shift curve");
    duality->add_option("--dist", dist_spec)->required();
    duality->add_option("--xi", xi_spec)->required();
    duality->add_option("--n", n, "radial curve scale");
    duality->add_option("--reps", reps, "radial curve replicas");
    duality->add_option("--alphas", alphas_spec);
    duality->add_option("--alpha-hi", alpha_hi);
    duality->add_option("--b-grid", b_grid_spec, "shift grid (rationals)")->required();
    duality->add_option("--direct-n", direct_n, "direct curve scale (default n)");
    duality->add_option("--direct-reps", direct_reps, "direct curve replicas (default reps)");

    auto* experiment = app.add_subcommand("experiment", "replicated experiment from a config file");
    experiment->add_option("kind", kind, "ratio|gap|singularities|blackbox|sandwich")->required();
    experiment->add_option("--config", config_path, "key=value config file")->required();

    std::string command = join_argv(argc, argv);
    std::string started = iso8601_now();

    try {
        app.parse(argc, argv);
        g.seed_set = seed_opt->count() > 0;
        if (sample->parsed()) run_sample(g, dist_spec, window_spec, replica, command, started);
        else if (geodesic->parsed())
            run_geodesic(g, dist_spec, target_spec, window_spec, shift_spec, budget, replica,
                         pad, command, started);
        else if (restricted->parsed())
            run_restricted(g, dist_spec, target_spec, K, window_spec, replica, check_t, budget,
                           command, started);
        else if (shape->parsed())
            run_shape(g, dist_spec, xi_spec, n, reps, alphas_spec, alpha_hi, command, started);
        else if (duality->parsed())
            run_duality(g, dist_spec, xi_spec, n, reps, alphas_spec, alpha_hi, b_grid_spec,
                        direct_n, direct_reps, command, started);
        else if (experiment->parsed())
            run_experiment(g, kind, config_path, command, started);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Inconclusive& e) {
        std::fprintf(stderr, "inconclusive: %s\n", e.what());
        return 4;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const DistParseError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const PreconditionError& e) {
        std::fprintf(stderr, "precondition: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
