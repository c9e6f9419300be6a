#pragma once

// Hop-constrained passage values.
//
//   G[k][x]  — cheapest total weight of a walk source -> x of exactly k
//              nearest-neighbor steps (finite iff k >= |x|_1 with matching
//              parity).
//   Gz[k][x] — same but each step may also be a zero-step (stay in place,
//              always free), so Gz[k][x] = min_{j<=k, j reachable} G[j][x]
//              and Gz is nonincreasing in k.
//
// Both are layered Bellman relaxations over the window. Negative weights
// (from down-shifts) are fine here: the hop bound replaces nonnegativity.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "environment.hpp"
#include "passage.hpp"

namespace fppkit {

struct RestrictedOptions {
    bool keep_all_layers = false;     // retain every hop layer (small K only)
    bool want_g = true;
    bool want_gz = true;
    std::vector<Point> trace_targets; // record value at these points for every k
};

template <class W>
struct RestrictedField {
    Point source;
    int64_t K = 0;
    // keep_all_layers: [k][vertex]; otherwise only the final layer is kept.
    std::vector<std::vector<W>> g_layers, gz_layers;
    std::vector<W> g_final, gz_final;
    // Per trace target, value at every k (weight_inf where undefined).
    std::vector<std::vector<W>> g_trace, gz_trace;
    int peak_layers = 0;              // most hop layers held at once
    bool clipped = false;             // finite mass reached the window boundary
    bool k_exceeds_window = false;
};

template <class W>
RestrictedField<W> restricted_passage(const Environment<W>& env, const Point& source,
                                      int64_t K, const RestrictedOptions& opts = {}) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    if (!win.contains(source))
        throw PreconditionError("restricted_passage: source outside window");
    const int64_t nv = win.vertex_count();
    const W INF = weight_inf<W>();
    std::vector<uint32_t> masks = win.step_masks();
    int32_t src = win.index_of(source);

    RestrictedField<W> f;
    f.source = source;
    f.K = K;
    int minhalf = *std::min_element(win.half_widths().begin(), win.half_widths().end());
    f.k_exceeds_window = K > minhalf;

    std::vector<int32_t> tti;  // trace target indices
    for (const Point& t : opts.trace_targets) {
        if (!win.contains(t)) throw PreconditionError("restricted_passage: trace target outside window");
        tti.push_back(win.index_of(t));
    }
    f.g_trace.assign(tti.size(), std::vector<W>(K + 1, INF));
    f.gz_trace.assign(tti.size(), std::vector<W>(K + 1, INF));

    std::vector<W> g_prev(nv, INF), g_cur, gz_prev(nv, INF), gz_cur;
    if (opts.want_g) g_prev[src] = W(0);
    if (opts.want_gz) gz_prev[src] = W(0);
    g_cur = gz_cur = std::vector<W>(nv, INF);
    f.peak_layers = opts.keep_all_layers ? 1 : 2;

    auto record_layer = [&](int64_t k, const std::vector<W>& g, const std::vector<W>& gz) {
        if (opts.keep_all_layers) {
            if (opts.want_g) f.g_layers.push_back(g);
            if (opts.want_gz) f.gz_layers.push_back(gz);
            f.peak_layers = std::max<int>(f.peak_layers, (int)(k + 2));
        }
        for (size_t i = 0; i < tti.size(); ++i) {
            if (opts.want_g) f.g_trace[i][k] = g[tti[i]];
            if (opts.want_gz) f.gz_trace[i][k] = gz[tti[i]];
        }
    };
    record_layer(0, g_prev, gz_prev);

    for (int64_t k = 1; k <= K; ++k) {
        for (int32_t v = 0; v < nv; ++v) {
            W bg = INF, bz = opts.want_gz ? gz_prev[v] : INF;
            uint32_t m = masks[v];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = step_axis(c);
                int32_t u = step_sign(c) > 0 ? v + win.stride(a) : v - win.stride(a);
                W w = step_sign(c) > 0 ? env.weights[(int64_t)v * d + a]
                                       : env.weights[(int64_t)u * d + a];
                if (opts.want_g && g_prev[u] < INF) bg = std::min(bg, g_prev[u] + w);
                if (opts.want_gz && gz_prev[u] < INF) bz = std::min(bz, gz_prev[u] + w);
            }
            g_cur[v] = bg;
            gz_cur[v] = bz;
        }
        record_layer(k, g_cur, gz_cur);
        std::swap(g_prev, g_cur);
        std::swap(gz_prev, gz_cur);
    }
    if (opts.want_g) f.g_final = std::move(g_prev);
    if (opts.want_gz) f.gz_final = std::move(gz_prev);

    // Window-clipping warning: mass on the boundary means larger windows
    // could change values.
    const std::vector<W>& fin = opts.want_gz ? f.gz_final : f.g_final;
    for (int32_t v = 0; v < nv && !f.clipped; ++v) {
        if (fin[v] >= INF) continue;
        for (int a = 0; a < d && !f.clipped; ++a) {
            int c = win.coord(v, a);
            if (c == win.half_widths()[a] || c == -win.half_widths()[a]) f.clipped = true;
        }
    }
    return f;
}

// Fast single-target variant: iterates only over vertices y that some
// admissible <=K-step source->target walk can visit at hop k, i.e.
// |y - source|_1 <= k and |y - target|_1 <= K - k. Values recorded at the
// target for every k are exact; other vertices are not reported.
template <class W>
struct TraceResult {
    std::vector<W> g, gz;  // indexed by hop count 0..K
    bool clipped = false;
    int peak_layers = 2;
};

template <class W>
TraceResult<W> restricted_trace_single(const Environment<W>& env, const Point& source,
                                       const Point& target, int64_t K) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    if (!win.contains(source) || !win.contains(target))
        throw PreconditionError("restricted_trace_single: endpoint outside window");
    const int64_t nv = win.vertex_count();
    const W INF = weight_inf<W>();
    std::vector<uint32_t> masks = win.step_masks();
    const int32_t src = win.index_of(source), dst = win.index_of(target);

    TraceResult<W> r;
    r.g.assign(K + 1, INF);
    r.gz.assign(K + 1, INF);

    // Two stamped layer buffers; a cell is valid for layer k only when its
    // stamp says so, which avoids clearing whole arrays between layers.
    struct Layer {
        std::vector<W> g, gz;
        std::vector<int32_t> stamp;
    };
    Layer buf[2];
    for (Layer& b : buf) {
        b.g.assign(nv, INF);
        b.gz.assign(nv, INF);
        b.stamp.assign(nv, -1);
    }
    buf[0].g[src] = buf[0].gz[src] = W(0);
    buf[0].stamp[src] = 0;
    if (src == dst) r.g[0] = r.gz[0] = W(0);

    // Recursive band iteration: visit exactly the active cells of layer k.
    std::vector<int> y(d);
    const auto& half = win.half_widths();
    auto cell_range = [&](int axis, int64_t bs, int64_t bt) {
        int lo = std::max({source[axis] - (int)bs, target[axis] - (int)bt, -half[axis]});
        int hi = std::min({source[axis] + (int)bs, target[axis] + (int)bt, half[axis]});
        return std::pair<int, int>(lo, hi);
    };

    for (int64_t k = 1; k <= K; ++k) {
        Layer& cur = buf[k & 1];
        Layer& prev = buf[(k - 1) & 1];
        const int64_t bs0 = k, bt0 = K - k;

        // Depth-first over axes 0..d-2, innermost axis linear.
        struct AxisFrame { int axis; int yv, hi; int64_t bs, bt; int32_t base; };
        std::vector<AxisFrame> fr;
        auto descend = [&](int axis, int64_t bs, int64_t bt, int32_t base) -> bool {
            auto [lo, hi] = cell_range(axis, bs, bt);
            if (lo > hi) return false;
            fr.push_back({axis, lo, hi, bs, bt, base});
            return true;
        };
        if (descend(0, bs0, bt0, 0)) {
            while (!fr.empty()) {
                AxisFrame& t = fr.back();
                if (t.yv > t.hi) {
                    fr.pop_back();
                    if (!fr.empty()) ++fr.back().yv;
                    continue;
                }
                y[t.axis] = t.yv;
                int64_t bs = t.bs - std::abs(t.yv - source[t.axis]);
                int64_t bt = t.bt - std::abs(t.yv - target[t.axis]);
                int32_t base = t.base + (int32_t)((int64_t)(t.yv + half[t.axis]) * win.stride(t.axis));
                if (t.axis + 1 < d - 1) {
                    if (!descend(t.axis + 1, bs, bt, base)) ++t.yv;
                    continue;
                }
                // Innermost axis: contiguous run of indices.
                int la = d - 1;
                auto [lo, hi] = cell_range(la, bs, bt);
                for (int yl = lo; yl <= hi; ++yl) {
                    int32_t idx = base + (yl + half[la]);
                    W bg = INF, bz = INF;
                    if (prev.stamp[idx] == (int32_t)k - 1) bz = prev.gz[idx];
                    uint32_t m = masks[idx];
                    for (int c = 0; c < nsteps; ++c) {
                        if (!(m >> c & 1)) continue;
                        int a = step_axis(c);
                        int32_t u = step_sign(c) > 0 ? idx + win.stride(a) : idx - win.stride(a);
                        if (prev.stamp[u] != (int32_t)k - 1) continue;
                        W w = step_sign(c) > 0 ? env.weights[(int64_t)idx * d + a]
                                               : env.weights[(int64_t)u * d + a];
                        if (prev.g[u] < INF) bg = std::min(bg, prev.g[u] + w);
                        if (prev.gz[u] < INF) bz = std::min(bz, prev.gz[u] + w);
                    }
                    cur.g[idx] = bg;
                    cur.gz[idx] = bz;
                    cur.stamp[idx] = (int32_t)k;
                    if ((bg < INF || bz < INF)) {
                        y[la] = yl;
                        for (int a = 0; a < d && !r.clipped; ++a)
                            if (y[a] == half[a] || y[a] == -half[a]) r.clipped = true;
                    }
                }
                if (!fr.empty()) ++fr.back().yv;
            }
        }
        if (cur.stamp[dst] == (int32_t)k) {
            r.g[k] = cur.g[dst];
            r.gz[k] = cur.gz[dst];
        }
    }
    return r;
}

// Exact consistency of the zero-step relation and monotonicity:
//   Gz[k][x] = min_{j <= k} G[j][x]  and  Gz nonincreasing in k.
struct GzRelationReport {
    bool identity_ok = true;
    bool monotone_ok = true;
};

template <class W>
GzRelationReport check_G_zero_relation(const Environment<W>& env, const Point& source,
                                       int64_t K) {
    RestrictedOptions opts;
    opts.keep_all_layers = true;
    RestrictedField<W> f = restricted_passage(env, source, K, opts);
    const W INF = weight_inf<W>();
    GzRelationReport rep;
    const int64_t nv = env.window.vertex_count();
    for (int64_t k = 0; k <= K; ++k) {
        for (int32_t v = 0; v < nv; ++v) {
            W run = INF;
            for (int64_t j = 0; j <= k; ++j)
                if (f.g_layers[j][v] < INF) run = std::min(run, f.g_layers[j][v]);
            if (f.gz_layers[k][v] != run) rep.identity_ok = false;
            if (k > 0 && f.gz_layers[k][v] > f.gz_layers[k - 1][v]) rep.monotone_ok = false;
        }
    }
    return rep;
}

// T(source, x) must equal Gz[K][x] once K is at least the maximal geodesic
// length. If equality fails but K might simply be too small, the verdict is
// inconclusive rather than a failure.
enum class CheckStatus { ok, inconclusive, fail };

struct TFromGReport {
    CheckStatus status = CheckStatus::ok;
    std::vector<Point> mismatches;
};

template <class W>
TFromGReport check_T_from_G(const Environment<W>& env, const Point& source,
                            const std::vector<Point>& targets, int64_t K,
                            int64_t lmax_budget = 1'000'000) {
    PassageField<W> T = passage_times(env, source);
    RestrictedOptions opts;
    opts.want_g = false;
    RestrictedField<W> f = restricted_passage(env, source, K, opts);
    TFromGReport rep;
    bool maybe_small = false;
    for (const Point& x : targets) {
        int32_t idx = env.window.index_of(x);
        if (f.gz_final[idx] == T.time[idx]) continue;
        rep.mismatches.push_back(x);
        MaxGeodesic mg = max_length_geodesic(env, source, x, lmax_budget);
        if (K < mg.length || !mg.exact) maybe_small = true;
    }
    if (!rep.mismatches.empty())
        rep.status = maybe_small ? CheckStatus::inconclusive : CheckStatus::fail;
    return rep;
}

} // namespace fppkit
