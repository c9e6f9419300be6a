#pragma once

// Renormalization boxes and their "black" condition.
//
// An N-box is short (N edges) along one axis and long (3N edges) along the
// others; the two faces perpendicular to the short axis are its large
// faces. Around a box lives its l1-neighborhood of radius 3N(d-1)+N. A box
// is black when
//   (a) the weights inside the box are small: max <= s0 (bounded laws) or
//       sum <= s0 (unbounded laws), and
//   (b) inside the neighborhood, every self-avoiding path between points
//       at l1-distance >= N is expensive: passage > (r0+delta0)*distance.
// Condition (b) reduces to all-pairs shortest paths restricted to the
// neighborhood, since the cheapest path between two points is self-
// avoiding once weights are nonnegative.
//
// A path crosses a box when some contiguous stretch stays inside the box
// and connects the two large faces, and neither path endpoint lies in the
// box.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <vector>

#include "passage.hpp"

namespace fppkit {

struct BoxGeometry {
    std::vector<int> lo, hi;  // inclusive vertex bounds
    int short_axis = 0;

    bool contains(const Point& p) const {
        for (size_t a = 0; a < lo.size(); ++a)
            if (p[a] < lo[a] || p[a] > hi[a]) return false;
        return true;
    }
    int64_t l1_distance_to(const Point& p) const {
        int64_t s = 0;
        for (size_t a = 0; a < lo.size(); ++a) {
            if (p[a] < lo[a]) s += lo[a] - p[a];
            else if (p[a] > hi[a]) s += p[a] - hi[a];
        }
        return s;
    }
};

// The box between cube kk and cube kk + 2*sign*e_axis: side N along that
// axis, 3N along the rest.
inline BoxGeometry make_box(int N, const std::vector<int>& kk, int axis, int sign) {
    const int d = (int)kk.size();
    BoxGeometry b;
    b.lo.resize(d);
    b.hi.resize(d);
    b.short_axis = axis;
    for (int a = 0; a < d; ++a) {
        b.lo[a] = N * kk[a] - N;
        b.hi[a] = N * kk[a] + 2 * N;
    }
    if (sign > 0) {
        b.lo[axis] = N * kk[axis] + N;
        b.hi[axis] = N * kk[axis] + 2 * N;
    } else {
        b.lo[axis] = N * kk[axis] - N;
        b.hi[axis] = N * kk[axis];
    }
    return b;
}

inline int64_t neighborhood_radius(int N, int d) { return 3LL * N * (d - 1) + N; }

// Vertices of the l1-neighborhood of the box, as window indices; empty
// when the neighborhood spills out of the window (the condition would then
// be evaluated on a truncated region, which we refuse to do silently).
inline std::vector<int32_t> neighborhood_vertices(const Window& win, const BoxGeometry& box,
                                                  int64_t radius) {
    const int d = win.d();
    for (int a = 0; a < d; ++a)
        if (box.lo[a] - radius < -win.half_widths()[a] ||
            box.hi[a] + radius > win.half_widths()[a])
            return {};
    std::vector<int32_t> verts;
    Point p(d);
    // iterate the bounding box, keep points within l1 radius of the box
    std::vector<int> cur(d);
    for (int a = 0; a < d; ++a) cur[a] = box.lo[a] - (int)radius;
    while (true) {
        int64_t dist = 0;
        for (int a = 0; a < d; ++a) {
            if (cur[a] < box.lo[a]) dist += box.lo[a] - cur[a];
            else if (cur[a] > box.hi[a]) dist += cur[a] - box.hi[a];
        }
        if (dist <= radius) {
            for (int a = 0; a < d; ++a) p[a] = cur[a];
            verts.push_back(win.index_of(p));
        }
        int a = d - 1;
        while (a >= 0 && ++cur[a] > box.hi[a] + (int)radius) {
            cur[a] = box.lo[a] - (int)radius;
            --a;
        }
        if (a < 0) break;
    }
    return verts;
}

// Min over vertex pairs in the set with |u-v|_1 >= min_l1 of
// (cheapest path inside the set) / |u-v|_1, as an exact rational.
// Nullopt when no pair qualifies (then the expensive-paths condition is
// vacuous). Pairs disconnected inside the set impose no constraint.
inline std::optional<Rat> min_path_ratio(const Environment<long long>& env,
                                         const std::vector<int32_t>& verts, int64_t min_l1) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    // compact local ids
    std::map<int32_t, int> id;
    for (size_t i = 0; i < verts.size(); ++i) id[verts[i]] = (int)i;
    const int nloc = (int)verts.size();
    const long long INF = weight_inf<long long>();
    // local adjacency
    struct Arc { int to; long long w; };
    std::vector<std::vector<Arc>> adj(nloc);
    std::vector<uint32_t> masks = win.step_masks();
    for (int i = 0; i < nloc; ++i) {
        int32_t u = verts[i];
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = step_axis(c);
            int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            auto it = id.find(v);
            if (it == id.end()) continue;
            long long w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                           : env.weights[(int64_t)v * d + a];
            adj[i].push_back({it->second, w});
        }
    }
    std::vector<Point> pts(nloc);
    for (int i = 0; i < nloc; ++i) pts[i] = win.point_of(verts[i]);

    std::optional<Rat> best;
    std::vector<long long> dist(nloc);
    using Item = std::pair<long long, int>;
    for (int srci = 0; srci < nloc; ++srci) {
        std::fill(dist.begin(), dist.end(), INF);
        std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
        dist[srci] = 0;
        heap.push({0, srci});
        while (!heap.empty()) {
            auto [t, u] = heap.top();
            heap.pop();
            if (t != dist[u]) continue;
            for (const Arc& e : adj[u]) {
                if (t + e.w < dist[e.to]) {
                    dist[e.to] = t + e.w;
                    heap.push({t + e.w, e.to});
                }
            }
        }
        for (int j = srci + 1; j < nloc; ++j) {
            int64_t l1 = l1_dist(pts[srci], pts[j]);
            if (l1 < min_l1) continue;
            if (dist[j] >= INF) continue;
            Rat ratio(dist[j], env.den * l1);
            if (!best || ratio < *best) best = ratio;
        }
    }
    return best;
}

// Expensive-paths condition: every qualifying pair costs more than
// rate * l1-distance.
inline bool expensive_paths_condition(const Environment<long long>& env,
                                      const std::vector<int32_t>& verts, int64_t min_l1,
                                      const Rat& rate) {
    std::optional<Rat> m = min_path_ratio(env, verts, min_l1);
    return !m || *m > rate;
}

// Sweep-independent box summary: blackness at any (s0, delta0) is a pair of
// comparisons against these exact values.
struct BoxStats {
    Rat weight_max, weight_sum;      // over edges with both endpoints in the box
    bool has_ratio = false;
    Rat min_ratio;                   // min cost/distance over neighborhood pairs
    bool clipped = false;            // neighborhood did not fit the window
};

inline BoxStats box_stats(const Environment<long long>& env, const BoxGeometry& box) {
    const Window& win = env.window;
    const int d = win.d();
    BoxStats st;

    long long wmax = 0, wsum = 0;
    Point p(d);
    std::vector<int> cur = box.lo;
    while (true) {
        for (int a = 0; a < d; ++a) p[a] = cur[a];
        int32_t idx = win.index_of(p);
        for (int a = 0; a < d; ++a) {
            if (cur[a] + 1 > box.hi[a]) continue;
            long long w = env.weights[(int64_t)idx * d + a];
            wmax = std::max(wmax, w);
            wsum += w;
        }
        int a = d - 1;
        while (a >= 0 && ++cur[a] > box.hi[a]) {
            cur[a] = box.lo[a];
            --a;
        }
        if (a < 0) break;
    }
    st.weight_max = Rat(wmax, env.den);
    st.weight_sum = Rat(wsum, env.den);

    int N = box.hi[box.short_axis] - box.lo[box.short_axis];
    std::vector<int32_t> verts = neighborhood_vertices(win, box, neighborhood_radius(N, d));
    if (verts.empty()) {
        st.clipped = true;
        return st;
    }
    std::optional<Rat> m = min_path_ratio(env, verts, N);
    if (m) {
        st.has_ratio = true;
        st.min_ratio = *m;
    }
    return st;
}

// Blackness from cached stats. `bounded` selects the per-edge cap (max)
// versus the box-sum cap; `rate` is ess-inf + delta0 of the law in force.
inline bool stats_black(const BoxStats& st, bool bounded, const Rat& s0, const Rat& rate) {
    if (st.clipped) return false;
    bool weight_cond = (bounded ? st.weight_max : st.weight_sum) <= s0;
    bool path_cond = !st.has_ratio || st.min_ratio > rate;
    return weight_cond && path_cond;
}

struct BlackReport {
    bool weight_cond = false;     // max/sum inside the box vs s0
    bool path_cond = false;       // expensive-paths condition on the neighborhood
    bool black = false;
    bool neighborhood_clipped = false;  // neighborhood did not fit the window
};

inline BlackReport black_check(const Environment<long long>& env, const BoxGeometry& box,
                               const Rat& s0, const Rat& delta0) {
    BoxStats st = box_stats(env, box);
    BlackReport rep;
    rep.neighborhood_clipped = st.clipped;
    if (st.clipped) return rep;
    bool bounded = env.dist.bounded();
    rep.weight_cond = (bounded ? st.weight_max : st.weight_sum) <= s0;
    Rat rate = env.dist.r0_exact() + env.shift + delta0;
    rep.path_cond = !st.has_ratio || st.min_ratio > rate;
    rep.black = rep.weight_cond && rep.path_cond;
    return rep;
}

// Does the path cross the box? Scans maximal stretches of the path inside
// the box for a sub-stretch connecting the two large faces.
inline bool path_crosses_box(const std::vector<Point>& path, const BoxGeometry& box) {
    if (path.empty()) return false;
    if (box.contains(path.front()) || box.contains(path.back())) return false;
    const int j = box.short_axis;
    int face = 0;  // 0 none, 1 lo face, 2 hi face (within the current stretch)
    for (const Point& p : path) {
        if (!box.contains(p)) {
            face = 0;
            continue;
        }
        int here = p[j] == box.lo[j] ? 1 : (p[j] == box.hi[j] ? 2 : 0);
        if (here) {
            if (face && face != here) return true;
            face = here;
        }
    }
    return false;
}

// First entry and last exit vertices of the path in the box (valid only
// when the path meets the box).
inline std::pair<Point, Point> crossing_endpoints(const std::vector<Point>& path,
                                                  const BoxGeometry& box) {
    Point vin, vout;
    for (const Point& p : path)
        if (box.contains(p)) { vin = p; break; }
    for (auto it = path.rbegin(); it != path.rend(); ++it)
        if (box.contains(*it)) { vout = *it; break; }
    return {vin, vout};
}

} // namespace fppkit
