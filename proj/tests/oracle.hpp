#pragma once

// Brute-force references, deliberately independent of the library's search
// structures: plain depth-first enumeration of self-avoiding paths, and
// plain tree walks over step sequences. Everything here is exponential and
// meant for tiny windows only.

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "fppkit/environment.hpp"
#include "fppkit/passage.hpp"

namespace oracle {

using fppkit::Environment;
using fppkit::Point;
using fppkit::Window;

inline long long inf() { return fppkit::weight_inf<long long>(); }

// Exhaustive self-avoiding path search. Returns the minimal total weight,
// the min/max edge counts among minimal paths, and the set of edges used by
// at least one minimal path (as (min-endpoint vertex index, axis) pairs).
struct SawResult {
    long long t = 0;
    bool reachable = false;
    int64_t l_min = 0, l_max = 0;
    std::vector<std::pair<int32_t, int>> edges;  // sorted canonical
};

inline SawResult saw_min_paths(const Environment<long long>& env, const Point& source,
                               const Point& target) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    const int64_t nv = win.vertex_count();
    std::vector<uint32_t> masks = win.step_masks();

    long long wmin = inf();
    for (int32_t u = 0; u < nv; ++u)
        for (int a = 0; a < d; ++a)
            if (win.edge_slot_valid(u, a)) wmin = std::min(wmin, env.weights[win.edge_slot(u, a)]);

    int32_t src = win.index_of(source), dst = win.index_of(target);
    std::vector<Point> pts(nv);
    for (int32_t u = 0; u < nv; ++u) pts[u] = win.point_of(u);

    SawResult res;
    long long best = inf();
    std::vector<char> onpath(nv, 0);
    std::vector<std::pair<int32_t, int>> path_edges;  // canonical edge ids along the walk
    std::vector<std::pair<int32_t, int>> best_edges;

    // recursive lambda over the current endpoint
    auto dfs = [&](auto&& self, int32_t u, long long w, int64_t len) -> void {
        if (u == dst) {
            if (w < best) {
                best = w;
                res.l_min = res.l_max = len;
                best_edges = path_edges;
            } else if (w == best) {
                res.l_min = std::min(res.l_min, len);
                res.l_max = std::max(res.l_max, len);
                best_edges.insert(best_edges.end(), path_edges.begin(), path_edges.end());
            }
            return;
        }
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = fppkit::step_axis(c);
            int32_t v = fppkit::step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            if (onpath[v]) continue;
            int32_t base = fppkit::step_sign(c) > 0 ? u : v;
            long long we = env.weights[win.edge_slot(base, a)];
            long long nw = w + we;
            // keep exploring on ties: equal-weight paths decide l_min/l_max
            if (best < inf() && nw + wmin * fppkit::l1_dist(pts[v], pts[dst]) > best) continue;
            onpath[v] = 1;
            path_edges.push_back({base, a});
            self(self, v, nw, len + 1);
            path_edges.pop_back();
            onpath[v] = 0;
        }
    };
    onpath[src] = 1;
    dfs(dfs, src, 0, 0);

    if (best >= inf()) return res;
    res.reachable = true;
    res.t = best;
    std::sort(best_edges.begin(), best_edges.end());
    best_edges.erase(std::unique(best_edges.begin(), best_edges.end()), best_edges.end());
    res.edges = std::move(best_edges);
    return res;
}

// Minimal weight over exactly-k-step walks (repetition allowed, window-
// restricted), for every k <= K and every endpoint. zero_steps additionally
// allows weight-free stay-in-place steps. Walks the full step tree, so K
// beyond ~8 is hopeless by design.
inline std::vector<std::vector<long long>> walk_enumeration(const Environment<long long>& env,
                                                            const Point& source, int64_t K,
                                                            bool zero_steps) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    const int64_t nv = win.vertex_count();
    std::vector<uint32_t> masks = win.step_masks();
    std::vector<std::vector<long long>> table(K + 1, std::vector<long long>(nv, inf()));

    auto walk = [&](auto&& self, int32_t u, long long w, int64_t depth) -> void {
        table[depth][u] = std::min(table[depth][u], w);
        if (depth == K) return;
        if (zero_steps) self(self, u, w, depth + 1);
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = fppkit::step_axis(c);
            int32_t v = fppkit::step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            int32_t base = fppkit::step_sign(c) > 0 ? u : v;
            self(self, v, w + env.weights[win.edge_slot(base, a)], depth + 1);
        }
    };
    walk(walk, win.index_of(source), 0, 0);
    return table;
}

// Exhaustive min of (path weight)/(l1 distance) over endpoint pairs inside a
// vertex set at l1 distance >= min_l1, paths confined to the set. Self-
// avoiding enumeration, so it is independent of any shortest-path machinery.
inline std::optional<fppkit::Rat> region_min_ratio(const Environment<long long>& env,
                                                   const std::vector<int32_t>& verts,
                                                   int64_t min_l1) {
    using fppkit::Rat;
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    std::vector<char> member(win.vertex_count(), 0);
    for (int32_t v : verts) member[v] = 1;
    std::vector<uint32_t> masks = win.step_masks();

    std::optional<Rat> best;
    std::vector<char> onpath(win.vertex_count(), 0);
    for (size_t si = 0; si < verts.size(); ++si) {
        int32_t src = verts[si];
        std::vector<long long> cheapest(win.vertex_count(), inf());
        auto dfs = [&](auto&& self, int32_t u, long long w) -> void {
            cheapest[u] = std::min(cheapest[u], w);
            uint32_t m = masks[u];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = fppkit::step_axis(c);
                int32_t v = fppkit::step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
                if (!member[v] || onpath[v]) continue;
                long long we = fppkit::step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                                        : env.weights[(int64_t)v * d + a];
                onpath[v] = 1;
                self(self, v, w + we);
                onpath[v] = 0;
            }
        };
        onpath[src] = 1;
        dfs(dfs, src, 0);
        onpath[src] = 0;
        for (size_t j = si + 1; j < verts.size(); ++j) {
            int32_t dst = verts[j];
            if (cheapest[dst] >= inf()) continue;
            int64_t l1 = fppkit::l1_dist(win.point_of(src), win.point_of(dst));
            if (l1 < min_l1) continue;
            Rat ratio(cheapest[dst], env.den * l1);
            if (!best || ratio < *best) best = ratio;
        }
    }
    return best;
}

} // namespace oracle
