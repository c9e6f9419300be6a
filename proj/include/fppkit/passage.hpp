#pragma once

// Point-to-point passage times and geodesic statistics on a window.
//
// T(s,x) is the minimum total weight over paths s -> x inside the window.
// Among time-minimal paths, L_min is the fewest and L_max the most edges;
// both are computed on the "tight" subgraph: vertex v is tight when
// fwd(v) + bwd(v) = T, and a directed move u -> v is tight when
// fwd(u) + w(u,v) = fwd(v). Every geodesic walks tight moves only, and
// every prefix of a geodesic spends exactly fwd of its endpoint, which is
// what makes the searches below exact.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <utility>
#include <vector>

#include "environment.hpp"

namespace fppkit {

template <class W>
constexpr W weight_inf() {
    if constexpr (std::is_same_v<W, double>)
        return std::numeric_limits<double>::infinity();
    else
        return std::numeric_limits<W>::max() / 4;
}

template <class W>
struct PassageField {
    Point source;
    std::vector<W> time;  // per vertex; weight_inf when unreached
    W at(const Window& win, const Point& p) const { return time[win.index_of(p)]; }
};

namespace detail {

// Dial's bucket queue; only worth it for small integer weights.
inline void dijkstra_buckets(const Window& win, const std::vector<long long>& weights,
                             int32_t src, long long maxw, std::vector<long long>& dist) {
    const int nsteps = 2 * win.d();
    const int64_t nbuckets = maxw + 1;
    std::vector<std::vector<int32_t>> bucket(nbuckets);
    std::vector<uint32_t> masks = win.step_masks();
    dist.assign(win.vertex_count(), weight_inf<long long>());
    dist[src] = 0;
    bucket[0].push_back(src);
    int64_t pending = 1;
    for (long long t = 0; pending > 0; ++t) {
        auto& b = bucket[t % nbuckets];
        while (!b.empty()) {
            int32_t u = b.back();
            b.pop_back();
            --pending;
            if (dist[u] != t) continue;  // stale entry
            uint32_t m = masks[u];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = step_axis(c);
                int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
                long long w = step_sign(c) > 0
                                  ? weights[(int64_t)u * win.d() + a]
                                  : weights[(int64_t)v * win.d() + a];
                long long nd = t + w;
                if (nd < dist[v]) {
                    dist[v] = nd;
                    bucket[nd % nbuckets].push_back(v);
                    ++pending;
                }
            }
        }
    }
}

template <class W>
void dijkstra_heap(const Window& win, const std::vector<W>& weights, int32_t src,
                   std::vector<W>& dist) {
    const int nsteps = 2 * win.d();
    std::vector<uint32_t> masks = win.step_masks();
    dist.assign(win.vertex_count(), weight_inf<W>());
    using Item = std::pair<W, int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    dist[src] = 0;
    heap.push({W(0), src});
    while (!heap.empty()) {
        auto [t, u] = heap.top();
        heap.pop();
        if (t != dist[u]) continue;
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = step_axis(c);
            int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            W w = step_sign(c) > 0 ? weights[(int64_t)u * win.d() + a]
                                   : weights[(int64_t)v * win.d() + a];
            W nd = t + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
}

} // namespace detail

template <class W>
W min_weight(const Environment<W>& env) {
    W m = env.weights.empty() ? W(0) : env.weights[0];
    const int d = env.window.d();
    for (int32_t v = 0; v < env.window.vertex_count(); ++v)
        for (int a = 0; a < d; ++a)
            if (env.window.edge_slot_valid(v, a))
                m = std::min(m, env.weights[(int64_t)v * d + a]);
    return m;
}

// Single-source passage times by Dijkstra. Rejects environments with
// negative weights (those arise from down-shifts; only the hop-bounded DP
// accepts them).
template <class W>
PassageField<W> passage_times(const Environment<W>& env, const Point& source) {
    if (!env.window.contains(source))
        throw PreconditionError("passage_times: source outside window");
    if (env.has_negative || min_weight(env) < W(0))
        throw PreconditionError("passage_times: negative weights (shifted below 0)");
    PassageField<W> f;
    f.source = source;
    int32_t src = env.window.index_of(source);
    if constexpr (std::is_same_v<W, long long>) {
        long long maxw = 0;
        for (auto w : env.weights) maxw = std::max(maxw, w);
        if (maxw <= (1 << 20))
            detail::dijkstra_buckets(env.window, env.weights, src, maxw, f.time);
        else
            detail::dijkstra_heap(env.window, env.weights, src, f.time);
    } else {
        detail::dijkstra_heap(env.window, env.weights, src, f.time);
    }
    return f;
}

// Tightness predicates. Exact mode compares integers; float mode uses a
// relative tolerance on the documented scale of T.
template <class W>
struct Tight {
    W total;
    double tol;
    bool vertex(W fwd, W bwd) const {
        if constexpr (std::is_same_v<W, long long>) return fwd + bwd == total;
        else return std::abs(fwd + bwd - total) <= tol * std::max(1.0, std::abs(total));
    }
    bool move(W fwd_u, W w, W fwd_v) const {
        if constexpr (std::is_same_v<W, long long>) return fwd_u + w == fwd_v;
        else return std::abs(fwd_u + w - fwd_v) <= tol * std::max(1.0, std::abs(total));
    }
};

struct GeodesicGraph {
    std::vector<Edge> edges;        // canonical, sorted
    std::vector<Point> vertices;    // tight vertices, sorted by window index
};

// Union of all time-minimal s->t paths, as an edge set.
template <class W>
GeodesicGraph geodesic_graph(const Environment<W>& env, const PassageField<W>& fwd,
                             const PassageField<W>& bwd, double tol = 0.0) {
    const Window& win = env.window;
    const int d = win.d();
    W total = fwd.time[win.index_of(bwd.source)];
    Tight<W> tight{total, tol};
    GeodesicGraph g;
    for (int32_t u = 0; u < win.vertex_count(); ++u) {
        if (fwd.time[u] >= weight_inf<W>()) continue;
        if (!tight.vertex(fwd.time[u], bwd.time[u])) continue;
        g.vertices.push_back(win.point_of(u));
        for (int a = 0; a < d; ++a) {
            if (!win.edge_slot_valid(u, a)) continue;
            int32_t v = u + win.stride(a);
            if (!tight.vertex(fwd.time[v], bwd.time[v])) continue;
            W w = env.weights[(int64_t)u * d + a];
            if (tight.move(fwd.time[u], w, fwd.time[v]) ||
                tight.move(fwd.time[v], w, fwd.time[u])) {
                g.edges.push_back(Edge{win.point_of(u), a});
            }
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    return g;
}

template <class W>
struct Geodesic {
    W time = W(0);
    int64_t length = 0;
    std::vector<int8_t> steps;   // canonical step codes, in order
    std::vector<Point> points;   // length+1 points, source first
};

// Minimal-edge-count geodesic. Feasibility layers over the tight digraph
// give, for every l, the set of vertices from which the target is exactly l
// tight moves away; the walk then greedily takes the first admissible step
// in canonical order, which yields the lexicographically-least step
// sequence among minimal-length geodesics.
template <class W>
Geodesic<W> min_length_geodesic(const Environment<W>& env, const Point& source,
                                const Point& target, double tol = 0.0) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    PassageField<W> fwd = passage_times(env, source);
    PassageField<W> bwd = passage_times(env, target);
    int32_t src = win.index_of(source), dst = win.index_of(target);
    W total = fwd.time[dst];
    Tight<W> tight{total, tol};

    const int64_t nv = win.vertex_count();
    std::vector<uint32_t> masks = win.step_masks();
    std::vector<char> tv(nv, 0);
    for (int32_t u = 0; u < nv; ++u)
        if (fwd.time[u] < weight_inf<W>() && tight.vertex(fwd.time[u], bwd.time[u])) tv[u] = 1;

    const size_t words = (size_t)((nv + 63) / 64);
    std::vector<std::vector<uint64_t>> feas;  // feas[l]: target exactly l tight moves away
    feas.emplace_back(words, 0);
    feas[0][dst >> 6] |= 1ull << (dst & 63);
    auto get = [&](const std::vector<uint64_t>& bs, int32_t i) {
        return (bs[i >> 6] >> (i & 63)) & 1;
    };
    int64_t L = -1;
    if (src == dst) L = 0;
    for (int64_t l = 1; L < 0 && l <= nv; ++l) {
        std::vector<uint64_t> cur(words, 0);
        bool any = false;
        for (int32_t u = 0; u < nv; ++u) {
            if (!tv[u]) continue;
            uint32_t m = masks[u];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = step_axis(c);
                int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
                if (!tv[v] || !get(feas[l - 1], v)) continue;
                W w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                       : env.weights[(int64_t)v * d + a];
                if (tight.move(fwd.time[u], w, fwd.time[v])) {
                    cur[u >> 6] |= 1ull << (u & 63);
                    any = true;
                    break;
                }
            }
        }
        feas.push_back(std::move(cur));
        if (get(feas[l], src)) L = l;
        if (!any) break;
    }
    if (L < 0) throw PreconditionError("min_length_geodesic: target unreachable");

    Geodesic<W> g;
    g.time = total;
    g.length = L;
    g.points.push_back(source);
    int32_t u = src;
    for (int64_t l = L; l > 0; --l) {
        bool advanced = false;
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps && !advanced; ++c) {
            if (!(m >> c & 1)) continue;
            int a = step_axis(c);
            int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            if (!tv[v] || !get(feas[l - 1], v)) continue;
            W w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                   : env.weights[(int64_t)v * d + a];
            if (!tight.move(fwd.time[u], w, fwd.time[v])) continue;
            g.steps.push_back((int8_t)c);
            u = v;
            g.points.push_back(win.point_of(u));
            advanced = true;
        }
        if (!advanced) throw std::logic_error("min_length_geodesic: walk lost feasibility");
    }
    return g;
}

struct MaxGeodesic {
    int64_t length = 0;
    bool exact = true;        // false when the node budget cut the search
    int64_t expansions = 0;   // search effort actually spent
};

// Maximal-edge-count geodesic length. Positive tight moves strictly
// increase fwd, so revisits are only possible inside connected clusters of
// zero-weight tight edges; each geodesic visits any cluster in one
// contiguous simple stretch. We therefore take longest simple paths inside
// each cluster by exhaustive search (budgeted) and chain clusters through
// positive tight moves in decreasing fwd order — a longest-path DP on the
// cluster DAG. With no zero-weight edges every cluster is a single vertex
// and this reduces to the classic longest path in a DAG.
template <class W>
MaxGeodesic max_length_geodesic(const Environment<W>& env, const Point& source,
                                const Point& target, int64_t budget = 1'000'000,
                                double tol = 0.0) {
    const Window& win = env.window;
    const int d = win.d(), nsteps = 2 * d;
    PassageField<W> fwd = passage_times(env, source);
    PassageField<W> bwd = passage_times(env, target);
    int32_t src = win.index_of(source), dst = win.index_of(target);
    W total = fwd.time[dst];
    Tight<W> tight{total, tol};
    auto is_zero = [&](W w) {
        if constexpr (std::is_same_v<W, long long>) return w == 0;
        else return std::abs(w) <= tol * std::max(1.0, std::abs(total));
    };

    const int64_t nv = win.vertex_count();
    std::vector<uint32_t> masks = win.step_masks();
    std::vector<int32_t> tverts;
    std::vector<char> tv(nv, 0);
    for (int32_t u = 0; u < nv; ++u)
        if (fwd.time[u] < weight_inf<W>() && tight.vertex(fwd.time[u], bwd.time[u])) {
            tv[u] = 1;
            tverts.push_back(u);
        }

    // Zero-edge clusters among tight vertices.
    std::vector<int32_t> cluster(nv, -1);
    std::vector<std::vector<int32_t>> members;
    for (int32_t u0 : tverts) {
        if (cluster[u0] >= 0) continue;
        int32_t id = (int32_t)members.size();
        members.emplace_back();
        std::vector<int32_t> stack{u0};
        cluster[u0] = id;
        while (!stack.empty()) {
            int32_t u = stack.back();
            stack.pop_back();
            members[id].push_back(u);
            uint32_t m = masks[u];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = step_axis(c);
                int32_t v = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
                if (!tv[v] || cluster[v] >= 0) continue;
                W w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                       : env.weights[(int64_t)v * d + a];
                if (is_zero(w) && fwd.time[u] == fwd.time[v]) {
                    cluster[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }

    // Clusters in decreasing fwd level; members share one level.
    std::vector<int32_t> order(members.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int32_t)i;
    std::sort(order.begin(), order.end(), [&](int32_t a, int32_t b) {
        return fwd.time[members[a][0]] > fwd.time[members[b][0]];
    });

    // best[v]: most edges on any tight walk v -> target seen so far (-1 =
    // none found). exit_gain(v): best continuation after leaving v now.
    std::vector<int64_t> best(nv, -1);
    MaxGeodesic result;
    bool exhausted = false;
    auto exit_gain = [&](int32_t v) -> int64_t {
        int64_t g = v == dst ? 0 : -1;
        uint32_t m = masks[v];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = step_axis(c);
            int32_t z = step_sign(c) > 0 ? v + win.stride(a) : v - win.stride(a);
            if (!tv[z] || cluster[z] == cluster[v]) continue;
            W w = step_sign(c) > 0 ? env.weights[(int64_t)v * d + a]
                                   : env.weights[(int64_t)z * d + a];
            if (!tight.move(fwd.time[v], w, fwd.time[z]) || best[z] < 0) continue;
            g = std::max(g, 1 + best[z]);
        }
        return g;
    };

    // best[] is only ever read at vertices that receive a positive tight
    // move from another cluster, plus the source itself.
    std::vector<char> demanded(nv, 0);
    demanded[src] = 1;
    for (int32_t u : tverts) {
        uint32_t m = masks[u];
        for (int c = 0; c < nsteps; ++c) {
            if (!(m >> c & 1)) continue;
            int a = step_axis(c);
            int32_t z = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
            if (!tv[z] || cluster[z] == cluster[u]) continue;
            W w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                   : env.weights[(int64_t)z * d + a];
            if (tight.move(fwd.time[u], w, fwd.time[z])) demanded[z] = 1;
        }
    }

    // A simple path inside a cluster decomposes along the block-cut tree:
    // independent longest-subpath choices inside each biconnected block,
    // glued at cut vertices. Exhaustive search happens only inside single
    // blocks (memoized per entry vertex), so the exponential part is
    // confined to the rare fat block instead of the whole cluster.
    std::vector<int32_t> local_of(nv, -1);
    auto process_cluster = [&](const std::vector<int32_t>& mem) {
        const int n = (int)mem.size();
        for (int i = 0; i < n; ++i) local_of[mem[i]] = i;
        std::vector<int64_t> gain(n);
        for (int i = 0; i < n; ++i) gain[i] = exit_gain(mem[i]);

        std::vector<std::vector<int32_t>> adj(n);
        for (int i = 0; i < n; ++i) {
            int32_t u = mem[i];
            uint32_t m = masks[u];
            for (int c = 0; c < nsteps; ++c) {
                if (!(m >> c & 1)) continue;
                int a = step_axis(c);
                int32_t z = step_sign(c) > 0 ? u + win.stride(a) : u - win.stride(a);
                if (!tv[z] || cluster[z] != cluster[u]) continue;
                W w = step_sign(c) > 0 ? env.weights[(int64_t)u * d + a]
                                       : env.weights[(int64_t)z * d + a];
                if (is_zero(w) && fwd.time[u] == fwd.time[z]) adj[i].push_back(local_of[z]);
            }
        }

        // Biconnected blocks (iterative Tarjan; the grid has no parallel
        // edges, so skipping the parent id once is safe).
        std::vector<std::vector<int32_t>> blocks;
        {
            std::vector<int32_t> num(n, -1), low(n, 0), it(n, 0), parent(n, -1);
            std::vector<std::pair<int32_t, int32_t>> estack;
            int32_t timer = 0;
            for (int32_t s = 0; s < n; ++s) {
                if (num[s] >= 0) continue;
                std::vector<int32_t> st{s};
                num[s] = low[s] = timer++;
                while (!st.empty()) {
                    int32_t u = st.back();
                    if (it[u] < (int32_t)adj[u].size()) {
                        int32_t v = adj[u][it[u]++];
                        if (v == parent[u]) continue;
                        if (num[v] < 0) {
                            estack.push_back({u, v});
                            parent[v] = u;
                            num[v] = low[v] = timer++;
                            st.push_back(v);
                        } else if (num[v] < num[u]) {
                            estack.push_back({u, v});
                            low[u] = std::min(low[u], num[v]);
                        }
                    } else {
                        st.pop_back();
                        if (st.empty()) continue;
                        int32_t p = st.back();
                        low[p] = std::min(low[p], low[u]);
                        if (low[u] >= num[p]) {
                            std::vector<int32_t> verts;
                            std::pair<int32_t, int32_t> e;
                            do {
                                e = estack.back();
                                estack.pop_back();
                                verts.push_back(e.first);
                                verts.push_back(e.second);
                            } while (e != std::make_pair(p, u));
                            std::sort(verts.begin(), verts.end());
                            verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
                            blocks.push_back(std::move(verts));
                        }
                    }
                }
            }
        }
        const int nb = (int)blocks.size();
        std::vector<std::vector<int32_t>> vblocks(n);
        for (int b = 0; b < nb; ++b)
            for (int32_t v : blocks[b]) vblocks[v].push_back(b);

        // Per-block adjacency in block-local indexing, built on first use.
        std::vector<std::vector<std::vector<int32_t>>> badj(nb);
        std::vector<int32_t> bpos(n, -1);
        auto block_adj = [&](int b) -> const std::vector<std::vector<int32_t>>& {
            if (!badj[b].empty()) return badj[b];
            const auto& verts = blocks[b];
            for (size_t i = 0; i < verts.size(); ++i) bpos[verts[i]] = (int32_t)i;
            badj[b].resize(verts.size());
            for (size_t i = 0; i < verts.size(); ++i)
                for (int32_t z : adj[verts[i]])
                    if (bpos[z] >= 0) badj[b][i].push_back(bpos[z]);
            for (int32_t v : verts) bpos[v] = -1;
            return badj[b];
        };

        // Longest simple path from one entry to every vertex of one block,
        // by budgeted exhaustive DFS; partial tables are valid lower bounds.
        std::map<std::pair<int, int32_t>, std::vector<int32_t>> tables;
        auto longest_from = [&](int b, int32_t entry) -> const std::vector<int32_t>& {
            auto key = std::make_pair(b, entry);
            auto hit = tables.find(key);
            if (hit != tables.end()) return hit->second;
            const auto& verts = blocks[b];
            const auto& ba = block_adj(b);
            const int sz = (int)verts.size();
            int32_t e = -1;
            for (int i = 0; i < sz; ++i)
                if (verts[i] == entry) e = i;
            std::vector<int32_t> tbl(sz, -1);
            tbl[e] = 0;
            struct Frame { int32_t v; int32_t next; };
            std::vector<Frame> stack{{e, 0}};
            std::vector<char> onpath(sz, 0);
            onpath[e] = 1;
            while (!stack.empty()) {
                Frame& f = stack.back();
                if (f.next == 0 && ++result.expansions > budget) exhausted = true;
                if (exhausted) f.next = (int32_t)ba[f.v].size();
                bool pushed = false;
                while (f.next < (int32_t)ba[f.v].size()) {
                    int32_t z = ba[f.v][f.next++];
                    if (onpath[z]) continue;
                    onpath[z] = 1;
                    stack.push_back({z, 0});
                    tbl[z] = std::max(tbl[z], (int32_t)stack.size() - 1);
                    pushed = true;
                    break;
                }
                if (!pushed) {
                    onpath[f.v] = 0;
                    stack.pop_back();
                }
            }
            return tables.emplace(key, std::move(tbl)).first->second;
        };

        // Walk the block-cut tree from z, summing per-block longest paths;
        // finish at any vertex that can exit (or terminate) the cluster.
        std::vector<int32_t> seen(nb, -1);
        int32_t epoch = 0;
        auto query = [&](int32_t z) -> int64_t {
            int64_t bestv = gain[z];  // the trivial stretch: arrive and leave
            ++epoch;
            auto visit = [&](auto&& self, int b, int32_t entry, int64_t acc) -> void {
                const auto& tbl = longest_from(b, entry);
                const auto& verts = blocks[b];
                for (size_t i = 0; i < verts.size(); ++i) {
                    int32_t v = verts[i];
                    if (v == entry || tbl[i] < 0) continue;
                    if (gain[v] >= 0)
                        bestv = std::max(bestv, acc + tbl[i] + gain[v]);
                    if (vblocks[v].size() > 1)
                        for (int b2 : vblocks[v])
                            if (seen[b2] != epoch) {
                                seen[b2] = epoch;
                                self(self, b2, v, acc + tbl[i]);
                            }
                }
            };
            for (int b : vblocks[z]) {
                seen[b] = epoch;
                visit(visit, b, z, 0);
            }
            return bestv;
        };

        for (int i = 0; i < n; ++i) {
            if (!demanded[mem[i]]) continue;
            best[mem[i]] = exhausted ? std::max(best[mem[i]], gain[i])
                                     : std::max(best[mem[i]], query(i));
        }
        for (int32_t u : mem) local_of[u] = -1;
    };

    for (int32_t ci : order) process_cluster(members[ci]);
    result.length = best[src];
    result.exact = !exhausted;
    if (result.length < 0) {
        // Budget died before any complete walk was found; fall back to the
        // minimal geodesic, still a valid lower bound.
        Geodesic<W> g = min_length_geodesic(env, source, target, tol);
        result.length = g.length;
        result.exact = false;
    }
    return result;
}

// Difference-quotient sandwich at shift b: with T^(c) the passage time
// under weights shifted by c,
//   (T^(b+eta) - T^(b)) / eta  <=  L_min^(b)  <=  L_max^(b)
//                              <=  (T^(b) - T^(b-delta)) / delta.
// Exact mode evaluates the quotients as rationals, so ok is a zero-
// tolerance verdict (modulo the L_max budget flag).
struct SandwichRecord {
    Rat b, eta, delta;
    Rat t_minus, t_mid, t_plus;
    int64_t l_min = 0, l_max = 0;
    bool lmax_exact = true;
    Rat lhs, rhs;
    bool ok = false;
};

inline SandwichRecord shift_sandwich(const Environment<long long>& base, const Point& source,
                                     const Point& target, const Rat& b, const Rat& eta,
                                     const Rat& delta, int64_t budget = 1'000'000) {
    if (!(eta > Rat(0)) || !(delta > Rat(0)))
        throw PreconditionError("shift_sandwich: eta and delta must be > 0");
    Rat low_shift = base.shift + b - delta;
    if (base.dist.r0_exact() + low_shift < Rat(0))
        throw PreconditionError("shift_sandwich: b - delta drives weights negative");
    Environment<long long> e_minus = shift_environment(base, b - delta);
    Environment<long long> e_mid = shift_environment(base, b);
    Environment<long long> e_plus = shift_environment(base, b + eta);
    int32_t dst = base.window.index_of(target);

    SandwichRecord r;
    r.b = b;
    r.eta = eta;
    r.delta = delta;
    r.t_minus = Rat(passage_times(e_minus, source).time[dst], 1) / Rat(e_minus.den);
    r.t_mid = Rat(passage_times(e_mid, source).time[dst], 1) / Rat(e_mid.den);
    r.t_plus = Rat(passage_times(e_plus, source).time[dst], 1) / Rat(e_plus.den);
    Geodesic<long long> gmin = min_length_geodesic(e_mid, source, target);
    MaxGeodesic gmax = max_length_geodesic(e_mid, source, target, budget);
    r.l_min = gmin.length;
    r.l_max = gmax.length;
    r.lmax_exact = gmax.exact;
    r.lhs = (r.t_plus - r.t_mid) / eta;
    r.rhs = (r.t_mid - r.t_minus) / delta;
    r.ok = r.lhs <= Rat(r.l_min) && r.l_min <= r.l_max && Rat(r.l_max) <= r.rhs;
    return r;
}

// Geodesic length shrinkage under increasing shift: for a < b every
// geodesic at shift b is at most as long as every geodesic at shift a.
struct ShiftMonotonicityRecord {
    int64_t l_max_at_b = 0, l_min_at_a = 0;
    bool lmax_exact = true;
    bool ok = false;
};

inline ShiftMonotonicityRecord geodesic_shift_monotonicity(const Environment<long long>& base,
                                                           const Point& source, const Point& target,
                                                           const Rat& a, const Rat& b,
                                                           int64_t budget = 1'000'000) {
    if (!(a < b)) throw PreconditionError("geodesic_shift_monotonicity: need a < b");
    if (base.dist.r0_exact() + base.shift + a < Rat(0))
        throw PreconditionError("geodesic_shift_monotonicity: shift a drives weights negative");
    Environment<long long> ea = shift_environment(base, a);
    Environment<long long> eb = shift_environment(base, b);
    ShiftMonotonicityRecord r;
    r.l_min_at_a = min_length_geodesic(ea, source, target).length;
    MaxGeodesic mb = max_length_geodesic(eb, source, target, budget);
    r.l_max_at_b = mb.length;
    r.lmax_exact = mb.exact;
    r.ok = r.l_max_at_b <= r.l_min_at_a;
    return r;
}

} // namespace fppkit
