#include "doctest.h"

#include <algorithm>

#include "fppkit/passage.hpp"
#include "oracle.hpp"

using namespace fppkit;

namespace {

std::vector<std::pair<int32_t, int>> edge_ids(const Window& win, const GeodesicGraph& g) {
    std::vector<std::pair<int32_t, int>> out;
    for (const Edge& e : g.edges) out.push_back({win.index_of(e.base), e.axis});
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("passage times, geodesic lengths and edge unions match the path oracle") {
    const std::vector<std::string> laws = {"det:1", "bern:0.3:0:1", "bern:0.5:1:2",
                                           "atoms:0@0.2,1@0.5,3/2@0.3"};
    struct Setup {
        Window win;
        std::vector<Point> targets;
        int seeds;
    };
    const std::vector<Setup> setups = {
        {Window({1, 1}),
         {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}},
         10},
        {Window({2, 2}), {{2, 2}, {2, 0}, {1, 2}, {-2, -1}, {0, 1}}, 5},
        {Window({1, 1, 1}), {{1, 1, 1}, {1, 0, 0}, {1, 1, 0}, {-1, 1, 0}, {1, -1, 1}}, 4},
    };
    for (const std::string& spec : laws) {
        Distribution dist = Distribution::parse(spec);
        bool positive = dist.r0_exact() > Rat(0);
        for (const Setup& su : setups) {
            Point source(su.win.d(), 0);
            for (int seed = 0; seed < su.seeds; ++seed) {
                auto env = sample_environment_exact(dist, su.win, (uint64_t)seed, 0);
                PassageField<long long> fwd = passage_times(env, source);
                for (const Point& target : su.targets) {
                    CAPTURE(spec);
                    CAPTURE(seed);
                    CAPTURE(point_str(target));
                    oracle::SawResult ref = oracle::saw_min_paths(env, source, target);
                    REQUIRE(ref.reachable);
                    CHECK(fwd.at(su.win, target) == ref.t);

                    Geodesic<long long> gmin = min_length_geodesic(env, source, target);
                    CHECK(gmin.time == ref.t);
                    CHECK(gmin.length == ref.l_min);

                    MaxGeodesic gmax = max_length_geodesic(env, source, target);
                    REQUIRE(gmax.exact);
                    CHECK(gmax.length == ref.l_max);

                    PassageField<long long> bwd = passage_times(env, target);
                    GeodesicGraph gg = geodesic_graph(env, fwd, bwd);
                    auto tight = edge_ids(su.win, gg);
                    if (positive) {
                        // Strictly positive weights: tight subgraph is exactly
                        // the union of minimal self-avoiding paths.
                        CHECK(tight == ref.edges);
                    } else {
                        // Zero atoms allow tight zero-weight hairs off the
                        // geodesics; the oracle union is always covered.
                        CHECK(std::includes(tight.begin(), tight.end(), ref.edges.begin(),
                                            ref.edges.end()));
                    }
                }
            }
        }
    }
}

TEST_CASE("minimal geodesic walk is a consistent path") {
    Distribution dist = Distribution::parse("bern:0.3:0:1");
    Window win({3, 3});
    auto env = sample_environment_exact(dist, win, 11, 0);
    Point source{0, 0}, target{2, -3};
    Geodesic<long long> g = min_length_geodesic(env, source, target);
    REQUIRE(g.points.size() == (size_t)g.length + 1);
    REQUIRE(g.steps.size() == (size_t)g.length);
    CHECK(g.points.front() == source);
    CHECK(g.points.back() == target);
    long long total = 0;
    for (size_t i = 0; i < g.steps.size(); ++i) {
        Point p = g.points[i];
        p[step_axis(g.steps[i])] += step_sign(g.steps[i]);
        CHECK(p == g.points[i + 1]);
        total += env.step_weight(win.index_of(g.points[i]), g.steps[i]);
    }
    CHECK(total == g.time);
    // self-avoiding
    auto pts = g.points;
    std::sort(pts.begin(), pts.end());
    CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("tie break picks the canonical first step") {
    // All weights equal: both staircase geodesics to (1,1) are minimal; the
    // walk must prefer +e1 over +e2 at the origin.
    Distribution dist = Distribution::parse("det:1");
    Window win({1, 1});
    auto env = sample_environment_exact(dist, win, 0, 0);
    Geodesic<long long> g = min_length_geodesic(env, {0, 0}, {1, 1});
    REQUIRE(g.steps.size() == 2);
    CHECK(g.steps[0] == 0);  // +e1
    CHECK(g.steps[1] == 2);  // +e2
}

TEST_CASE("bucket and heap dijkstra agree across a weight rescale") {
    // Same atom indices, values scaled by 2^21: forces the heap path and
    // must scale passage times exactly while preserving geodesic lengths.
    const long long K = 1 << 21;
    Distribution small = Distribution::parse("atoms:1@0.5,2@0.3,3@0.2");
    Distribution big = Distribution::finite_atoms({Rat(K), Rat(2 * K), Rat(3 * K)},
                                                  {0.5, 0.3, 0.2});
    Window win({3, 3});
    for (int seed = 0; seed < 3; ++seed) {
        auto es = sample_environment_exact(small, win, (uint64_t)seed, 0);
        auto eb = sample_environment_exact(big, win, (uint64_t)seed, 0);
        PassageField<long long> fs = passage_times(es, {0, 0});
        PassageField<long long> fb = passage_times(eb, {0, 0});
        for (int32_t v = 0; v < win.vertex_count(); ++v) CHECK(fb.time[v] == K * fs.time[v]);
        Point target{3, -2};
        CHECK(min_length_geodesic(eb, {0, 0}, target).length ==
              min_length_geodesic(es, {0, 0}, target).length);
        CHECK(max_length_geodesic(eb, {0, 0}, target).length ==
              max_length_geodesic(es, {0, 0}, target).length);
    }
}

TEST_CASE("float mode reproduces exact results on an atomic law") {
    Distribution dist = Distribution::parse("bern:0.5:1:2");
    Window win({3, 3});
    Point source{0, 0}, target{3, 2};
    for (int seed = 0; seed < 5; ++seed) {
        auto ee = sample_environment_exact(dist, win, (uint64_t)seed, 0);
        auto ef = sample_environment_float(dist, win, (uint64_t)seed, 0);
        PassageField<long long> fe = passage_times(ee, source);
        PassageField<double> ff = passage_times(ef, source);
        // Small integer sums are exact in double.
        for (int32_t v = 0; v < win.vertex_count(); ++v)
            CHECK(ff.time[v] == double(fe.time[v]));
        CHECK(min_length_geodesic(ef, source, target, 1e-9).length ==
              min_length_geodesic(ee, source, target).length);
    }
}

TEST_CASE("geodesic length lower bound and parity") {
    Distribution dist = Distribution::parse("bern:0.45:0:1");
    Window win({4, 4});
    for (int seed = 0; seed < 8; ++seed) {
        auto env = sample_environment_exact(dist, win, (uint64_t)seed, 0);
        for (const Point& target : std::vector<Point>{{3, 1}, {2, 2}, {-4, 3}}) {
            int64_t m = l1_norm(target);
            Geodesic<long long> gmin = min_length_geodesic(env, {0, 0}, target);
            MaxGeodesic gmax = max_length_geodesic(env, {0, 0}, target);
            REQUIRE(gmax.exact);
            CHECK(gmin.length >= m);
            CHECK(gmax.length >= gmin.length);
            CHECK((gmin.length - m) % 2 == 0);
            CHECK((gmax.length - m) % 2 == 0);
        }
    }
}

TEST_CASE("max geodesic budget yields a flagged lower bound") {
    // Supercritical zero density: huge zero clusters, so a tiny budget must
    // trip and still return a valid lower bound.
    Distribution dist = Distribution::parse("bern:0.6:0:1");
    Window win({4, 4});
    auto env = sample_environment_exact(dist, win, 3, 0);
    Point source{0, 0}, target{4, 4};
    MaxGeodesic full = max_length_geodesic(env, source, target, 50'000'000);
    MaxGeodesic cut = max_length_geodesic(env, source, target, 100);
    REQUIRE(full.exact);
    CHECK(!cut.exact);
    CHECK(cut.length <= full.length);
    CHECK(cut.length >= min_length_geodesic(env, source, target).length);
}

TEST_CASE("shift sandwich difference quotients hold exactly") {
    const std::vector<std::string> laws = {"bern:0.3:0:1", "bern:0.5:1:2",
                                           "atoms:0@0.2,1@0.5,3/2@0.3"};
    Window win({4, 4});
    for (const std::string& spec : laws) {
        Distribution dist = Distribution::parse(spec);
        // keep b - delta >= -r0 so the shifted weights stay nonnegative
        Rat b = dist.r0_exact() == Rat(0) ? Rat(1, 2) : Rat(0);
        Rat delta = Rat(1, 4), eta = Rat(1, 3);
        for (int seed = 0; seed < 6; ++seed) {
            auto env = sample_environment_exact(dist, win, (uint64_t)seed, 0);
            for (const Point& target : std::vector<Point>{{4, 0}, {2, 3}}) {
                SandwichRecord r = shift_sandwich(env, {0, 0}, target, b, eta, delta);
                CAPTURE(spec);
                CAPTURE(seed);
                REQUIRE(r.lmax_exact);
                CHECK(r.ok);
                CHECK(r.lhs <= Rat(r.l_min));
                CHECK(Rat(r.l_min) <= Rat(r.l_max));
                CHECK(Rat(r.l_max) <= r.rhs);
            }
        }
    }
    // invalid shift rejected
    Distribution zero_atom = Distribution::parse("bern:0.3:0:1");
    auto env = sample_environment_exact(zero_atom, win, 0, 0);
    CHECK_THROWS_AS(shift_sandwich(env, {0, 0}, {2, 2}, Rat(0), Rat(1, 2), Rat(1, 2)),
                    PreconditionError);
}

TEST_CASE("geodesics shrink under increasing shift") {
    Distribution dist = Distribution::parse("bern:0.45:0:1");
    Window win({4, 4});
    for (int seed = 0; seed < 8; ++seed) {
        auto env = sample_environment_exact(dist, win, (uint64_t)seed, 0);
        ShiftMonotonicityRecord r =
            geodesic_shift_monotonicity(env, {0, 0}, {3, 3}, Rat(0), Rat(1, 2));
        REQUIRE(r.lmax_exact);
        CHECK(r.ok);
        CHECK(r.l_max_at_b <= r.l_min_at_a);
    }
    auto env = sample_environment_exact(dist, win, 0, 0);
    CHECK_THROWS_AS(geodesic_shift_monotonicity(env, {0, 0}, {2, 2}, Rat(1), Rat(1, 2)),
                    PreconditionError);
}

TEST_CASE("shifting composes and rejects negative-weight dijkstra") {
    Distribution dist = Distribution::parse("bern:0.5:1:2");
    Window win({2, 2});
    auto env = sample_environment_exact(dist, win, 7, 0);
    auto once = shift_environment(env, Rat(1, 2));
    auto twice = shift_environment(once, Rat(1, 3));
    auto direct = shift_environment(env, Rat(5, 6));
    CHECK(twice.shift == Rat(5, 6));
    CHECK(twice.den == direct.den);
    CHECK(twice.weights == direct.weights);

    auto below = shift_environment(env, Rat(-2));  // atoms 1,2 -> -1,0
    CHECK(below.has_negative);
    CHECK_THROWS_AS(passage_times(below, Point{0, 0}), PreconditionError);
}

TEST_CASE("passage time is symmetric in the endpoints") {
    Distribution dist = Distribution::parse("atoms:0@0.2,1@0.5,3/2@0.3");
    Window win({3, 3});
    auto env = sample_environment_exact(dist, win, 5, 0);
    Point a{0, 0}, b{3, -2};
    CHECK(passage_times(env, a).at(win, b) == passage_times(env, b).at(win, a));
}
