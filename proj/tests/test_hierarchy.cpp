#include "doctest.h"

#include <atomic>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "delhier/datasets.hpp"
#include "delhier/hierarchy.hpp"
#include "oracle.hpp"

using namespace delhier;

namespace {

Point rp(Rng& rng) {
    return {static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound)),
            static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound))};
}

std::vector<oracle::EdgeSet> level_edge_sets(const Hierarchy& h) {
    std::vector<oracle::EdgeSet> out;
    for (std::size_t i = 0; i < h.level_count(); ++i) out.push_back(oracle::edges_of(h.level(i)));
    return out;
}

}  // namespace

TEST_CASE("draw_top_level is geometric") {
    SUBCASE("huge alpha never promotes") {
        Rng rng(1);
        for (int i = 0; i < 1000; ++i) CHECK(draw_top_level(rng, 1e12, 64) == 0);
    }
    SUBCASE("alpha=30 promotion rate within 3 sigma") {
        Rng rng(2);
        const int n = 1000000;
        int promoted = 0;
        std::map<std::uint32_t, int> histo;
        for (int i = 0; i < n; ++i) {
            const std::uint32_t l = draw_top_level(rng, 30.0, 64);
            if (l >= 1) ++promoted;
            ++histo[l];
        }
        const double p = 1.0 / 30.0;
        const double sigma = std::sqrt(n * p * (1 - p));
        CHECK(std::abs(promoted - n * p) < 3 * sigma);
        int two = 0;
        for (auto& [l, c] : histo)
            if (l >= 2) two += c;
        const double sigma2 = std::sqrt(n * p * p * (1 - p * p));
        CHECK(std::abs(two - n * p * p) < 4 * sigma2 + 10);
    }
    SUBCASE("cap at max_levels-1") {
        Rng rng(3);
        for (int i = 0; i < 2000; ++i) CHECK(draw_top_level(rng, 1.0001, 4) <= 3);
    }
}

TEST_CASE("errors: empty structure, bad handle, out-of-range point") {
    Hierarchy h;
    CHECK_THROWS_AS(h.locate({0, 0}), EmptyStructureError);
    CHECK_THROWS_AS(h.insert({kCoordinateBound + 1, 0}), CoordinateRangeError);
    const SiteId s = h.insert({0, 0});
    h.remove(s);
    CHECK_THROWS_AS(h.remove(s), UnknownHandleError);
    CHECK_THROWS_AS(h.remove(12345), UnknownHandleError);
}

TEST_CASE("bootstrap: three points make one level-0 triangle") {
    Hierarchy h;
    h.insert({0, 0});
    h.insert({1000, 0});
    h.insert({0, 1000});
    CHECK(h.level_size(0) == 3);
    CHECK(h.level(0).finite_triangle_count() == 1);
    CHECK(h.validate(true).empty());
}

TEST_CASE("insert 2000 random: levels valid and binomially sized") {
    HierarchyConfig cfg;
    cfg.rng_seed = 5;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 2000, 6});
    for (const Point& p : pts) h.insert(p);
    CHECK(h.site_count() == pts.size());
    CHECK(h.validate(true).empty());
    const double n = static_cast<double>(pts.size());
    const double p = 1.0 / 30.0;
    const double sigma = std::sqrt(n * p * (1 - p));
    if (h.level_count() > 1)
        CHECK(std::abs(h.level_size(1) - n * p) < 3 * sigma + 1);
}

TEST_CASE("duplicate insert returns the same handle and leaves bytes unchanged") {
    HierarchyConfig cfg;
    cfg.rng_seed = 9;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 200, 10});
    std::vector<SiteId> ids;
    for (const Point& p : pts) ids.push_back(h.insert(p));
    std::ostringstream before;
    h.snapshot(before);
    const SiteId again = h.insert(pts[17]);
    CHECK(again == ids[17]);
    std::ostringstream after;
    h.snapshot(after);
    CHECK(before.str() == after.str());
}

TEST_CASE("locate on an existing site reports distance zero and an incident triangle") {
    Hierarchy h;
    const auto pts = generate({Distribution::kRandom, 50, 11});
    for (const Point& p : pts) h.insert(p);
    const LocateResult res = h.locate(pts[31]);
    CHECK(res.nearest_sqdist == 0);
    CHECK(h.site_point(res.nearest) == pts[31]);
    REQUIRE(res.tri0 != kNullRef);
    bool incident = false;
    for (VertexRef v : h.level(0).triangle_vertices(res.tri0))
        if (v != kInfiniteVertex && h.level(0).point(v) == pts[31]) incident = true;
    CHECK(incident);
}

TEST_CASE("locate returns a containing level-0 triangle for random queries") {
    HierarchyConfig cfg;
    cfg.phase3_mode = Phase3Mode::kExact;
    cfg.rng_seed = 12;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 10000, 13});
    for (const Point& p : pts) h.insert(p);
    Rng rng(14);
    const Triangulation& t0 = h.level(0);
    for (int it = 0; it < 1000; ++it) {
        const Point q = rp(rng);
        const LocateResult res = h.locate(q);
        REQUIRE(res.tri0 != kNullRef);
        const auto& tv = t0.triangle_vertices(res.tri0);
        if (t0.is_infinite_triangle(res.tri0)) {
            int k = 0;
            while (tv[k] != kInfiniteVertex) ++k;
            CHECK(oracle::orientation_sign(t0.point(tv[(k + 2) % 3]), t0.point(tv[(k + 1) % 3]),
                                           q) < 0);
        } else {
            CHECK(oracle::point_in_triangle(t0.point(tv[0]), t0.point(tv[1]), t0.point(tv[2]), q));
        }
        // descent monotonicity in exact mode
        std::int64_t prev = -1;
        for (std::size_t lev = res.level_vertex.size(); lev-- > 0;) {
            if (res.level_vertex[lev] == kNullRef) continue;
            const std::int64_t d = oracle::sq_dist(h.level(lev).point(res.level_vertex[lev]), q);
            if (prev >= 0) CHECK(d <= prev);
            prev = d;
        }
    }
}

TEST_CASE("nearest_neighbor in exact mode equals the linear scan") {
    HierarchyConfig cfg;
    cfg.phase3_mode = Phase3Mode::kExact;
    cfg.rng_seed = 15;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 1000, 16});
    for (const Point& p : pts) h.insert(p);
    Rng rng(17);
    for (int it = 0; it < 1000; ++it) {
        const Point q = rp(rng);
        const SiteId s = h.nearest_neighbor(q);
        CHECK(oracle::sq_dist(h.site_point(s), q) ==
              oracle::sq_dist(pts[oracle::nearest_index(pts, q)], q));
    }
    CHECK(h.site_point(h.nearest_neighbor(pts[123])) == pts[123]);
}

TEST_CASE("modified mode stays within the containing triangle's nearest corner") {
    HierarchyConfig cfg;  // default kModified
    cfg.rng_seed = 18;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 1000, 19});
    for (const Point& p : pts) h.insert(p);
    Rng rng(20);
    for (int it = 0; it < 300; ++it) {
        const Point q = rp(rng);
        const LocateResult res = h.locate(q);
        std::int64_t corner_best = -1;
        for (VertexRef v : h.level(0).triangle_vertices(res.tri0)) {
            if (v == kInfiniteVertex) continue;
            const std::int64_t d = oracle::sq_dist(h.level(0).point(v), q);
            if (corner_best < 0 || d < corner_best) corner_best = d;
        }
        CHECK(res.nearest_sqdist <= corner_best);
    }
}

TEST_CASE("insert then remove restores every level's edge set") {
    HierarchyConfig cfg;
    cfg.rng_seed = 21;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 500, 22});
    for (const Point& p : pts) h.insert(p);
    const auto before = level_edge_sets(h);
    const SiteId s = h.insert({99999, -99999});
    h.remove(s);
    const auto after = level_edge_sets(h);
    REQUIRE(before.size() == after.size());
    for (std::size_t i = 0; i < before.size(); ++i) CHECK(before[i] == after[i]);
    CHECK(h.validate(true).empty());
}

TEST_CASE("removing all but three sites leaves a valid structure") {
    HierarchyConfig cfg;
    cfg.rng_seed = 23;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 60, 24});
    std::vector<SiteId> ids;
    for (const Point& p : pts) ids.push_back(h.insert(p));
    for (std::size_t i = 3; i < ids.size(); ++i) h.remove(ids[i]);
    CHECK(h.site_count() == 3);
    CHECK(h.validate(true).empty());
    CHECK(h.level_size(0) == 3);
    const LocateResult res = h.locate({0, 0});
    CHECK(res.nearest != kInvalidSite);
}

TEST_CASE("interleaved inserts and removes validate every 100 ops") {
    HierarchyConfig cfg;
    cfg.rng_seed = 25;
    Hierarchy h(cfg);
    Rng rng(26);
    std::vector<SiteId> live;
    int ops = 0;
    while (ops < 1000) {
        if (live.size() < 10 || rng.next_unit() < 0.6) {
            const SiteId s = h.insert(rp(rng));
            live.push_back(s);
        } else {
            const std::size_t i = rng.next_below(live.size());
            h.remove(live[i]);
            live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        }
        if (++ops % 100 == 0) REQUIRE(h.validate(true).empty());
    }
}

TEST_CASE("msz sample: size formula and liveness under deletions") {
    HierarchyConfig cfg;
    cfg.max_levels = 1;  // jump-and-walk preset: the sample lives on level 0
    cfg.rng_seed = 27;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 1000, 28});
    std::vector<SiteId> ids;
    for (const Point& p : pts) ids.push_back(h.insert(p));
    CHECK(h.msz_sample_size(0) == 10);  // ceil(1000^(1/3))
    Rng rng(29);
    for (int it = 0; it < 200; ++it) {
        const Point q = rp(rng);
        PhaseCounters c;
        const VertexRef v = h.msz_start(q, 0, c);
        REQUIRE(h.level(0).vertex_alive(v));
        CHECK(c.distance_computations == h.msz_sample_size(0));
    }
    Rng del(30);
    std::size_t live_n = ids.size();
    for (int k = 0; k < 600; ++k) {
        std::size_t i = del.next_below(ids.size());
        while (!h.site_alive(ids[i])) i = del.next_below(ids.size());
        h.remove(ids[i]);
        --live_n;
        if (live_n < 25) break;
        PhaseCounters c;
        const VertexRef v = h.msz_start({0, 0}, 0, c);
        REQUIRE(h.level(0).vertex_alive(v));
    }
    CHECK(h.validate().empty());
}

TEST_CASE("msz sample size at 27000 sites matches the cube-root formula") {
    HierarchyConfig cfg;
    cfg.max_levels = 1;
    cfg.rng_seed = 31;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 27000, 32});
    for (const Point& p : pts) h.insert(p);
    CHECK(h.level_size(0) == 27000);
    CHECK(h.msz_sample_size(0) == 30);  // beta * 27000^(1/3)
}

TEST_CASE("an n=27000 structure occupies about three useful levels") {
    HierarchyConfig cfg;
    cfg.rng_seed = 39;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 27000, 40});
    for (const Point& p : pts) h.insert(p);
    std::size_t adequate = 0;
    for (std::size_t i = 0; i < h.level_count(); ++i)
        if (h.level_size(i) >= cfg.min_hierarchy_size) ++adequate;
    // log_30(27000) = 3; sizes ~27000/900/30 pass the threshold of 20
    CHECK(adequate >= 2);
    CHECK(adequate <= 4);
    CHECK(h.validate().empty());
}

TEST_CASE("a large all-collinear site set crosses the bootstrap threshold safely") {
    HierarchyConfig cfg;
    cfg.rng_seed = 41;
    Hierarchy h(cfg);
    for (int i = 0; i < 60; ++i) h.insert({i * 1000, i * 500});
    CHECK(h.site_count() == 60);
    CHECK_FALSE(h.level(0).has_triangles());
    const LocateResult res = h.locate({30500, 15250});
    CHECK(res.nearest != kInvalidSite);
    CHECK(h.validate().empty());
    // a point off the line triangulates every level it reaches
    h.insert({5000, 20000});
    CHECK(h.level(0).has_triangles());
    CHECK(h.validate(true).empty());
    // and exact nearest still answers
    HierarchyConfig ecfg = cfg;
    ecfg.phase3_mode = Phase3Mode::kExact;
    const SiteId nn = h.nearest_neighbor({0, 1});
    CHECK(h.site_point(nn) == Point{0, 0});
}

TEST_CASE("level assignment depends only on the draw, not on the order") {
    const auto pts = generate({Distribution::kRandom, 300, 33});
    Rng draw(34);
    std::vector<std::uint32_t> lvl;
    for (std::size_t i = 0; i < pts.size(); ++i) lvl.push_back(draw_top_level(draw, 30.0, 64));

    auto build_perm = [&](const std::vector<std::size_t>& order) {
        HierarchyConfig cfg;
        cfg.rng_seed = 35;
        Hierarchy h(cfg);
        std::map<std::array<std::int32_t, 2>, std::uint32_t> got;
        for (std::size_t i : order) h.insert_with_level(pts[i], lvl[i]);
        for (SiteId s = 0; s < pts.size(); ++s)
            if (h.site_alive(s)) got[{h.site_point(s).x, h.site_point(s).y}] = h.site_top_level(s);
        CHECK(h.validate().empty());
        return got;
    };
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto a = build_perm(order);
    Rng sh(36);
    sh.shuffle(order);
    const auto b = build_perm(order);
    CHECK(a == b);
}

TEST_CASE("mean locate crossings grow like log n") {
    auto mean_crossings = [](std::size_t n, std::uint64_t seed) {
        HierarchyConfig cfg;
        cfg.rng_seed = seed;
        Hierarchy h(cfg);
        for (const Point& p : generate({Distribution::kRandom, n, seed + 1})) h.insert(p);
        Rng rng(seed + 2);
        std::uint64_t total = 0;
        const int kQueries = 500;
        for (int i = 0; i < kQueries; ++i)
            total += h.locate(rp(rng)).trace.totals().phase2_crossings;
        return static_cast<double>(total) / kQueries;
    };
    const double small = mean_crossings(1000, 400);
    const double large = mean_crossings(100000, 500);
    const double ratio = large / small;
    // log(1e5)/log(1e3) = 1.67; slack for the per-level constants
    CHECK(ratio >= 1.2);
    CHECK(ratio <= 3.5);
}

TEST_CASE("snapshot carries the site directory") {
    HierarchyConfig cfg;
    cfg.rng_seed = 37;
    Hierarchy h(cfg);
    h.insert({5, 7});
    h.insert({-3, 2});
    h.insert({10, -4});
    std::ostringstream os;
    h.snapshot(os);
    const std::string s = os.str();
    CHECK(s.find("# sites") != std::string::npos);
    CHECK(s.find("0 5 7 ") != std::string::npos);
    CHECK(s.find("1 -3 2 ") != std::string::npos);
}

TEST_CASE("concurrent read-only locates agree with sequential answers") {
    HierarchyConfig cfg;
    cfg.rng_seed = 42;
    Hierarchy h(cfg);
    const auto pts = generate({Distribution::kRandom, 10000, 43});
    for (const Point& p : pts) h.insert(p);
    std::vector<Point> queries;
    std::vector<SiteId> expected;
    Rng rng(44);
    for (int i = 0; i < 2000; ++i) {
        queries.push_back(rp(rng));
        expected.push_back(h.locate(queries.back()).nearest);
    }
    std::atomic<int> mismatches{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = static_cast<std::size_t>(t); i < queries.size(); i += 4)
                if (h.locate(queries[i]).nearest != expected[i]) ++mismatches;
        });
    }
    for (auto& th : pool) th.join();
    CHECK(mismatches.load() == 0);
}

TEST_CASE("top levels are pruned when their last site leaves") {
    HierarchyConfig cfg;
    cfg.rng_seed = 38;
    Hierarchy h(cfg);
    const SiteId a = h.insert_with_level({0, 0}, 3);
    h.insert_with_level({100, 0}, 0);
    h.insert_with_level({0, 100}, 0);
    CHECK(h.level_count() == 4);
    h.remove(a);
    CHECK(h.level_count() == 1);
    CHECK(h.validate().empty());
}
