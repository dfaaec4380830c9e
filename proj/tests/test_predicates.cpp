#include "doctest.h"

#include "delhier/predicates.hpp"
#include "delhier/rng.hpp"
#include "oracle.hpp"

using namespace delhier;

namespace {

Point rand_point(Rng& rng) {
    return {static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound)),
            static_cast<std::int32_t>(rng.next_in(-kCoordinateBound, kCoordinateBound))};
}

Point rand_small(Rng& rng, std::int32_t r) {
    return {static_cast<std::int32_t>(rng.next_in(-r, r)),
            static_cast<std::int32_t>(rng.next_in(-r, r))};
}

}  // namespace

TEST_CASE("orientation basics") {
    CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::kCounterClockwise);
    CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == Orientation::kCollinear);
    CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::kClockwise);
}

TEST_CASE("in_circle basics") {
    const Point a{0, 0}, b{2, 0}, c{0, 2};
    CHECK(in_circle(a, b, c, {1, 1}) == CirclePosition::kInside);
    CHECK(in_circle(a, b, c, {2, 2}) == CirclePosition::kCocircular);
    CHECK(in_circle(a, b, c, {5, 5}) == CirclePosition::kOutside);
}

TEST_CASE("squared_distance basics and extremes") {
    CHECK(squared_distance({0, 0}, {3, 4}) == 25);
    CHECK(squared_distance({1, 1}, {1, 1}) == 0);
    // Overflow headroom witness at the coordinate extremes: (2^25)^2 = 2^50.
    CHECK(squared_distance({-kCoordinateBound, 0}, {kCoordinateBound, 0}) ==
          (std::int64_t{1} << 50));
}

TEST_CASE("angle_acute_at basics") {
    CHECK_FALSE(angle_acute_at({0, 0}, {1, 0}, {0, 1}));  // exactly pi/2
    CHECK(angle_acute_at({0, 0}, {1, 0}, {1, 1}));
    CHECK_FALSE(angle_acute_at({0, 0}, {-1, 0}, {1, 1}));
}

TEST_CASE("coordinate bound check") {
    CHECK(in_coordinate_range({kCoordinateBound, -kCoordinateBound}));
    CHECK_FALSE(in_coordinate_range({kCoordinateBound + 1, 0}));
    CHECK_FALSE(in_coordinate_range({0, -kCoordinateBound - 1}));
}

TEST_CASE("orientation antisymmetry and translation invariance") {
    Rng rng(42);
    for (int it = 0; it < 20000; ++it) {
        const Point a = rand_point(rng), b = rand_point(rng), c = rand_point(rng);
        const auto o = orientation(a, b, c);
        const auto swapped = orientation(b, a, c);
        if (o == Orientation::kCollinear)
            CHECK(swapped == Orientation::kCollinear);
        else
            CHECK(static_cast<int>(swapped) == -static_cast<int>(o));
        // translation by a bounded vector keeping everything in range
        const std::int32_t tx = static_cast<std::int32_t>(rng.next_in(-100, 100));
        const std::int32_t ty = static_cast<std::int32_t>(rng.next_in(-100, 100));
        const Point a2{a.x / 2 + tx, a.y / 2 + ty}, b2{b.x / 2 + tx, b.y / 2 + ty},
            c2{c.x / 2 + tx, c.y / 2 + ty};
        CHECK(orientation(a2, b2, c2) ==
              orientation({a.x / 2, a.y / 2}, {b.x / 2, b.y / 2}, {c.x / 2, c.y / 2}));
    }
    // exhaustive small grid
    for (int ax = -2; ax <= 2; ++ax)
        for (int ay = -2; ay <= 2; ++ay)
            for (int bx = -2; bx <= 2; ++bx)
                for (int by = -2; by <= 2; ++by)
                    for (int cx = -2; cx <= 2; ++cx)
                        for (int cy = -2; cy <= 2; ++cy) {
                            const Point a{ax, ay}, b{bx, by}, c{cx, cy};
                            CHECK(static_cast<int>(orientation(a, b, c)) ==
                                  oracle::orientation_sign(a, b, c));
                        }
}

TEST_CASE("in_circle cyclic invariance and translation") {
    Rng rng(7);
    int done = 0;
    while (done < 5000) {
        const Point a = rand_point(rng), b = rand_point(rng), c = rand_point(rng);
        if (orientation(a, b, c) != Orientation::kCounterClockwise) continue;
        const Point d = rand_point(rng);
        ++done;
        const auto r = in_circle(a, b, c, d);
        CHECK(in_circle(b, c, a, d) == r);
        CHECK(in_circle(c, a, b, d) == r);
    }
}

TEST_CASE("predicates match the bignum oracle on random bounded inputs") {
    Rng rng(2024);
    // full-range and clustered draws; clustered ones force near-degeneracy
    for (int it = 0; it < 1000000; ++it) {
        const bool small = (it % 4 == 0);
        const Point a = small ? rand_small(rng, 64) : rand_point(rng);
        const Point b = small ? rand_small(rng, 64) : rand_point(rng);
        const Point c = small ? rand_small(rng, 64) : rand_point(rng);
        REQUIRE(static_cast<int>(orientation(a, b, c)) == oracle::orientation_sign(a, b, c));
        if (orientation(a, b, c) == Orientation::kCounterClockwise) {
            const Point d = small ? rand_small(rng, 64) : rand_point(rng);
            REQUIRE(static_cast<int>(in_circle(a, b, c, d)) == oracle::in_circle_sign(a, b, c, d));
        }
        if (it % 16 == 0) REQUIRE(squared_distance(a, b) == oracle::sq_dist(a, b));
    }
}

TEST_CASE("squared distance symmetry and identity") {
    Rng rng(3);
    for (int it = 0; it < 10000; ++it) {
        const Point a = rand_point(rng), b = rand_point(rng);
        CHECK(squared_distance(a, b) == squared_distance(b, a));
        CHECK((squared_distance(a, b) == 0) == (a == b));
    }
}
