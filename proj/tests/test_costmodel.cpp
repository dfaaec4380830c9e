#include "doctest.h"

#include <cmath>
#include <sstream>

#include "delhier/costmodel.hpp"

using namespace delhier::costmodel;

TEST_CASE("c_walk values") {
    CHECK(c_walk(1) == doctest::Approx(23.2).epsilon(1e-9));
    CHECK(c_walk(100) == doctest::Approx(79.0).epsilon(1e-9));
    CHECK(c_walk(10000) == doctest::Approx(637.0).epsilon(1e-9));
}

TEST_CASE("c0 with the ceiling as printed") {
    const double v = c0(1 << 20, 40.0);
    const double expect = (32.0 + 6.2 * std::sqrt(40.0)) * 4.0;
    CHECK(v == doctest::Approx(expect).epsilon(1e-12));
    CHECK(v == doctest::Approx(284.8489719443516).epsilon(1e-9));
}

TEST_CASE("c0 minimum band over alpha in [18,90]") {
    double best = 1e100;
    for (double a = 18.0; a <= 90.0; a += 0.01) best = std::min(best, c0(1 << 20, a));
    const double per_log = best / 20.0;  // log2(2^20)
    CHECK(per_log >= 13.3);
    CHECK(per_log <= 14.0);
}

TEST_CASE("tuned alpha argmin is near 40") {
    const double a = tuned_alpha_argmin(1 << 20);
    CHECK(a >= 35.0);
    CHECK(a <= 45.0);
}

TEST_CASE("c_msz values and near-minimal beta band") {
    CHECK(c_msz(1000000, 1.0) == doctest::Approx(1137.0).epsilon(1e-9));
    CHECK(c_msz(1, 1.0) == doctest::Approx(28.2).epsilon(1e-9));
    // the bracket 6.2/sqrt(beta)+5*beta is near its minimum on (0.5, 1)
    double best = 1e100, best_b = 0;
    for (double b = 0.05; b <= 4.0; b += 0.001) {
        const double v = 6.2 / std::sqrt(b) + 5.0 * b;
        if (v < best) {
            best = v;
            best_b = b;
        }
    }
    CHECK(best_b > 0.5);
    CHECK(best_b < 1.0);
    const double at1 = 6.2 + 5.0;
    CHECK(at1 <= best * 1.05);  // within 5% of the minimum at beta=1
}

TEST_CASE("c_k and c_star_k reduce to the plain forms at k=0") {
    for (double n : {1.0, 50.0, 12345.0}) {
        CHECK(c_k(n, 0, 40.0) == doctest::Approx(c_walk(n)).epsilon(1e-12));
        CHECK(c_star_k(n, 0, 40.0, 1.0) == doctest::Approx(c_msz(n, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("formulas are monotone nondecreasing in n") {
    double prev_w = 0, prev_m = 0, prev_k = 0, prev_s = 0;
    for (long n = 1; n <= 100000; n = n * 3 / 2 + 1) {
        const double d = static_cast<double>(n);
        CHECK(c_walk(d) >= prev_w);
        CHECK(c_msz(d, 1.0) >= prev_m);
        CHECK(c_k(d, 2, 40.0) >= prev_k);
        CHECK(c_star_k(d, 2, 40.0, 1.0) >= prev_s);
        prev_w = c_walk(d);
        prev_m = c_msz(d, 1.0);
        prev_k = c_k(d, 2, 40.0);
        prev_s = c_star_k(d, 2, 40.0, 1.0);
    }
}

TEST_CASE("crossover scans reproduce the reported thresholds") {
    // frozen values from integer scans of the formulas at alpha=40, beta=1
    CHECK(crossover_msz_vs_walk(1.0, 100000) == 35);            // reported as n>40
    CHECK(crossover_one_level_vs_walk(40.0, 100000) == 187);    // reported as n>180
    CHECK(crossover_one_level_vs_msz(40.0, 1.0, 100000) == 624);  // reported as n>600
}

TEST_CASE("csv has the stable schema") {
    const std::string csv = emit_csv({10, 100}, 40.0, 1.0);
    std::istringstream is(csv);
    std::string line;
    std::getline(is, line);
    CHECK(line == "n,c_walk,c0,c_msz,c_1,c_2,c_star_1,c_star_2");
    int rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
}
