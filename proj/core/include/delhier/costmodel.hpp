#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace delhier::costmodel {

/// Analytic floating-point-operation counts for one point location, by
/// method. n is the size of the level being walked.

/// March from a known vertex across a triangulation of n sites:
/// 17 + 6.2 sqrt(n).
double c_walk(double n);

/// Full descent cost with the level count taken as an integer:
/// (32 + 6.2 sqrt(alpha)) * ceil(log2 n / log2 alpha).
double c0(double n, double alpha);

/// The same per-level cost with a fractional level count; this smooth form
/// is what the alpha tuning minimizes.
double c0_smooth(double n, double alpha);

/// Jump-and-walk with a sample of beta * n^(1/3) points:
/// 17 + n^(1/3) (6.2/sqrt(beta) + 5 beta).
double c_msz(double n, double beta);

/// Structure with k sampled levels above the base: walk n/alpha^k at the
/// top, then 15 + c_walk(alpha) per level change. k = 0 is the plain march.
double c_k(double n, unsigned k, double alpha);

/// Same, with the top-level walk replaced by jump-and-walk. k = 0 is plain
/// jump-and-walk.
double c_star_k(double n, unsigned k, double alpha, double beta);

/// Smallest integer n at which the left method beats the right one,
/// scanning n = 2..n_max; 0 if none. Exact with respect to the formulas.
long crossover_msz_vs_walk(double beta, long n_max);
long crossover_one_level_vs_walk(double alpha, long n_max);
long crossover_one_level_vs_msz(double alpha, double beta, long n_max);

/// argmin over alpha in [2, 200] (step 0.01) of c0_smooth(n, alpha).
double tuned_alpha_argmin(double n);

/// CSV rows `n,c_walk,c0,c_msz,c_1,c_2,c_star_1,c_star_2` for the given
/// sizes; data behind the theoretical-comparison figures.
std::string emit_csv(const std::vector<long>& sizes, double alpha, double beta);

}  // namespace delhier::costmodel
