#include "delhier/costmodel.hpp"

#include <cmath>
#include <sstream>

namespace delhier::costmodel {

double c_walk(double n) { return 17.0 + 6.2 * std::sqrt(n); }

double c0(double n, double alpha) {
    return (32.0 + 6.2 * std::sqrt(alpha)) * std::ceil(std::log2(n) / std::log2(alpha));
}

double c0_smooth(double n, double alpha) {
    return (32.0 + 6.2 * std::sqrt(alpha)) * (std::log2(n) / std::log2(alpha));
}

double c_msz(double n, double beta) {
    return 17.0 + std::cbrt(n) * (6.2 / std::sqrt(beta) + 5.0 * beta);
}

double c_k(double n, unsigned k, double alpha) {
    return c_walk(n / std::pow(alpha, k)) + 15.0 * k + k * c_walk(alpha);
}

double c_star_k(double n, unsigned k, double alpha, double beta) {
    return c_msz(n / std::pow(alpha, k), beta) + 15.0 * k + k * c_walk(alpha);
}

long crossover_msz_vs_walk(double beta, long n_max) {
    for (long n = 2; n <= n_max; ++n)
        if (c_msz(static_cast<double>(n), beta) < c_walk(static_cast<double>(n))) return n;
    return 0;
}

long crossover_one_level_vs_walk(double alpha, long n_max) {
    for (long n = 2; n <= n_max; ++n)
        if (c_k(static_cast<double>(n), 1, alpha) < c_walk(static_cast<double>(n))) return n;
    return 0;
}

long crossover_one_level_vs_msz(double alpha, double beta, long n_max) {
    for (long n = 2; n <= n_max; ++n)
        if (c_k(static_cast<double>(n), 1, alpha) < c_msz(static_cast<double>(n), beta)) return n;
    return 0;
}

double tuned_alpha_argmin(double n) {
    double best_a = 2.0;
    double best = c0_smooth(n, best_a);
    for (double a = 2.0; a <= 200.0; a += 0.01) {
        const double v = c0_smooth(n, a);
        if (v < best) {
            best = v;
            best_a = a;
        }
    }
    return best_a;
}

std::string emit_csv(const std::vector<long>& sizes, double alpha, double beta) {
    std::ostringstream os;
    os << "n,c_walk,c0,c_msz,c_1,c_2,c_star_1,c_star_2\n";
    os.precision(6);
    os << std::fixed;
    for (long n : sizes) {
        const double d = static_cast<double>(n);
        os << n << ',' << c_walk(d) << ',' << c0(d, alpha) << ',' << c_msz(d, beta) << ','
           << c_k(d, 1, alpha) << ',' << c_k(d, 2, alpha) << ',' << c_star_k(d, 1, alpha, beta)
           << ',' << c_star_k(d, 2, alpha, beta) << '\n';
    }
    return os.str();
}

}  // namespace delhier::costmodel
