#include "rieszlab/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace rieszlab {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<double> random_unit_vector(int dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> v(static_cast<std::size_t>(dim));
    double n2 = 0.0;
    do {
        n2 = 0.0;
        for (auto& c : v) {
            c = gauss(rng);
            n2 += c * c;
        }
    } while (n2 < 1e-24);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : v) c *= inv;
    return v;
}

namespace {

double halton(std::uint64_t i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
        f /= base;
        r += f * static_cast<double>(i % static_cast<std::uint64_t>(base));
        i /= static_cast<std::uint64_t>(base);
    }
    return r;
}

// Acklam-style rational approximation; plenty for direction generation.
double inv_normal_cdf(double p) {
    if (p <= 0.0) p = 1e-12;
    if (p >= 1.0) p = 1.0 - 1e-12;
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double q, r;
    if (p < plow) {
        q = std::sqrt(-2 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    if (p > phigh) {
        q = std::sqrt(-2 * std::log(1 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    q = p - 0.5;
    r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

}  // namespace

std::vector<std::vector<double>> halton_sphere(int dim, int count) {
    static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
    if (dim > 8) throw std::invalid_argument("halton_sphere: dim > 8 unsupported");
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        std::vector<double> v(static_cast<std::size_t>(dim));
        double n2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            v[static_cast<std::size_t>(d)] =
                inv_normal_cdf(halton(static_cast<std::uint64_t>(i + 1), primes[d]));
            n2 += v[static_cast<std::size_t>(d)] * v[static_cast<std::size_t>(d)];
        }
        if (n2 < 1e-24) {
            v.assign(static_cast<std::size_t>(dim), 0.0);
            v[0] = 1.0;
            n2 = 1.0;
        }
        const double inv = 1.0 / std::sqrt(n2);
        for (auto& c : v) c *= inv;
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<std::vector<double>> sphere_samples(int dim, int count_random,
                                                int count_low_discrepancy,
                                                std::uint64_t seed) {
    auto out = halton_sphere(dim, count_low_discrepancy);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count_random; ++i) out.push_back(random_unit_vector(dim, rng));
    return out;
}

}  // namespace rieszlab
