#include "rieszlab/quad.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "rieszlab/fft.hpp"
#include "rieszlab/radial.hpp"
#include "rieszlab/sampling.hpp"

namespace rieszlab::quad {

using fft::Complex;

Domain Domain::annulus(double a, double b) {
    if (!(a >= 0.0 && b > a)) throw std::invalid_argument("domain: bad annulus radii");
    Domain d;
    d.kind = Kind::annulus;
    d.inner = a;
    d.outer = b;
    return d;
}

Domain Domain::ball(std::vector<double> c, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("domain: bad ball radius");
    Domain d;
    d.kind = Kind::ball;
    d.center = std::move(c);
    d.outer = r;
    return d;
}

bool Domain::contains(const std::vector<double>& x) const {
    switch (kind) {
        case Kind::box: return true;
        case Kind::annulus: {
            double r2 = 0.0;
            for (double c : x) r2 += c * c;
            const double r = std::sqrt(r2);
            return r > inner && r <= outer;
        }
        case Kind::ball: {
            double r2 = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                const double d = x[i] - center[i];
                r2 += d * d;
            }
            return std::sqrt(r2) <= outer;
        }
    }
    return false;
}

FieldSamples sample_field(const FieldBase& f, const GridSpec& grid) {
    grid.validate();
    if (f.dim() != grid.dim) throw std::invalid_argument("sample_field: dimension mismatch");
    FieldSamples out;
    out.grid = grid;
    out.fiber = f.fiber();
    out.values.resize(static_cast<std::size_t>(grid.points() * out.fiber));
    const long total = grid.points();
    for (long p = 0; p < total; ++p) {
        const auto x = grid.point(p);
        const auto v = f.value(x);
        for (int c = 0; c < out.fiber; ++c) out.values[static_cast<std::size_t>(p * out.fiber + c)] = v[static_cast<std::size_t>(c)];
    }
    return out;
}

namespace {

/// Exact integral of gamma |y|^{l-N} over the ball of volume h^N, divided by
/// h^N: the effective kernel value for the diagonal cell.
double singular_cell_value(const KernelSpec& kernel, double h) {
    const int N = kernel.dim;
    const double r_eq = h / std::pow(ball_volume(N), 1.0 / N);
    return kernel.gamma * sphere_area(N) * std::pow(r_eq, kernel.ell) / kernel.ell /
           std::pow(h, N);
}

struct KernelFftCache {
    std::mutex mutex;
    bool valid = false;
    GridSpec grid;
    double ell = 0.0, gamma = 0.0;
    std::vector<Complex> data;
    std::vector<int> shape;
};

KernelFftCache g_kernel_cache;

std::vector<Complex> kernel_fft(const KernelSpec& kernel, const GridSpec& grid,
                                std::vector<int>& shape_out) {
    std::lock_guard<std::mutex> lock(g_kernel_cache.mutex);
    if (g_kernel_cache.valid && g_kernel_cache.grid == grid && g_kernel_cache.ell == kernel.ell &&
        g_kernel_cache.gamma == kernel.gamma) {
        shape_out = g_kernel_cache.shape;
        return g_kernel_cache.data;
    }
    const int N = grid.dim, n = grid.n, P = 2 * grid.n;
    const double h = grid.h();
    std::vector<int> shape(static_cast<std::size_t>(N), P);
    long total = 1;
    for (int d = 0; d < N; ++d) total *= P;
    std::vector<Complex> k(static_cast<std::size_t>(total), Complex(0.0, 0.0));
    for (long flat = 0; flat < total; ++flat) {
        long rest = flat;
        double r2 = 0.0;
        for (int d = N - 1; d >= 0; --d) {
            const int t = static_cast<int>(rest % P);
            rest /= P;
            const int o = t < n ? t : t - P;  // displacement index in [-n, n)
            const double x = o * h;
            r2 += x * x;
        }
        const double r = std::sqrt(r2);
        k[static_cast<std::size_t>(flat)] =
            (r == 0.0) ? singular_cell_value(kernel, h) : kernel.radial_value(r);
    }
    fft::forward(k, shape);
    g_kernel_cache.valid = true;
    g_kernel_cache.grid = grid;
    g_kernel_cache.ell = kernel.ell;
    g_kernel_cache.gamma = kernel.gamma;
    g_kernel_cache.data = k;
    g_kernel_cache.shape = shape;
    shape_out = shape;
    return k;
}

}  // namespace

FieldSamples riesz_potential_grid(const FieldSamples& f, const KernelSpec& kernel) {
    f.validate();
    kernel.validate();
    if (kernel.kind != KernelKind::riesz)
        throw std::invalid_argument("riesz_potential_grid: grid path requires the riesz kind");
    if (kernel.dim != f.grid.dim) throw std::invalid_argument("riesz_potential_grid: dim mismatch");
    const int N = f.grid.dim, n = f.grid.n, P = 2 * n;
    const double hN = std::pow(f.grid.h(), N);

    std::vector<int> shape;
    const auto khat = kernel_fft(kernel, f.grid, shape);
    long total_pad = 1;
    for (int d = 0; d < N; ++d) total_pad *= P;

    FieldSamples out;
    out.grid = f.grid;
    out.fiber = f.fiber;
    out.values.assign(static_cast<std::size_t>(f.grid.points() * f.fiber), 0.0);

    std::vector<Complex> buf(static_cast<std::size_t>(total_pad));
    const long n_points = f.grid.points();
    for (int c = 0; c < f.fiber; ++c) {
        std::fill(buf.begin(), buf.end(), Complex(0.0, 0.0));
        // scatter component c into the padded array
        for (long p = 0; p < n_points; ++p) {
            long rest = p, flat = 0;
            for (int d = N - 1, mul = 1; d >= 0; --d) {
                const long i = rest % n;
                rest /= n;
                flat += i * mul;
                mul *= P;
            }
            buf[static_cast<std::size_t>(flat)] = f.at(p, c);
        }
        fft::forward(buf, shape);
        for (long i = 0; i < total_pad; ++i) buf[static_cast<std::size_t>(i)] *= khat[static_cast<std::size_t>(i)];
        fft::inverse(buf, shape);
        for (long p = 0; p < n_points; ++p) {
            long rest = p, flat = 0;
            for (int d = N - 1, mul = 1; d >= 0; --d) {
                const long i = rest % n;
                rest /= n;
                flat += i * mul;
                mul *= P;
            }
            out.at(p, c) = buf[static_cast<std::size_t>(flat)].real() * hN;
        }
    }
    return out;
}

std::vector<double> riesz_potential_at(const FieldSamples& f, const KernelSpec& kernel,
                                       const std::vector<std::vector<double>>& points) {
    f.validate();
    kernel.validate();
    if (kernel.kind != KernelKind::riesz)
        throw std::invalid_argument("riesz_potential_at: requires the riesz kind");
    const int N = f.grid.dim;
    const double h = f.grid.h();
    const double hN = std::pow(h, N);
    const double diag_cell = singular_cell_value(kernel, h) * hN;
    std::vector<double> out;
    out.reserve(points.size() * static_cast<std::size_t>(f.fiber));
    const long n_points = f.grid.points();
    for (const auto& x : points) {
        if (static_cast<int>(x.size()) != N)
            throw std::invalid_argument("riesz_potential_at: point dim mismatch");
        for (double c : x)
            if (std::abs(c) > f.grid.half_width)
                throw std::invalid_argument("riesz_potential_at: point outside the box");
        const long own = f.grid.index_of(x);
        for (int c = 0; c < f.fiber; ++c) {
            double acc = 0.0;
            for (long p = 0; p < n_points; ++p) {
                if (p == own) continue;
                const auto y = f.grid.point(p);
                double r2 = 0.0;
                for (int d = 0; d < N; ++d) {
                    const double dd = x[static_cast<std::size_t>(d)] - y[static_cast<std::size_t>(d)];
                    r2 += dd * dd;
                }
                acc += kernel.radial_value(std::sqrt(r2)) * f.at(p, c);
            }
            acc *= hN;
            if (own >= 0) acc += diag_cell * f.at(own, c);
            out.push_back(acc);
        }
    }
    return out;
}

std::vector<double> riesz_potential(const FieldBase& f, const KernelSpec& kernel,
                                    const GridSpec& grid,
                                    const std::vector<std::vector<double>>& points) {
    return riesz_potential_at(sample_field(f, grid), kernel, points);
}

namespace {

// 8-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGl8X[] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                        -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                        0.7966664774136267,  0.9602898564975363};
const double kGl8W[] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                        0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                        0.2223810344533745, 0.1012285362903763};

double cell_mass_gauss(int N, double h, const std::vector<double>& xc, double a) {
    const double hh = 0.5 * h;
    double total = 0.0;
    if (N == 1) {
        for (int i = 0; i < 8; ++i)
            total += kGl8W[i] * std::pow(std::abs(xc[0] + hh * kGl8X[i]), a);
        return total * hh;
    }
    if (N == 2) {
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) {
                const double x = xc[0] + hh * kGl8X[i], y = xc[1] + hh * kGl8X[j];
                total += kGl8W[i] * kGl8W[j] * std::pow(x * x + y * y, 0.5 * a);
            }
        return total * hh * hh;
    }
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            for (int k = 0; k < 8; ++k) {
                const double x = xc[0] + hh * kGl8X[i], y = xc[1] + hh * kGl8X[j],
                             z = xc[2] + hh * kGl8X[k];
                total += kGl8W[i] * kGl8W[j] * kGl8W[k] * std::pow(x * x + y * y + z * z, 0.5 * a);
            }
    return total * hh * hh * hh;
}

}  // namespace

double weight_cell_mass_at(const std::vector<double>& cell_center, double h, int dim,
                           double exponent) {
    double r2 = 0.0;
    for (double c : cell_center) r2 += c * c;
    const double r = std::sqrt(r2);
    if (exponent == 0.0) return std::pow(h, dim);
    if (r < 0.25 * h) {
        // treat as the origin cell: polar integral over the equal-volume ball
        if (exponent <= -static_cast<double>(dim))
            throw std::invalid_argument(
                "weight_cell_mass_at: exponent " + std::to_string(exponent) +
                " is not integrable at the origin in dimension " + std::to_string(dim));
        const double r_eq = h / std::pow(ball_volume(dim), 1.0 / dim);
        return sphere_area(dim) * std::pow(r_eq, dim + exponent) / (dim + exponent);
    }
    if (r <= 2.0 * h) return cell_mass_gauss(dim, h, cell_center, exponent);
    return std::pow(r, exponent) * std::pow(h, dim);
}

double cell_weight_mass(const GridSpec& grid, long node, double exponent) {
    return weight_cell_mass_at(grid.point(node), grid.h(), grid.dim, exponent);
}

double weighted_norm(const FieldSamples& g, double weight_exponent, double q,
                     const Domain& domain) {
    g.validate();
    if (!(q >= 1.0)) throw std::invalid_argument("weighted_norm: q must be >= 1");
    const long total = g.grid.points();
    // fixed-order pairwise reduction for reproducibility
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(total));
    for (long p = 0; p < total; ++p) {
        const auto x = g.grid.point(p);
        if (!domain.contains(x)) continue;
        const double mag = g.magnitude(p);
        if (mag == 0.0) continue;
        terms.push_back(std::pow(mag, q) * cell_weight_mass(g.grid, p, weight_exponent));
    }
    // pairwise sum
    std::function<double(std::size_t, std::size_t)> psum = [&](std::size_t lo,
                                                               std::size_t hi) -> double {
        if (hi - lo <= 8) {
            double s = 0.0;
            for (std::size_t i = lo; i < hi; ++i) s += terms[i];
            return s;
        }
        const std::size_t mid = lo + (hi - lo) / 2;
        return psum(lo, mid) + psum(mid, hi);
    };
    const double sum = terms.empty() ? 0.0 : psum(0, terms.size());
    return std::pow(sum, 1.0 / q);
}

double weighted_norm_radial(int dim, const std::function<double(double)>& g,
                            double weight_exponent, double q, double inner, double outer) {
    auto w = [weight_exponent](double r) { return std::pow(r, weight_exponent); };
    return radial::weighted_q_norm(dim, g, w, q, inner, outer);
}

KernelRegularityReport kernel_regularity_check(const KernelSpec& kernel, int n_samples,
                                               std::uint64_t seed) {
    kernel.validate();
    const int N = kernel.dim;
    auto eval = [&](const std::vector<double>& x, const std::vector<double>& y) {
        if (kernel.kind == KernelKind::general) return kernel.eval(x, y);
        double r2 = 0.0;
        for (int d = 0; d < N; ++d) {
            const double dd = x[static_cast<std::size_t>(d)] - y[static_cast<std::size_t>(d)];
            r2 += dd * dd;
        }
        if (r2 == 0.0) throw std::invalid_argument("kernel evaluation at x == y");
        return kernel.radial_value(std::sqrt(r2));
    };
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> logr(-3.0, 3.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    KernelRegularityReport rep;
    rep.samples_used = n_samples;
    const std::vector<double> origin(static_cast<std::size_t>(N), 0.0);
    for (int s = 0; s < n_samples; ++s) {
        auto xdir = random_unit_vector(N, rng);
        auto ydir = random_unit_vector(N, rng);
        const double rx = std::pow(10.0, logr(rng));
        const double ry = 0.5 * rx * unit(rng);  // enforce 2|y| <= |x|
        std::vector<double> x(xdir), y(ydir);
        for (auto& c : x) c *= rx;
        for (auto& c : y) c *= ry;
        double d2 = 0.0;
        for (int d = 0; d < N; ++d) {
            const double dd = x[static_cast<std::size_t>(d)] - y[static_cast<std::size_t>(d)];
            d2 += dd * dd;
        }
        const double dist = std::sqrt(d2);
        if (dist == 0.0) continue;
        const double kxy = eval(x, y);
        rep.size_constant =
            std::max(rep.size_constant, std::abs(kxy) * std::pow(dist, N - kernel.ell));
        if (ry > 0.0) {
            const double kx0 = eval(x, origin);
            rep.smoothness_constant =
                std::max(rep.smoothness_constant,
                         std::abs(kxy - kx0) * std::pow(rx, N + 1.0 - kernel.ell) / ry);
        }
    }
    const double slack = 1.0 + 1e-9;
    rep.size_pass = rep.size_constant <= kernel.declared_size_constant * slack;
    rep.smoothness_pass = rep.smoothness_constant <= kernel.declared_smoothness_constant * slack;
    return rep;
}

namespace {

std::vector<double> frequencies(const GridSpec& grid, long flat) {
    const int N = grid.dim, n = grid.n;
    std::vector<double> xi(static_cast<std::size_t>(N));
    for (int d = N - 1; d >= 0; --d) {
        const int k = static_cast<int>(flat % n);
        flat /= n;
        const int m = k < n / 2 ? k : k - n;
        xi[static_cast<std::size_t>(d)] = m * std::numbers::pi / grid.half_width;
    }
    return xi;
}

}  // namespace

FieldSamples apply_multiplier(const FieldSamples& u,
                              const std::function<Complex(const std::vector<double>&)>& m) {
    u.validate();
    if (u.fiber != 1) throw std::invalid_argument("apply_multiplier: scalar fields only");
    const long total = u.grid.points();
    std::vector<int> shape(static_cast<std::size_t>(u.grid.dim), u.grid.n);
    std::vector<Complex> buf(static_cast<std::size_t>(total));
    for (long p = 0; p < total; ++p) buf[static_cast<std::size_t>(p)] = u.values[static_cast<std::size_t>(p)];
    fft::forward(buf, shape);
    for (long p = 0; p < total; ++p)
        buf[static_cast<std::size_t>(p)] *= m(frequencies(u.grid, p));
    fft::inverse(buf, shape);
    FieldSamples out;
    out.grid = u.grid;
    out.fiber = 1;
    out.values.resize(static_cast<std::size_t>(total));
    for (long p = 0; p < total; ++p) out.values[static_cast<std::size_t>(p)] = buf[static_cast<std::size_t>(p)].real();
    return out;
}

RieszTransformResult riesz_transform(const FieldSamples& u, int axis) {
    if (axis < 0 || axis >= u.grid.dim) throw std::invalid_argument("riesz_transform: bad axis");
    double mean = 0.0;
    for (double v : u.values) mean += v;
    mean /= static_cast<double>(u.values.size());
    double peak = 0.0;
    for (double v : u.values) peak = std::max(peak, std::abs(v));
    RieszTransformResult res;
    res.mean_zero_warning = std::abs(mean) > 1e-12 * std::max(peak, 1.0);
    res.samples = apply_multiplier(u, [axis](const std::vector<double>& xi) {
        double n2 = 0.0;
        for (double c : xi) n2 += c * c;
        if (n2 == 0.0) return Complex(0.0, 0.0);
        return Complex(0.0, -xi[static_cast<std::size_t>(axis)] / std::sqrt(n2));
    });
    return res;
}

FieldSamples spectral_derivative(const FieldSamples& u, int axis) {
    if (axis < 0 || axis >= u.grid.dim) throw std::invalid_argument("spectral_derivative: bad axis");
    return apply_multiplier(u, [axis](const std::vector<double>& xi) {
        return Complex(0.0, xi[static_cast<std::size_t>(axis)]);
    });
}

FieldSamples fourier_synthesis_radial(const GridSpec& grid,
                                      const std::function<double(double)>& mhat) {
    grid.validate();
    const long total = grid.points();
    std::vector<int> shape(static_cast<std::size_t>(grid.dim), grid.n);
    std::vector<Complex> buf(static_cast<std::size_t>(total));
    const double norm = std::pow(2.0 * grid.half_width, -grid.dim);
    for (long p = 0; p < total; ++p) {
        const auto xi = frequencies(grid, p);
        double n2 = 0.0;
        long msum = 0;
        long rest = p;
        for (int d = grid.dim - 1; d >= 0; --d) {
            const int k = static_cast<int>(rest % grid.n);
            rest /= grid.n;
            msum += (k < grid.n / 2 ? k : k - grid.n);
        }
        for (double c : xi) n2 += c * c;
        const double v = mhat(std::sqrt(n2));
        // phase (-1)^{sum m_d} re-centers the spatial origin to the box middle
        buf[static_cast<std::size_t>(p)] = ((msum % 2 + 2) % 2 == 0 ? v : -v);
    }
    fft::transform(buf, shape, +1);  // unnormalized inverse
    FieldSamples out;
    out.grid = grid;
    out.fiber = 1;
    out.values.resize(static_cast<std::size_t>(total));
    for (long p = 0; p < total; ++p)
        out.values[static_cast<std::size_t>(p)] = buf[static_cast<std::size_t>(p)].real() * norm;
    return out;
}

double l1_norm(const FieldSamples& f) {
    const long total = f.grid.points();
    double s = 0.0;
    for (long p = 0; p < total; ++p) s += f.magnitude(p);
    return s * std::pow(f.grid.h(), f.grid.dim);
}

}  // namespace rieszlab::quad
