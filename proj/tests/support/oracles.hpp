#pragma once

// Test-side oracles, independent of the library implementation paths they
// cross-check: rectangle-subdivision 2-D quadrature, exact multivariate
// polynomial calculus, a sampled common-kernel oracle, and indicator
// sampling with sub-cell area fractions.

#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include "rieszlab/grid.hpp"
#include "rieszlab/linalg.hpp"
#include "rieszlab/multi_index.hpp"
#include "rieszlab/operators.hpp"

namespace oracles {

using rieszlab::MultiIndex;

/// Recursive rectangle-subdivision quadrature over [ax,bx]x[ay,by]: tensor
/// Gauss cells accepted when the 4-point and 8-point rules agree, cells
/// containing a listed singular point split until their contribution is
/// negligible (integrable singularities only).
class Quad2D {
public:
    using F = std::function<double(double, double)>;
    Quad2D(F f, std::vector<std::pair<double, double>> singular = {})
        : f_(std::move(f)), singular_(std::move(singular)) {}

    double integrate(double ax, double bx, double ay, double by, double tol, int depth = 30) const {
        return rec(ax, bx, ay, by, tol, depth);
    }

private:
    bool holds_singularity(double ax, double bx, double ay, double by) const {
        for (const auto& [sx, sy] : singular_)
            if (sx >= ax && sx <= bx && sy >= ay && sy <= by) return true;
        return false;
    }

    template <std::size_t K>
    double gauss(const std::array<double, K>& xs, const std::array<double, K>& ws, double ax,
                 double bx, double ay, double by) const {
        const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
        const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
        double acc = 0.0;
        for (std::size_t i = 0; i < K; ++i)
            for (std::size_t j = 0; j < K; ++j)
                acc += ws[i] * ws[j] * f_(cx + hx * xs[i], cy + hy * xs[j]);
        return acc * hx * hy;
    }

    double rec(double ax, double bx, double ay, double by, double tol, int depth) const {
        static const std::array<double, 4> x4{-0.8611363115940526, -0.3399810435848563,
                                              0.3399810435848563, 0.8611363115940526};
        static const std::array<double, 4> w4{0.3478548451374538, 0.6521451548625461,
                                              0.6521451548625461, 0.3478548451374538};
        static const std::array<double, 8> x8{-0.9602898564975363, -0.7966664774136267,
                                              -0.5255324099163290, -0.1834346424956498,
                                              0.1834346424956498,  0.5255324099163290,
                                              0.7966664774136267,  0.9602898564975363};
        static const std::array<double, 8> w8{0.1012285362903763, 0.2223810344533745,
                                              0.3137066458778873, 0.3626837833783620,
                                              0.3626837833783620, 0.3137066458778873,
                                              0.2223810344533745, 0.1012285362903763};
        const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
        if (holds_singularity(ax, bx, ay, by)) {
            // Gauss nodes never hit the singular point, but accuracy needs
            // descent; stop when the cell is small enough that an integrable
            // singularity's remaining mass is negligible.
            if (depth <= 0 || (bx - ax) < 1e-7) return gauss(x8, w8, ax, bx, ay, by);
            return rec(ax, mx, ay, my, tol / 4, depth - 1) +
                   rec(mx, bx, ay, my, tol / 4, depth - 1) +
                   rec(ax, mx, my, by, tol / 4, depth - 1) +
                   rec(mx, bx, my, by, tol / 4, depth - 1);
        }
        const double coarse = gauss(x4, w4, ax, bx, ay, by);
        const double fine = gauss(x8, w8, ax, bx, ay, by);
        // absolute share of the budget, or per-cell relative agreement
        // (sound for the positive integrands these oracles integrate)
        if (depth <= 0 || std::abs(fine - coarse) <= tol ||
            std::abs(fine - coarse) <= 1e-5 * std::abs(fine))
            return fine;
        return rec(ax, mx, ay, my, tol / 4, depth - 1) + rec(mx, bx, ay, my, tol / 4, depth - 1) +
               rec(ax, mx, my, by, tol / 4, depth - 1) + rec(mx, bx, my, by, tol / 4, depth - 1);
    }

    F f_;
    std::vector<std::pair<double, double>> singular_;
};

/// Integral of f over the disk |x| <= T: quadtree on the inscribed square
/// plus four circular segments by iterated Gauss (the segments must be free
/// of singular points). Avoids integrating a discontinuous radial cutoff.
inline double disk_integral(const Quad2D::F& f, double T,
                            const std::vector<std::pair<double, double>>& singular,
                            double tol) {
    const double a = T / std::sqrt(2.0);
    const Quad2D inner(f, singular);
    double total = inner.integrate(-a, a, -a, a, tol);

    // right segment: x in [a, T], |y| <= sqrt(T^2 - x^2); others by rotation
    auto segment = [&](int rot) {
        auto g = [&](double u, double v) {
            switch (rot) {
                case 0: return f(u, v);
                case 1: return f(-v, u);
                case 2: return f(-u, -v);
                default: return f(v, -u);
            }
        };
        const int nx = 24, ny = 12;
        double acc = 0.0;
        for (int i = 0; i < nx; ++i) {
            const double x0 = a + (T - a) * i / nx, x1 = a + (T - a) * (i + 1) / nx;
            for (int gx = 0; gx < 8; ++gx) {
                static const double kX[8] = {-0.9602898564975363, -0.7966664774136267,
                                             -0.5255324099163290, -0.1834346424956498,
                                             0.1834346424956498,  0.5255324099163290,
                                             0.7966664774136267,  0.9602898564975363};
                static const double kW[8] = {0.1012285362903763, 0.2223810344533745,
                                             0.3137066458778873, 0.3626837833783620,
                                             0.3626837833783620, 0.3137066458778873,
                                             0.2223810344533745, 0.1012285362903763};
                const double x = 0.5 * (x0 + x1) + 0.5 * (x1 - x0) * kX[gx];
                const double wx = 0.5 * (x1 - x0) * kW[gx];
                const double Y = std::sqrt(std::max(T * T - x * x, 0.0));
                double inner_acc = 0.0;
                for (int j = 0; j < ny; ++j) {
                    const double y0 = -Y + 2.0 * Y * j / ny, y1 = -Y + 2.0 * Y * (j + 1) / ny;
                    for (int gy = 0; gy < 8; ++gy) {
                        const double y = 0.5 * (y0 + y1) + 0.5 * (y1 - y0) * kX[gy];
                        inner_acc += 0.5 * (y1 - y0) * kW[gy] * g(x, y);
                    }
                }
                acc += wx * inner_acc;
            }
        }
        return acc;
    };
    for (int rot = 0; rot < 4; ++rot) total += segment(rot);
    return total;
}

/// Vector-valued multivariate polynomial with exact arithmetic on the
/// coefficients: enough calculus to state the Leibniz-remainder identity
/// symbolically.
struct VecPoly {
    int dim = 2;
    std::vector<std::map<MultiIndex, double>> comps;  // per fiber component

    static VecPoly zero(int dim, int fiber) {
        VecPoly p;
        p.dim = dim;
        p.comps.resize(static_cast<std::size_t>(fiber));
        return p;
    }

    int fiber() const { return static_cast<int>(comps.size()); }

    VecPoly derivative(const MultiIndex& g) const {
        VecPoly out = zero(dim, fiber());
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (const auto& [beta, coef] : comps[c]) {
                if (!g.leq(beta)) continue;
                const MultiIndex rest = beta.minus(g);
                out.comps[c][rest] +=
                    coef * (rieszlab::mi_factorial(beta) / rieszlab::mi_factorial(rest));
            }
        return out;
    }

    VecPoly scaled(double s) const {
        VecPoly out = *this;
        for (auto& comp : out.comps)
            for (auto& [k, v] : comp) v *= s;
        return out;
    }

    VecPoly plus(const VecPoly& o) const {
        VecPoly out = *this;
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (const auto& [k, v] : o.comps[c]) out.comps[c][k] += v;
        return out;
    }

    /// multiply every component by the monomial x^m
    VecPoly times_monomial(const MultiIndex& m, double coef) const {
        VecPoly out = zero(dim, fiber());
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (const auto& [k, v] : comps[c]) out.comps[c][k.plus(m)] += v * coef;
        return out;
    }

    std::vector<double> eval(const std::vector<double>& x) const {
        std::vector<double> out(comps.size(), 0.0);
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (const auto& [k, v] : comps[c]) out[c] += v * k.monomial(x);
        return out;
    }
};

/// Matrix of polynomials applied to a polynomial vector (rows act on comps).
inline VecPoly apply_matrix(const rieszlab::la::Matrix& m, const VecPoly& p) {
    VecPoly out = VecPoly::zero(p.dim, static_cast<int>(m.rows()));
    for (long r = 0; r < m.rows(); ++r)
        for (long c = 0; c < m.cols(); ++c) {
            const double coef = m(r, c).real();
            if (coef == 0.0) continue;
            for (const auto& [k, v] : p.comps[static_cast<std::size_t>(c)])
                out.comps[static_cast<std::size_t>(r)][k] += coef * v;
        }
    return out;
}

/// Sampled common-kernel oracle: intersects nullspaces of the symbol at many
/// random directions (the definition, evaluated directly). Returns the basis.
inline rieszlab::la::Matrix sampled_common_kernel(const rieszlab::opalg::HomogeneousOperator& op,
                                                  int n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    rieszlab::la::Matrix running = rieszlab::la::Matrix::Identity(op.fiber_in, op.fiber_in);
    for (int i = 0; i < n_samples; ++i) {
        std::vector<double> xi(static_cast<std::size_t>(op.dim));
        double n2 = 0.0;
        for (auto& c : xi) {
            c = gauss(rng);
            n2 += c * c;
        }
        for (auto& c : xi) c /= std::sqrt(n2);
        const auto null = rieszlab::la::nullspace(rieszlab::opalg::eval_symbol(op, xi));
        running = rieszlab::la::intersect_subspaces(running, null);
        if (running.cols() == 0) break;
    }
    return running;
}

/// Indicator of the unit-radius ball sampled with sub-cell area fractions
/// near the boundary (faithful density for midpoint-rule convolution).
inline rieszlab::quad::FieldSamples sample_ball_indicator(const rieszlab::quad::GridSpec& g,
                                                          double radius, int sub = 8) {
    rieszlab::quad::FieldSamples f;
    f.grid = g;
    f.fiber = 1;
    f.values.assign(static_cast<std::size_t>(g.points()), 0.0);
    const double h = g.h();
    for (long p = 0; p < g.points(); ++p) {
        const auto x = g.point(p);
        double r2 = 0.0;
        for (double c : x) r2 += c * c;
        const double r = std::sqrt(r2);
        if (r < radius - h) {
            f.values[static_cast<std::size_t>(p)] = 1.0;
            continue;
        }
        if (r > radius + h) continue;
        if (g.dim == 2) {
            int in = 0;
            for (int i = 0; i < sub; ++i)
                for (int j = 0; j < sub; ++j) {
                    const double xx = x[0] + ((i + 0.5) / sub - 0.5) * h;
                    const double yy = x[1] + ((j + 0.5) / sub - 0.5) * h;
                    if (xx * xx + yy * yy <= radius * radius) ++in;
                }
            f.values[static_cast<std::size_t>(p)] = double(in) / (sub * sub);
        } else {
            f.values[static_cast<std::size_t>(p)] = r <= radius ? 1.0 : 0.0;
        }
    }
    return f;
}

/// Central finite difference of order 4 for first partials of a field comp.
inline double central_diff4(const std::function<double(const std::vector<double>&)>& f,
                            std::vector<double> x, int axis, double h) {
    auto at = [&](double offset) {
        auto y = x;
        y[static_cast<std::size_t>(axis)] += offset;
        return f(y);
    };
    return (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12.0 * h);
}

}  // namespace oracles
