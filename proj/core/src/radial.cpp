#include "rieszlab/radial.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rieszlab::radial {

namespace {

double simpson(const Profile& f, double a, double fa, double m, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const Profile& f, double a, double fa, double m, double fm, double b,
                    double fb, double whole, double tol, double width_floor, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, lm, flm, m, fm);
    const double right = simpson(f, m, fm, rm, frm, b, fb);
    const double delta = left + right - whole;
    if (depth <= 0 || (b - a) < width_floor || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_rec(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, width_floor, depth - 1) +
           adaptive_rec(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, width_floor, depth - 1);
}

// 16-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlX[16] = {
    -0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
    -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
    0.0950125098376374,  0.2816035507792589,  0.4580167776572274,  0.6178762444026438,
    0.7554044083550030,  0.8656312023878318,  0.9445750230732326,  0.9894009349916499};
const double kGlW[16] = {
    0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
    0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
    0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541};

}  // namespace

double fixed_gauss(const Profile& f, double a, double b, int panels) {
    if (a == b) return 0.0;
    const double w = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double mid = a + (p + 0.5) * w;
        double acc = 0.0;
        for (int i = 0; i < 16; ++i) acc += kGlW[i] * f(mid + 0.5 * w * kGlX[i]);
        total += acc * 0.5 * w;
    }
    return total;
}

double integrate_adaptive(const Profile& f, double a, double b, double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(f, a, fa, m, fm, b, fb);
    const double scale = std::max({std::abs(whole), 1e-300});
    const double width_floor = 1e-13 * (b - a);
    return adaptive_rec(f, a, fa, m, fm, b, fb, whole, rel_tol * scale, width_floor,
                        std::min(max_depth, 30));
}

double integrate_tanh_sinh(const Profile& f, double a, double b, double rel_tol, int max_level) {
    if (a == b) return 0.0;
    const double half = 0.5 * (b - a);
    // abscissa for u = (pi/2) sinh(t), computed from the nearer endpoint
    auto node = [&](double t, double& x, double& w) {
        const double u = 0.5 * std::numbers::pi * std::sinh(t);
        const double sech = 1.0 / std::cosh(u);
        w = half * 0.5 * std::numbers::pi * std::cosh(t) * sech * sech;
        if (u >= 0.0)
            x = b - (b - a) / (1.0 + std::exp(2.0 * u));
        else
            x = a + (b - a) / (1.0 + std::exp(-2.0 * u));
    };
    double h = 1.0;
    double sum = 0.0;
    for (int k = 0; k <= 6; ++k) {  // level 0: every integer abscissa
        double x1, w1, x2, w2;
        node(static_cast<double>(k), x1, w1);
        node(-static_cast<double>(k), x2, w2);
        if (x1 > a && x1 < b) sum += w1 * f(x1);
        if (k > 0 && x2 > a && x2 < b) sum += w2 * f(x2);
    }
    double prev = sum * h;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // new nodes at odd multiples of h; stop once the tail is negligible
        double added = 0.0;
        int tiny_run = 0;
        for (int k = 1;; k += 2) {
            const double t = k * h;
            if (t > 6.0) break;
            double x1, w1, x2, w2;
            node(t, x1, w1);
            node(-t, x2, w2);
            double term = 0.0;
            if (x1 > a && x1 < b) term += w1 * f(x1);
            if (x2 > a && x2 < b) term += w2 * f(x2);
            added += term;
            const double scale = std::max(std::abs(sum + added), 1e-300);
            if (t > 1.5 && std::abs(term) < 1e-16 * scale) {
                if (++tiny_run >= 3) break;
            } else {
                tiny_run = 0;
            }
        }
        sum += added;
        const double cur = sum * h;
        if (level >= 3 && std::abs(cur - prev) <= rel_tol * std::max(std::abs(cur), 1e-300))
            return cur;
        prev = cur;
    }
    return prev;
}

double integrate_log_split(const Profile& f, double a, double b, double rel_tol) {
    if (!(b > a)) return 0.0;
    if (a <= 0.0) throw std::invalid_argument("integrate_log_split: need 0 < a < b");
    (void)rel_tol;  // per-octave composite Gauss is exact at working precision here
    double total = 0.0;
    double lo = a;
    while (lo < b) {
        const double hi = std::min(b, lo * 2.0);
        total += fixed_gauss(f, lo, hi, 2);
        lo = hi;
    }
    return total;
}

namespace {

/// integral_0^inf (D^2 + S^2 t^2)^{p} (1 + t^2)^{-p-1} g(t) dt via an
/// analytic head below the core scale D/S, log-octave Gauss panels through
/// the transition, and an analytic power tail. g must be smooth with g(0)
/// finite and g(t) -> g_inf.
template <typename G>
double tangent_core_integral(double D, double S, double p, const G& g, double g0, double g_inf) {
    const double core = D / S;
    const double t_min = std::min(1e-3 * core, 1e-3);
    const double t_max = 1e6;
    // head: integrand ~ D^{2p} g(0) t for t << core
    double total = (D > 0.0 ? std::pow(D, 2.0 * p) : 0.0) * g0 * t_min;
    double lo = t_min;
    if (t_min <= 0.0 || core == 0.0) {
        lo = 1e-9;
        total = 0.0;
    }
    auto f = [&](double t) {
        const double t2 = t * t;
        return std::pow(D * D + S * S * t2, p) * std::pow(1.0 + t2, -p - 1.0) * g(t);
    };
    while (lo < t_max) {
        const double hi = std::min(t_max, 2.0 * lo);
        total += fixed_gauss(f, lo, hi, 1);
        lo = hi;
    }
    // tail: integrand ~ S^{2p} t^{-2} g_inf
    total += std::pow(S, 2.0 * p) * g_inf / t_max;
    return total;
}

}  // namespace

double angular_kernel(int dim, double b, double r, double s) {
    if (r < 0.0 || s < 0.0) throw std::invalid_argument("angular_kernel: negative radius");
    if (dim == 1) return std::pow(std::abs(r - s), b) + std::pow(r + s, b);
    if (r == 0.0 || s == 0.0) {
        const double base = std::max(r, s);
        return quad::sphere_area(dim) * std::pow(base, b);
    }
    if (dim == 2) {
        const double sep = std::abs(r - s) / std::max(r, s);
        if (sep > 0.2) {
            // smooth polar integrand; |r e_1 - s w(th)|^2 written stably as
            // (r-s)^2 + 4 r s sin^2(th/2)
            const double diff2 = (r - s) * (r - s), four_rs = 4.0 * r * s;
            auto f = [&](double th) {
                const double sh = std::sin(0.5 * th);
                return std::pow(diff2 + four_rs * sh * sh, 0.5 * b);
            };
            return 2.0 * fixed_gauss(f, 0.0, std::numbers::pi, 4);
        }
        // near the diagonal: t = tan(th/2) turns the integral into
        // 4 int (D^2 + S^2 t^2)^{b/2} (1+t^2)^{-b/2-1} dt with D = |r-s|,
        // S = r+s, exact at any separation
        const double D = std::abs(r - s), S = r + s;
        return 4.0 * tangent_core_integral(D, S, 0.5 * b, [](double) { return 1.0; }, 1.0, 1.0);
    }
    if (dim == 3) {
        // 2 pi integral_{-1}^{1} (r^2+s^2-2rs t)^{b/2} dt, elementary.
        const double p = b + 2.0;
        if (std::abs(p) < 1e-14)
            return 2.0 * std::numbers::pi / (r * s) * std::log((r + s) / std::abs(r - s));
        return 2.0 * std::numbers::pi / (r * s * p) *
               (std::pow(r + s, p) - std::pow(std::abs(r - s), p));
    }
    throw std::invalid_argument("angular_kernel: dim must be 1..3");
}

double angular_kernel_dr(int dim, double b, double r, double s) {
    if (r == s) throw std::invalid_argument("angular_kernel_dr: r == s");
    if (s == 0.0) return quad::sphere_area(dim) * b * std::pow(r, b - 1.0);
    if (dim == 2) {
        const double sep = std::abs(r - s) / std::max(r, s);
        if (sep > 0.2) {
            const double diff2 = (r - s) * (r - s), four_rs = 4.0 * r * s;
            auto f = [&](double th) {
                const double sh = std::sin(0.5 * th);
                const double d2 = diff2 + four_rs * sh * sh;
                return b * (r - s * std::cos(th)) * std::pow(d2, 0.5 * b - 1.0);
            };
            return 2.0 * fixed_gauss(f, 0.0, std::numbers::pi, 4);
        }
        // same tangent substitution; r - s cos(th) = (r-s) + 2 s sin^2(th/2)
        // = ((r-s) + (r+s) t^2) / (1+t^2)
        const double D = std::abs(r - s), S = r + s, diff = r - s;
        auto g = [&](double t) { return (diff + S * t * t) / (1.0 + t * t); };
        return 4.0 * b *
               tangent_core_integral(D, S, 0.5 * b - 1.0, g, diff, S);
    }
    if (dim == 3) {
        const double p = b + 2.0;
        const double diff = std::abs(r - s);
        if (std::abs(p) < 1e-14) {
            const double val = std::log((r + s) / diff);
            const double dval = 1.0 / (r + s) - ((r > s) ? 1.0 : -1.0) / diff;
            return 2.0 * std::numbers::pi * (dval / (r * s) - val / (r * r * s));
        }
        const double num = std::pow(r + s, p) - std::pow(diff, p);
        const double dnum = p * (std::pow(r + s, p - 1.0) -
                                 ((r > s) ? 1.0 : -1.0) * std::pow(diff, p - 1.0));
        return 2.0 * std::numbers::pi / (s * p) * (dnum / r - num / (r * r));
    }
    throw std::invalid_argument("angular_kernel_dr: dim must be 2..3");
}

double potential(const KernelSpec& kernel, const Profile& density, double s_max, double r) {
    kernel.validate();
    if (kernel.kind != quad::KernelKind::riesz)
        throw std::invalid_argument("radial::potential requires a riesz kernel");
    const int N = kernel.dim;
    const double b = kernel.ell - N;
    auto f = [&](double s) {
        const double d = density(s);
        if (d == 0.0) return 0.0;
        return d * std::pow(s, N - 1.0) * angular_kernel(N, b, r, s);
    };
    double total = 0.0;
    if (r > 0.0 && r < 2.0 * s_max) {
        // split at the kernel diagonal
        const double mid = std::min(r, s_max);
        total += integrate_tanh_sinh(f, 0.0, mid, 1e-8, 8);
        if (mid < s_max) total += integrate_tanh_sinh(f, mid, s_max, 1e-8, 8);
    } else {
        // well separated from the support; the integrand is smooth
        total += fixed_gauss(f, 0.0, s_max, 3);
    }
    return kernel.gamma * total;
}

double potential_derivative(const KernelSpec& kernel, const Profile& density, double s_max,
                            double r) {
    const int N = kernel.dim;
    const double b = kernel.ell - N;
    auto f = [&](double s) {
        const double d = density(s);
        if (d == 0.0) return 0.0;
        return d * std::pow(s, N - 1.0) * angular_kernel_dr(N, b, r, s);
    };
    if (r > 2.0 * s_max || r >= s_max * (1.0 + 1e-12))
        // separated from the support: differentiate under the integral sign
        return kernel.gamma * (r > 2.0 * s_max ? fixed_gauss(f, 0.0, s_max, 3)
                                               : integrate_tanh_sinh(f, 0.0, s_max, 1e-8, 9));
    // inside the support the differentiated kernel is summable only as a
    // principal value; five-point differences of the potential profile are
    // accurate and cheap there
    const double h = 1e-4 * std::max(r, s_max);
    auto g = [&](double rr) { return potential(kernel, density, s_max, std::max(rr, 0.0)); };
    return (-g(r + 2 * h) + 8 * g(r + h) - 8 * g(r - h) + g(r - 2 * h)) / (12.0 * h);
}

double weighted_q_norm(int dim, const Profile& g, const Profile& weight, double q, double a,
                       double b, double rel_tol) {
    if (!(q >= 1.0)) throw std::invalid_argument("weighted_q_norm: q must be >= 1");
    auto f = [&](double r) {
        const double gv = std::abs(g(r));
        if (gv == 0.0) return 0.0;
        return std::pow(gv, q) * weight(r) * std::pow(r, dim - 1.0);
    };
    double integral = 0.0;
    if (a <= 0.0)
        integral = integrate_tanh_sinh(f, 0.0, b, rel_tol);
    else
        integral = integrate_log_split(f, a, b, rel_tol);
    return std::pow(quad::sphere_area(dim) * integral, 1.0 / q);
}

}  // namespace rieszlab::radial
