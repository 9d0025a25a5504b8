#include "rieszlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rieszlab/fft.hpp"
#include "rieszlab/kernels.hpp"
#include "rieszlab/quad.hpp"
#include "rieszlab/radial.hpp"

namespace rieszlab::weights {

void RadialWeight::validate() const {
    if (radii.size() < 2 || radii.size() != values.size())
        throw std::invalid_argument("radial weight: need matched radius/value tables");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw std::invalid_argument("radial weight: radii must be positive");
        if (i && radii[i] <= radii[i - 1])
            throw std::invalid_argument("radial weight: radii must increase");
        if (values[i] < 0.0) throw std::invalid_argument("radial weight: negative value");
    }
    // Tail exponents must be consistent with the outermost sampled decades.
    auto check_tail = [&](std::size_t i0, std::size_t i1, double claimed, const char* which) {
        if (values[i0] <= 0.0 || values[i1] <= 0.0) return;  // zero weight, nothing to match
        const double measured = std::log(values[i1] / values[i0]) / std::log(radii[i1] / radii[i0]);
        if (std::abs(measured - claimed) > 0.1 * std::max(1.0, std::abs(claimed)))
            throw std::invalid_argument(std::string("radial weight: ") + which +
                                        " tail exponent inconsistent with sampled profile");
    };
    check_tail(0, 1, tail_exponent_zero, "zero");
    check_tail(radii.size() - 2, radii.size() - 1, tail_exponent_inf, "infinity");
}

double RadialWeight::eval(double r) const {
    if (r <= 0.0) r = radii.front() * 1e-12;
    if (r <= radii.front())
        return values.front() * std::pow(r / radii.front(), tail_exponent_zero);
    if (r >= radii.back())
        return values.back() * std::pow(r / radii.back(), tail_exponent_inf);
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    const std::size_t hi = static_cast<std::size_t>(it - radii.begin());
    const std::size_t lo = hi - 1;
    if (values[lo] <= 0.0 || values[hi] <= 0.0) {
        const double t = (r - radii[lo]) / (radii[hi] - radii[lo]);
        return values[lo] + t * (values[hi] - values[lo]);
    }
    const double t = std::log(r / radii[lo]) / std::log(radii[hi] / radii[lo]);
    return values[lo] * std::pow(values[hi] / values[lo], t);
}

Weight::Weight(RadialWeight r) : w_(std::move(r)) { std::get<RadialWeight>(w_).validate(); }

double Weight::eval(double r) const {
    const double base = is_power() ? std::pow(std::max(r, 0.0), as_power().exponent)
                                   : std::get<RadialWeight>(w_).eval(r);
    return scale_ * base;
}

double Weight::exponent_at_zero() const {
    return is_power() ? as_power().exponent : std::get<RadialWeight>(w_).tail_exponent_zero;
}

double Weight::exponent_at_inf() const {
    return is_power() ? as_power().exponent : std::get<RadialWeight>(w_).tail_exponent_inf;
}

Weight Weight::scaled(const Weight& w, double factor) {
    if (!(factor >= 0.0)) throw std::invalid_argument("weight scale must be nonnegative");
    Weight out = w;
    out.scale_ = w.scale_ * factor;
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Weight load_weight_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open weight file: " + path);
    std::string line, kind;
    double exponent = 0.0, tail0 = 0.0, tailinf = 0.0, scale = 1.0;
    std::vector<double> radii, values;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("weight file: malformed line '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        std::istringstream val(trim(line.substr(eq + 1)));
        if (key == "kind") val >> kind;
        else if (key == "exponent") val >> exponent;
        else if (key == "scale") val >> scale;
        else if (key == "tail_zero") val >> tail0;
        else if (key == "tail_inf") val >> tailinf;
        else if (key == "radii") {
            double v;
            while (val >> v) radii.push_back(v);
        } else if (key == "values") {
            double v;
            while (val >> v) values.push_back(v);
        } else
            throw std::runtime_error("weight file: unknown key '" + key + "'");
    }
    if (kind == "power") return Weight::scaled(Weight(PowerWeight{exponent}), scale);
    if (kind == "radial-table") {
        RadialWeight rw;
        rw.radii = std::move(radii);
        rw.values = std::move(values);
        rw.tail_exponent_zero = tail0;
        rw.tail_exponent_inf = tailinf;
        return Weight::scaled(Weight(std::move(rw)), scale);
    }
    throw std::runtime_error("weight file: kind must be 'power' or 'radial-table'");
}

void SWParams::validate() const {
    if (N < 1) throw std::invalid_argument("params: N must be >= 1");
    if (!(ell > 0.0 && ell < N)) throw std::invalid_argument("params: need 0 < ell < N");
    if (!(p >= 1.0)) throw std::invalid_argument("params: p must be >= 1");
    if (!(q >= 1.0)) throw std::invalid_argument("params: q must be >= 1");
}

double SWParams::scaling_q(int N, double p, double ell, double alpha, double beta) {
    const double inv = 1.0 / p + (alpha + beta - ell) / N;
    if (!(inv > 0.0)) throw std::invalid_argument("params: scaling relation forces 1/q <= 0");
    return 1.0 / inv;
}

AdmissibilityReport sw_admissible(const SWParams& params, Regime regime) {
    params.validate();
    AdmissibilityReport rep;
    auto fail = [&](const std::string& why) { rep.violations.push_back(why); };
    const double N = params.N;
    const double relation = 1.0 / params.p + (params.alpha + params.beta - params.ell) / N;
    if (regime == Regime::p_gt_1) {
        if (!(params.p > 1.0)) fail("p > 1 required in this regime");
        if (!(params.q >= params.p)) fail("q >= p required");
        const double pprime = params.p / (params.p - 1.0);
        if (!(params.alpha < N / pprime)) fail("alpha < N/p' violated");
        if (!(params.beta < N / params.q)) fail("beta < N/q violated");
        if (!(params.alpha + params.beta >= 0.0)) fail("alpha + beta >= 0 violated");
        if (std::abs(1.0 / params.q - relation) > 1e-9)
            fail("scaling relation 1/q = 1/p + (alpha+beta-ell)/N violated");
    } else {
        if (params.p != 1.0) fail("p = 1 required in this regime");
        if (!(params.alpha >= 0.0 && params.alpha < 1.0)) fail("0 <= alpha < 1 violated");
        if (!(params.beta < N / params.q)) fail("beta < N/q violated");
        if (!(params.alpha + params.beta > 0.0)) fail("alpha + beta > 0 violated");
        if (std::abs(1.0 / params.q - (1.0 + (params.alpha + params.beta - params.ell) / N)) > 1e-9)
            fail("scaling relation 1/q = 1 + (alpha+beta-ell)/N violated");
    }
    rep.pass = rep.violations.empty();
    return rep;
}

std::optional<double> radial_tail_integral(int dim, const Weight& w, double R) {
    const double c_inf = w.exponent_at_inf() + dim - 1.0;
    if (c_inf >= -1.0) {
        // value at the boundary could still be zero weight everywhere
        if (w.eval(R) == 0.0 && w.eval(10.0 * R) == 0.0 && w.eval(100.0 * R) == 0.0) return 0.0;
        return std::nullopt;
    }
    if (w.is_power()) {
        const double a = w.as_power().exponent;
        return w.scale() * (-std::pow(R, a + dim) / (a + dim));
    }
    // numeric inner part plus analytic power tail anchored at R_far
    const double R_far = std::max(R * 1e3, 1e4);
    auto f = [&](double r) { return w.eval(r) * std::pow(r, dim - 1.0); };
    const double inner = radial::integrate_log_split(f, R, R_far);
    const double tail = w.eval(R_far) * std::pow(R_far, dim) / (-(c_inf + 1.0));
    return inner + tail;
}

std::optional<double> radial_ball_integral(int dim, const Weight& w, double R) {
    const double c0 = w.exponent_at_zero() + dim - 1.0;
    if (c0 <= -1.0) {
        if (w.eval(R) == 0.0 && w.eval(R * 1e-3) == 0.0) return 0.0;
        return std::nullopt;
    }
    if (w.is_power()) {
        const double a = w.as_power().exponent;
        return w.scale() * std::pow(R, a + dim) / (a + dim);
    }
    const double R_near = R * 1e-4;
    auto f = [&](double r) { return w.eval(r) * std::pow(r, dim - 1.0); };
    const double head = w.eval(R_near) * std::pow(R_near, dim) / (c0 + 1.0);
    const double body = radial::integrate_log_split(f, R_near, R);
    return head + body;
}

ConditionReport pointwise_condition(int dim, const Weight& u, const Weight& v, double ell,
                                    double q, const std::vector<double>& y_radii,
                                    double truncation_outer, double truncation_inner) {
    if (!(ell > 0.0 && ell < dim)) throw std::invalid_argument("pointwise_condition: 0 < ell < N");
    if (!(q >= 1.0)) throw std::invalid_argument("pointwise_condition: q >= 1");
    const double b = -(dim - ell) * q;
    // local integrability screens
    if (b <= -static_cast<double>(dim))
        throw std::invalid_argument(
            "pointwise_condition: kernel exponent (N-ell)q >= N is not locally integrable; "
            "offending exponent " + std::to_string(-b));
    if (u.exponent_at_zero() <= -static_cast<double>(dim))
        throw std::invalid_argument(
            "pointwise_condition: weight exponent at zero is not locally integrable: " +
            std::to_string(u.exponent_at_zero()));

    std::vector<double> ys = y_radii;
    if (ys.empty())
        for (int k = -2; k <= 2; ++k) ys.push_back(std::pow(10.0, k));

    auto eval_integral = [&](double ry, double T) {
        auto f = [&](double s) {
            const double uw = u.eval(s);
            if (uw == 0.0) return 0.0;
            return uw * std::pow(s, dim - 1.0) * radial::angular_kernel(dim, b, ry, s);
        };
        double total = 0.0;
        if (ry < T) {
            total += radial::integrate_tanh_sinh(f, 0.0, 0.5 * ry);
            total += radial::integrate_tanh_sinh(f, 0.5 * ry, ry);
            total += radial::integrate_tanh_sinh(f, ry, std::min(2.0 * ry, T));
            if (2.0 * ry < T) total += radial::integrate_log_split(f, 2.0 * ry, T);
        } else {
            total += radial::integrate_tanh_sinh(f, 0.0, T);
        }
        return total;
    };

    ConditionReport rep;
    rep.truncation_inner = truncation_inner;
    rep.truncation_outer = truncation_outer;

    double sup = 0.0;
    for (double ry : ys) {
        const double vy = v.eval(ry);
        if (vy == 0.0) continue;
        sup = std::max(sup, std::pow(eval_integral(ry, truncation_outer), 1.0 / q) / vy);
    }

    // divergence scan in the truncation at a representative y
    const double ry = ys[ys.size() / 2];
    std::vector<double> ts, cs;
    for (int j = 3; j >= 0; --j) {
        const double T = truncation_outer * std::pow(10.0, -j);
        if (T <= 2.0 * ry) continue;
        ts.push_back(T);
        cs.push_back(eval_integral(ry, T));
    }
    if (cs.empty() || cs.back() == 0.0) {
        rep.finite = true;
        rep.constant = sup;
        rep.notes = "weight vanishes or truncation window empty";
        return rep;
    }
    const fit::TrendFit law = fit::classify_trend(ts, cs, 0.01, 0.99);
    if (law.divergent) {
        rep.finite = false;
        rep.divergence_law = law;
        rep.constant = sup;
        rep.notes = "integral grows with the truncation radius (" + fit::to_string(law.kind) +
                    " law, slope " + std::to_string(law.slope) + ")";
    } else {
        rep.finite = true;
        rep.constant = sup;
    }
    return rep;
}

namespace {

std::vector<double> default_log_grid(double lo, double hi, int per_decade = 2) {
    std::vector<double> g;
    const int steps = static_cast<int>(std::round(std::log10(hi / lo) * per_decade));
    for (int i = 0; i <= steps; ++i) g.push_back(lo * std::pow(10.0, i / double(per_decade)));
    return g;
}

/// min of w over a log-spaced scan of [lo, hi]; endpoints included.
double scan_min(const Weight& w, double lo, double hi) {
    double m = std::min(w.eval(lo), w.eval(hi));
    const int steps = 200;
    for (int i = 1; i < steps; ++i)
        m = std::min(m, w.eval(lo * std::pow(hi / lo, i / double(steps))));
    return m;
}

}  // namespace

ConditionReport hardy_constant(int dim, const Weight& u_tilde, const Weight& v_tilde, double q,
                               HardyVariant variant, const std::vector<double>& r_grid) {
    if (!(q >= 1.0)) throw std::invalid_argument("hardy_constant: q >= 1 required");
    std::vector<double> grid = r_grid.empty() ? default_log_grid(1e-2, 1e2) : r_grid;
    ConditionReport rep;
    rep.truncation_inner = grid.front();
    rep.truncation_outer = grid.back();

    auto divergent = [&](double slope, const std::string& why) {
        rep.finite = false;
        fit::TrendFit law;
        law.kind = fit::LawKind::power;
        law.slope = slope;
        law.r2 = 1.0;
        law.divergent = true;
        rep.divergence_law = law;
        rep.notes = why + "; growth exponent " + std::to_string(slope);
        return rep;
    };

    std::vector<double> products;
    for (double R : grid) {
        std::optional<double> integral;
        double sup_inv_v = 0.0;
        if (variant == HardyVariant::tail_u_ball_v) {
            integral = radial_tail_integral(dim, u_tilde, R);
            if (!integral)
                return divergent(u_tilde.exponent_at_inf() + dim, "tail integral divergent");
            integral = *integral * quad::sphere_area(dim);
            // sup of 1/v over the ball: power-law profiles attain it at an end
            const double a0 = v_tilde.exponent_at_zero();
            if (a0 > 0.0) return divergent(a0, "1/v unbounded at the origin");
            sup_inv_v = 1.0 / scan_min(v_tilde, grid.front() * 1e-3, R);
        } else {
            integral = radial_ball_integral(dim, u_tilde, R);
            if (!integral)
                return divergent(-(u_tilde.exponent_at_zero() + dim),
                                 "ball integral divergent at the origin");
            integral = *integral * quad::sphere_area(dim);
            const double ainf = v_tilde.exponent_at_inf();
            if (ainf < 0.0) return divergent(-ainf, "1/v unbounded at infinity");
            sup_inv_v = 1.0 / scan_min(v_tilde, R, grid.back() * 1e3);
        }
        products.push_back(std::pow(*integral, 1.0 / q) * sup_inv_v);
    }
    rep.finite = true;
    rep.constant = *std::max_element(products.begin(), products.end());
    const double lo = *std::min_element(products.begin(), products.end());
    if (rep.constant > 0.0 && (rep.constant - lo) / rep.constant < 0.01)
        rep.notes = "product is R-independent within 1%";
    else
        rep.notes = "product varies across the R grid";
    return rep;
}

BallFamily BallFamily::standard(int dim) {
    BallFamily f;
    std::vector<double> c0(static_cast<std::size_t>(dim), 0.0);
    std::vector<double> c1(static_cast<std::size_t>(dim), 0.0);
    c1[0] = 1.0;
    std::vector<double> c2(static_cast<std::size_t>(dim), 0.0);
    c2[0] = -2.0;
    if (dim >= 2) c2[1] = 1.0;
    f.centers = {c0, c1, c2};
    for (int k = -6; k <= 6; ++k) f.radii.push_back(std::pow(2.0, k));
    return f;
}

double ball_power_integral(int dim, const std::vector<double>& center, double radius,
                           double exponent) {
    double c2 = 0.0;
    for (double c : center) c2 += c * c;
    const double dist = std::sqrt(c2);
    if (dist <= 1e-14) {
        if (exponent + dim <= 0.0)
            throw std::invalid_argument("ball_power_integral: non-integrable exponent " +
                                        std::to_string(exponent));
        return quad::sphere_area(dim) * std::pow(radius, exponent + dim) / (exponent + dim);
    }
    if (dist <= radius && exponent + dim <= 0.0)
        throw std::invalid_argument("ball_power_integral: non-integrable exponent " +
                                    std::to_string(exponent));
    if (dim != 2)
        throw std::invalid_argument("ball_power_integral: off-center balls supported in N=2 only");
    // Polar reduction around the origin: along direction theta the ball is
    // entered at r_in and left at r_out (circle-line intersection).
    const double p = exponent + 2.0;
    auto radial_part = [&](double r_in, double r_out) {
        if (std::abs(p) < 1e-14) return std::log(r_out / std::max(r_in, 1e-300));
        return (std::pow(r_out, p) - std::pow(r_in, p)) / p;
    };
    if (dist <= radius) {
        // origin interior: every direction exits once
        auto f = [&](double th) {
            const double cosd = std::cos(th);
            const double disc = radius * radius - dist * dist * (1.0 - cosd * cosd);
            const double r_out = dist * cosd + std::sqrt(std::max(disc, 0.0));
            return radial_part(0.0, std::max(r_out, 0.0));
        };
        return radial::integrate_adaptive(f, 0.0, 2.0 * std::numbers::pi, 1e-10);
    }
    const double half_angle = std::asin(std::min(radius / dist, 1.0));
    auto f = [&](double th) {
        const double cosd = std::cos(th);
        const double disc = radius * radius - dist * dist * (1.0 - cosd * cosd);
        if (disc <= 0.0) return 0.0;
        const double sq = std::sqrt(disc);
        const double r_in = dist * cosd - sq, r_out = dist * cosd + sq;
        if (r_out <= 0.0) return 0.0;
        return radial_part(std::max(r_in, 0.0), r_out);
    };
    // integrand vanishes smoothly at +-half_angle
    return radial::integrate_tanh_sinh(f, -half_angle, half_angle);
}

double ball_weight_integral(int dim, const Weight& w, const std::vector<double>& center,
                            double radius) {
    if (w.is_power())
        return w.scale() == 1.0
                   ? ball_power_integral(dim, center, radius, w.as_power().exponent)
                   : w.scale() * ball_power_integral(dim, center, radius, w.as_power().exponent);
    double c2 = 0.0;
    for (double c : center) c2 += c * c;
    const double dist = std::sqrt(c2);
    if (dist <= 1e-14) {
        auto v = radial_ball_integral(dim, w, radius);
        if (!v) throw std::invalid_argument("ball_weight_integral: divergent at the origin");
        return *v * quad::sphere_area(dim);
    }
    if (dim != 2)
        throw std::invalid_argument("ball_weight_integral: off-center balls supported in N=2 only");
    auto f = [&](double th) {
        const double cosd = std::cos(th);
        const double disc = radius * radius - dist * dist * (1.0 - cosd * cosd);
        if (disc <= 0.0) return 0.0;
        const double sq = std::sqrt(disc);
        const double r_in = std::max(dist * cosd - sq, 0.0), r_out = dist * cosd + sq;
        if (r_out <= r_in) return 0.0;
        auto g = [&](double r) { return w.eval(r) * r; };
        return radial::fixed_gauss(g, r_in, r_out, 2);
    };
    if (dist <= radius) return radial::integrate_adaptive(f, 0.0, 2.0 * std::numbers::pi, 1e-8);
    const double half_angle = std::asin(std::min(radius / dist, 1.0));
    return radial::integrate_tanh_sinh(f, -half_angle, half_angle, 1e-9);
}

namespace {

/// Kernel convolution on a small shifted mesh: nodes c0 + (i - n/2) h,
/// displacement-only dependence lets the padded-FFT circulant trick apply.
std::vector<double> local_convolution(const std::vector<double>& density, int dim, int n,
                                      double h, const quad::KernelSpec& kernel) {
    const int P = 2 * n;
    long total_pad = 1;
    for (int d = 0; d < dim; ++d) total_pad *= P;
    std::vector<int> shape(static_cast<std::size_t>(dim), P);
    std::vector<fft::Complex> kbuf(static_cast<std::size_t>(total_pad));
    const double r_eq = h / std::pow(quad::ball_volume(dim), 1.0 / dim);
    const double diag =
        kernel.gamma * quad::sphere_area(dim) * std::pow(r_eq, kernel.ell) / kernel.ell /
        std::pow(h, dim);
    for (long flat = 0; flat < total_pad; ++flat) {
        long rest = flat;
        double r2 = 0.0;
        for (int d = 0; d < dim; ++d) {
            const int t = static_cast<int>(rest % P);
            rest /= P;
            const int o = t < n ? t : t - P;
            r2 += (o * h) * (o * h);
        }
        const double r = std::sqrt(r2);
        kbuf[static_cast<std::size_t>(flat)] = r == 0.0 ? diag : kernel.radial_value(r);
    }
    fft::forward(kbuf, shape);
    std::vector<fft::Complex> fbuf(static_cast<std::size_t>(total_pad), fft::Complex(0, 0));
    long n_nodes = 1;
    for (int d = 0; d < dim; ++d) n_nodes *= n;
    for (long p = 0; p < n_nodes; ++p) {
        long rest = p, flat = 0, mul = 1;
        for (int d = dim - 1; d >= 0; --d) {
            flat += (rest % n) * mul;
            rest /= n;
            mul *= P;
        }
        fbuf[static_cast<std::size_t>(flat)] = density[static_cast<std::size_t>(p)];
    }
    fft::forward(fbuf, shape);
    for (long i = 0; i < total_pad; ++i) fbuf[static_cast<std::size_t>(i)] *= kbuf[static_cast<std::size_t>(i)];
    fft::inverse(fbuf, shape);
    std::vector<double> out(static_cast<std::size_t>(n_nodes));
    const double hN = std::pow(h, dim);
    for (long p = 0; p < n_nodes; ++p) {
        long rest = p, flat = 0, mul = 1;
        for (int d = dim - 1; d >= 0; --d) {
            flat += (rest % n) * mul;
            rest /= n;
            mul *= P;
        }
        out[static_cast<std::size_t>(p)] = fbuf[static_cast<std::size_t>(flat)].real() * hN;
    }
    return out;
}

}  // namespace

ConditionReport sawyer_testing(const Weight& u, const Weight& v, const SWParams& params,
                               const BallFamily& family, int mesh_n) {
    params.validate();
    if (!(params.p > 1.0))
        throw std::invalid_argument("sawyer_testing: requires the p > 1 regime");
    const int N = params.N;
    const double pprime = params.p / (params.p - 1.0);
    const double qprime = params.q / (params.q - 1.0);
    const auto kernel = quad::make_riesz_kernel(N, params.ell);

    ConditionReport rep;
    rep.finite = true;
    double worst = 0.0;
    std::string worst_ball;

    for (const auto& center : family.centers) {
        for (double radius : family.radii) {
            // mesh centered near the ball, snapped so the origin is a node
            const int n = mesh_n;
            const double L_loc = 1.25 * radius;
            const double h = 2.0 * L_loc / n;
            std::vector<double> c0(center);
            for (auto& c : c0) c = std::round(c / h) * h;

            long n_nodes = 1;
            for (int d = 0; d < N; ++d) n_nodes *= n;
            auto node_point = [&](long p) {
                std::vector<double> x(static_cast<std::size_t>(N));
                long rest = p;
                for (int d = N - 1; d >= 0; --d) {
                    x[static_cast<std::size_t>(d)] =
                        c0[static_cast<std::size_t>(d)] + (static_cast<int>(rest % n) - n / 2) * h;
                    rest /= n;
                }
                return x;
            };
            auto in_ball = [&](const std::vector<double>& x) {
                double d2 = 0.0;
                for (int d = 0; d < N; ++d) {
                    const double dd = x[static_cast<std::size_t>(d)] - center[static_cast<std::size_t>(d)];
                    d2 += dd * dd;
                }
                return d2 <= radius * radius;
            };
            auto weight_density = [&](const Weight& w, const std::vector<double>& x) {
                double r2 = 0.0;
                for (double c : x) r2 += c * c;
                const double r = std::sqrt(r2);
                if (w.is_power() && r <= 2.0 * h) {
                    // cell-averaged density near the weight singularity
                    return w.scale() *
                           quad::weight_cell_mass_at(x, h, N, w.as_power().exponent) /
                           std::pow(h, N);
                }
                return w.eval(r);
            };

            auto testing_ratio = [&](const Weight& density_w, const Weight& measure_w,
                                     double power_exp, double mass_exp) {
                std::vector<double> density(static_cast<std::size_t>(n_nodes), 0.0);
                for (long p = 0; p < n_nodes; ++p) {
                    const auto x = node_point(p);
                    if (in_ball(x)) density[static_cast<std::size_t>(p)] = weight_density(density_w, x);
                }
                const auto pot = local_convolution(density, N, n, h, kernel);
                double num_acc = 0.0;
                for (long p = 0; p < n_nodes; ++p) {
                    const auto x = node_point(p);
                    if (!in_ball(x)) continue;
                    const double m = std::abs(pot[static_cast<std::size_t>(p)]);
                    if (m == 0.0) continue;
                    num_acc += std::pow(m, power_exp) * weight_density(measure_w, x) * std::pow(h, N);
                }
                const double num = std::pow(num_acc, 1.0 / power_exp);
                const double den_mass = ball_weight_integral(N, density_w, center, radius);
                if (den_mass <= 0.0) return 0.0;
                return num / std::pow(den_mass, 1.0 / mass_exp);
            };

            double r1 = 0.0, r2 = 0.0;
            try {
                r1 = testing_ratio(u, v, pprime, qprime);
                r2 = testing_ratio(v, u, params.q, params.p);
            } catch (const std::invalid_argument& e) {
                std::ostringstream os;
                os << "quadrature failure on ball center (";
                for (std::size_t i = 0; i < center.size(); ++i) os << (i ? "," : "") << center[i];
                os << ") radius " << radius << ": " << e.what();
                throw std::runtime_error(os.str());
            }
            const double r_ball = std::max(r1, r2);
            if (r_ball > worst) {
                worst = r_ball;
                std::ostringstream os;
                os << "center (";
                for (std::size_t i = 0; i < center.size(); ++i) os << (i ? "," : "") << center[i];
                os << "), radius " << radius;
                worst_ball = os.str();
            }
        }
    }
    rep.constant = worst;
    rep.notes = "worst ball: " + worst_ball;
    return rep;
}

ConditionReport bump_condition(const Weight& u, const Weight& v, const SWParams& params,
                               double r, const BallFamily& family) {
    params.validate();
    if (!(params.p > 1.0)) throw std::invalid_argument("bump_condition: requires p > 1");
    if (!(r > 1.0)) throw std::invalid_argument("bump_condition: requires r > 1");
    const int N = params.N;
    const double pprime = params.p / (params.p - 1.0);
    const double size_exp = params.ell / N + 1.0 / params.q - 1.0 / params.p;

    ConditionReport rep;
    // integrability screen for v^{(1-p')r} near the origin
    if (v.is_power()) {
        const double ve = v.as_power().exponent * (1.0 - pprime) * r;
        if (ve <= -static_cast<double>(N)) {
            rep.finite = false;
            fit::TrendFit law;
            law.kind = fit::LawKind::power;
            law.slope = -(ve + N);
            law.r2 = 1.0;
            law.divergent = true;
            rep.divergence_law = law;
            rep.notes = "v^{(1-p')r} non-integrable near 0, exponent " + std::to_string(ve);
            return rep;
        }
    }
    double sup = 0.0;
    for (const auto& center : family.centers) {
        for (double radius : family.radii) {
            const double vol = quad::ball_volume(N) * std::pow(radius, N);
            double u_int, v_int;
            if (u.is_power())
                u_int = std::pow(u.scale(), r) *
                        ball_power_integral(N, center, radius, u.as_power().exponent * r);
            else
                throw std::invalid_argument("bump_condition: tabulated u unsupported (r > 1)");
            if (v.is_power())
                v_int = std::pow(v.scale(), (1.0 - pprime) * r) *
                        ball_power_integral(N, center, radius,
                                            v.as_power().exponent * (1.0 - pprime) * r);
            else
                throw std::invalid_argument("bump_condition: tabulated v unsupported");
            const double lhs = std::pow(vol, size_exp) *
                               std::pow(u_int / vol, 1.0 / (r * params.q)) *
                               std::pow(v_int, 1.0 / (pprime * r));
            sup = std::max(sup, lhs);
        }
    }
    rep.finite = true;
    rep.constant = sup;
    return rep;
}

ConditionReport bump_u3(int dim, const Weight& u, double p, double ell, double q,
                        const BallFamily& family, const std::vector<double>& y_radii) {
    if (!(p >= 1.0 && q >= 1.0)) throw std::invalid_argument("bump_u3: p, q >= 1 required");
    if (!(ell > 0.0 && ell < dim)) throw std::invalid_argument("bump_u3: 0 < ell < N");
    const double size_exp = 1.0 / q + ell / dim - 1.0;

    ConditionReport rep;
    double sup_ball = 0.0;
    for (const auto& center : family.centers) {
        for (double radius : family.radii) {
            const double vol = quad::ball_volume(dim) * std::pow(radius, dim);
            double up_int;
            if (u.is_power())
                up_int = std::pow(u.scale(), p) *
                         ball_power_integral(dim, center, radius, u.as_power().exponent * p);
            else if (p == 1.0)
                up_int = ball_weight_integral(dim, u, center, radius);
            else
                throw std::invalid_argument("bump_u3: tabulated u requires p == 1");
            sup_ball = std::max(sup_ball,
                                std::pow(vol, size_exp) * std::pow(up_int / vol, 1.0 / (p * q)));
        }
    }

    // dyadic-shell tail bound at the sampled |y|
    const double tail_exp = -(dim - ell + 1.0) * q;
    double sup_tail = 0.0;
    bool tail_finite = true;
    for (double ry : y_radii) {
        double acc = 0.0;
        for (int k = 1; k <= 60; ++k) {
            const double lo = std::pow(2.0, k) * ry, hi = 2.0 * lo;
            auto f = [&](double s) { return u.eval(s) * std::pow(s, tail_exp + dim - 1.0); };
            const double shell = radial::integrate_adaptive(f, lo, hi, 1e-9);
            acc += shell;
            if (k > 4 && shell < 1e-14 * acc) break;
            if (k == 60 && shell > 1e-10 * acc) tail_finite = false;
        }
        sup_tail = std::max(sup_tail, std::pow(acc, 1.0 / q) * ry);
    }
    if (!tail_finite || u.exponent_at_inf() + tail_exp + dim >= 0.0) {
        rep.finite = false;
        fit::TrendFit law;
        law.kind = fit::LawKind::power;
        law.slope = u.exponent_at_inf() + tail_exp + dim;
        law.r2 = 1.0;
        law.divergent = true;
        rep.divergence_law = law;
        rep.notes = "shell sum divergent at infinity";
        return rep;
    }
    rep.finite = true;
    rep.constant = std::max(sup_ball, sup_tail);
    rep.notes = "ball constant " + std::to_string(sup_ball) + ", tail constant (x|y|) " +
                std::to_string(sup_tail);
    return rep;
}

ConditionReport pesopeso_condition(int dim, const Weight& u, const Weight& v, double ell,
                                   double q, const std::vector<double>& y_radii) {
    if (!(q >= 1.0)) throw std::invalid_argument("pesopeso_condition: q >= 1 required");
    if (!(ell > 0.0 && ell < dim)) throw std::invalid_argument("pesopeso_condition: 0 < ell < N");
    std::vector<double> ys = y_radii.empty() ? default_log_grid(1e-2, 1e2) : y_radii;
    const double tail_exp = -(dim - ell + 1.0) * q;

    ConditionReport rep;
    const double c_inf = u.exponent_at_inf() + tail_exp + dim;
    if (c_inf >= 0.0) {
        rep.finite = false;
        fit::TrendFit law;
        law.kind = fit::LawKind::power;
        law.slope = c_inf;
        law.r2 = 1.0;
        law.divergent = true;
        rep.divergence_law = law;
        rep.notes = "tail integral divergent, exponent " + std::to_string(c_inf);
        return rep;
    }
    double sup = 0.0;
    for (double ry : ys) {
        auto f = [&](double s) { return u.eval(s) * std::pow(s, tail_exp + dim - 1.0); };
        const double R = 2.0 * ry;
        const double R_far = 1e4 * R;
        double integral = radial::integrate_log_split(f, R, R_far);
        integral += u.eval(R_far) * std::pow(R_far, tail_exp + dim) / (-c_inf);
        const double vy = v.eval(ry);
        if (vy == 0.0) continue;
        sup = std::max(sup, std::pow(integral, 1.0 / q) * ry / vy);
    }
    rep.finite = true;
    rep.constant = sup;
    return rep;
}

}  // namespace rieszlab::weights
