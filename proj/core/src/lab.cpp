#include "rieszlab/lab.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rieszlab/fields.hpp"
#include "rieszlab/quad.hpp"
#include "rieszlab/radial.hpp"
#include "rieszlab/sampling.hpp"

namespace rieszlab::lab {

std::string to_string(TrendReport::Verdict v) {
    switch (v) {
        case TrendReport::Verdict::bounded: return "bounded";
        case TrendReport::Verdict::divergent: return "divergent";
        case TrendReport::Verdict::degenerate: return "degenerate";
    }
    return "?";
}

namespace {

std::string join_violations(const std::vector<std::string>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "; " : "") << v[i];
    return os.str();
}

std::vector<double> point_on_axis(int dim, double s) {
    std::vector<double> x(static_cast<std::size_t>(dim), 0.0);
    x[0] = s;
    return x;
}

}  // namespace

RatioReport inequality_ratio(const Field& f, const weights::SWParams& params,
                             const quad::GridSpec& grid,
                             const opalg::HomogeneousOperator* constraint) {
    params.validate();
    const auto adm = weights::sw_admissible(params, weights::Regime::p_eq_1);
    if (!adm.pass)
        throw std::invalid_argument("inequality_ratio: inadmissible parameters: " +
                                    join_violations(adm.violations));
    if (constraint) {
        const double res = fields::constraint_residual(*constraint, *f, grid);
        if (!(res <= 1e-8))
            throw std::invalid_argument("inequality_ratio: constraint residual " +
                                        std::to_string(res) + " exceeds 1e-8");
    }
    const auto kernel = quad::make_riesz_kernel(params.N, params.ell);
    const auto samples = quad::sample_field(*f, grid);
    const auto potential = quad::riesz_potential_grid(samples, kernel);

    RatioReport rep;
    rep.lhs = quad::weighted_norm(potential, -params.beta * params.q, params.q,
                                  quad::Domain::box());
    rep.rhs = quad::weighted_norm(samples, params.alpha, 1.0, quad::Domain::box());
    if (rep.rhs == 0.0) {
        rep.degenerate = true;
        rep.notes = "degenerate input: weighted L1 norm vanishes";
        return rep;
    }
    rep.ratio = rep.lhs / rep.rhs;
    return rep;
}

TrendReport scale_invariance_suite(FamilyKind kind, const Field& scalar_seed,
                                   const std::vector<double>& eps_list,
                                   const weights::SWParams& params, double base_half_width,
                                   int grid_n, const opalg::HomogeneousOperator* constraint) {
    if (eps_list.empty()) throw std::invalid_argument("scale_invariance_suite: empty sweep");
    TrendReport rep;
    rep.params = eps_list;
    for (double eps : eps_list) {
        const Field member = kind == FamilyKind::divfree
                                 ? fields::divfree_family(scalar_seed, eps)
                                 : fields::mollifier_family(scalar_seed, eps);
        quad::GridSpec grid;
        grid.dim = params.N;
        grid.half_width = base_half_width * eps;
        grid.n = grid_n;
        const auto r = inequality_ratio(member, params, grid, constraint);
        rep.lhs.push_back(r.lhs);
        rep.rhs.push_back(r.rhs);
        rep.values.push_back(r.ratio);
    }
    if (eps_list.size() < 2) {
        rep.verdict = TrendReport::Verdict::bounded;
        rep.law.kind = fit::LawKind::constant;
        rep.law.intercept = rep.values[0];
        rep.notes = "degenerate sweep of length 1; bounded by convention";
        return rep;
    }
    rep.law = fit::classify_trend(eps_list, rep.values, 0.02);
    rep.verdict =
        rep.law.divergent ? TrendReport::Verdict::divergent : TrendReport::Verdict::bounded;
    std::ostringstream os;
    os << "ratio spread " << rep.law.spread * 100.0 << "% across the sweep";
    rep.notes = os.str();
    return rep;
}

TrendReport counterexample_scalar_probe(const weights::SWParams& params,
                                        const std::vector<double>& a_list, double eps,
                                        bool enforce_relation) {
    params.validate();
    if (a_list.empty()) throw std::invalid_argument("scalar probe: empty annulus list");
    if (params.alpha != 0.0)
        throw std::invalid_argument("scalar probe: requires alpha = 0 (got " +
                                    std::to_string(params.alpha) + ")");
    const double relation = 1.0 + (params.beta - params.ell) / params.N;
    if (enforce_relation && std::abs(1.0 / params.q - relation) > 1e-9)
        throw std::invalid_argument("scalar probe: exponent relation 1/q = 1+(beta-ell)/N violated");

    const double a_min = *std::min_element(a_list.begin(), a_list.end());
    if (eps <= 0.0) eps = a_min / 100.0;
    const Field phi_eps =
        fields::mollifier_family(fields::make_bump(params.N, std::vector<double>(params.N, 0.0),
                                                   1.0, /*normalize=*/true),
                                 eps);
    const auto kernel = quad::make_riesz_kernel(params.N, params.ell);
    auto density = [&](double s) { return phi_eps->value(point_on_axis(params.N, s))[0]; };

    TrendReport rep;
    rep.params = a_list;
    std::vector<double> inv_log;
    for (double a : a_list) {
        auto g = [&](double r) { return radial::potential(kernel, density, eps, r); };
        const double lhs = quad::weighted_norm_radial(params.N, g, -params.beta * params.q,
                                                      params.q, a, 1.0);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(1.0);  // unit-mass mollifier
        rep.values.push_back(std::pow(lhs, params.q));
        inv_log.push_back(std::log(1.0 / a));
    }
    rep.expected_slope =
        quad::sphere_area(params.N) * std::pow(kernel.gamma, params.q);  // limit-object law
    if (a_list.size() < 2) {
        rep.verdict = TrendReport::Verdict::bounded;
        rep.notes = "degenerate sweep of length 1; bounded by convention (mollifier scale " +
                    std::to_string(eps) + ")";
        return rep;
    }
    const auto f = fit::linear_fit(inv_log, rep.values);
    rep.law.kind = fit::LawKind::log_linear;
    rep.law.slope = f.slope;
    rep.law.intercept = f.intercept;
    rep.law.r2 = f.r2;
    rep.law.divergent = f.r2 > 0.99 && f.slope > 0.0;
    // a flat sequence (convergent control) should not be declared divergent
    double vmin = rep.values.front(), vmax = vmin;
    for (double v : rep.values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double spread = vmax > 0.0 ? (vmax - vmin) / vmax : 0.0;
    if (spread < 0.05) rep.law.divergent = false;
    rep.verdict =
        rep.law.divergent ? TrendReport::Verdict::divergent : TrendReport::Verdict::bounded;
    std::ostringstream os;
    os << "lhs^q vs log(1/a): slope " << f.slope << " (limit-object slope " << rep.expected_slope
       << "), R^2 " << f.r2 << ", mollifier scale " << eps;
    rep.notes = os.str();
    return rep;
}

TrendReport counterexample_alpha1_probe(const weights::SWParams& params,
                                        const std::vector<double>& a_list, double eps_ratio,
                                        const std::vector<double>& eps_rhs_list) {
    params.validate();
    if (a_list.empty()) throw std::invalid_argument("alpha1 probe: empty annulus list");
    const double relation = 1.0 + (params.alpha + params.beta - params.ell) / params.N;
    if (std::abs(1.0 / params.q - relation) > 1e-9)
        throw std::invalid_argument("alpha1 probe: exponent relation violated");
    if (!(eps_ratio > 0.0 && eps_ratio <= 0.25))
        throw std::invalid_argument("alpha1 probe: eps_ratio must sit in (0, 1/4]");

    const int N = params.N;
    const auto kernel = quad::make_riesz_kernel(N, params.ell);
    // Stream mollifier with mass deliberately != 1 (unnormalized bump).
    const Field base_bump = fields::make_bump(N, std::vector<double>(N, 0.0), 1.0, false);

    auto rhs_of = [&](double eps) {
        const Field phi_eps = fields::mollifier_family(base_bump, eps);
        auto dphi = [&](double r) {
            return std::abs(phi_eps->derivative(MultiIndex::unit(N, 0), point_on_axis(N, r))[0]);
        };
        auto f = [&](double r) { return std::pow(r, params.alpha + N - 1.0) * dphi(r); };
        const double angular = 2.0 * quad::ball_volume(N - 1);
        return 2.0 * angular * radial::integrate_tanh_sinh(f, 0.0, eps);
    };

    TrendReport rep;
    rep.params = a_list;
    std::vector<double> inv_log;
    for (double a : a_list) {
        const double eps = a * eps_ratio;
        const Field phi_eps = fields::mollifier_family(base_bump, eps);
        auto density = [&](double s) { return phi_eps->value(point_on_axis(N, s))[0]; };
        auto gprime = [&](double r) {
            return radial::potential_derivative(kernel, density, eps, r);
        };
        const double lhs = quad::weighted_norm_radial(N, gprime, -params.beta * params.q,
                                                      params.q, a, 1.0);
        const double rhs = rhs_of(eps);
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        rep.values.push_back(std::pow(lhs / rhs, params.q));
        inv_log.push_back(std::log(1.0 / a));
    }
    if (a_list.size() < 2) {
        rep.verdict = TrendReport::Verdict::bounded;
        rep.notes = "degenerate sweep of length 1; bounded by convention";
        return rep;
    }
    const auto f = fit::linear_fit(inv_log, rep.values);
    rep.law.kind = fit::LawKind::log_linear;
    rep.law.slope = f.slope;
    rep.law.intercept = f.intercept;
    rep.law.r2 = f.r2;
    double vmin = rep.values.front(), vmax = vmin;
    for (double v : rep.values) {
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
    }
    const double spread = vmax > 0.0 ? (vmax - vmin) / vmax : 0.0;
    rep.law.divergent = f.r2 > 0.99 && f.slope > 0.0 && spread >= 0.05;
    rep.verdict =
        rep.law.divergent ? TrendReport::Verdict::divergent : TrendReport::Verdict::bounded;

    // eps-independence of the weighted L1 side at alpha = 1
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (double eps : eps_rhs_list) {
        const double r = rhs_of(eps);
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    std::ostringstream os;
    os << "(lhs/rhs)^q vs log(1/a): slope " << f.slope << ", R^2 " << f.r2
       << "; rhs spread over eps sweep " << (rmax > 0 ? (rmax - rmin) / rmax * 100.0 : 0.0)
       << "%";
    if (params.alpha == 1.0)
        os << " (weighted L1 side exactly scale-free at alpha = 1)";
    rep.notes = os.str();
    return rep;
}

TrendReport necessity_probe(const opalg::HomogeneousOperator& op,
                            const std::vector<double>& lambda_list,
                            const weights::SWParams& params, const quad::GridSpec& grid) {
    params.validate();
    if (params.alpha != 0.0)
        throw std::invalid_argument("necessity probe: the witness argument needs alpha = 0");
    const auto cc = opalg::cocanceling_check(op);
    if (cc.verdict != opalg::PropertyVerdict::refuted)
        throw std::domain_error(
            "necessity probe refuses: operator is cocanceling, no common-kernel witness exists");
    // real witness direction from the common kernel
    la::Vector w = cc.witness->basis.col(0);
    std::vector<double> witness(static_cast<std::size_t>(op.fiber_in));
    double re_norm = 0.0, im_norm = 0.0;
    for (int i = 0; i < op.fiber_in; ++i) {
        re_norm += w(i).real() * w(i).real();
        im_norm += w(i).imag() * w(i).imag();
    }
    const bool use_re = re_norm >= im_norm;
    double norm = std::sqrt(use_re ? re_norm : im_norm);
    for (int i = 0; i < op.fiber_in; ++i)
        witness[static_cast<std::size_t>(i)] = (use_re ? w(i).real() : w(i).imag()) / norm;

    const auto kernel = quad::make_riesz_kernel(params.N, params.ell);
    TrendReport rep;
    rep.params = lambda_list;
    double psi_l1 = 0.0;
    bool rhs_bounded = true;
    for (double lambda : lambda_list) {
        const auto blf = fields::p_lambda_family(grid, lambda, witness);
        psi_l1 = blf.psi_l1_norm;
        quad::FieldSamples scalar = blf.scalar;
        const auto pot = quad::riesz_potential_grid(scalar, kernel);
        const double lhs =
            quad::weighted_norm(pot, -params.beta * params.q, params.q, quad::Domain::box());
        const double rhs = blf.l1_norm;  // |witness| = 1
        rep.lhs.push_back(lhs);
        rep.rhs.push_back(rhs);
        rep.values.push_back(std::pow(lhs, params.q));
        if (!(rhs <= 2.0 * psi_l1 * 1.02)) rhs_bounded = false;
    }
    double rhs_peak = 0.0;
    for (double r : rep.rhs) rhs_peak = std::max(rhs_peak, r);
    if (rhs_peak == 0.0) {
        rep.verdict = TrendReport::Verdict::degenerate;
        rep.notes = "degenerate: the band-limited factor vanishes (lambda = 1 family)";
        return rep;
    }
    std::vector<double> loglam;
    for (double l : lambda_list) loglam.push_back(std::log(l));
    if (lambda_list.size() >= 2) {
        const auto f = fit::linear_fit(loglam, rep.values);
        rep.law.kind = fit::LawKind::log_linear;
        rep.law.slope = f.slope;
        rep.law.intercept = f.intercept;
        rep.law.r2 = f.r2;
        rep.law.divergent = f.slope > 0.0 && f.r2 > 0.9;
    }
    bool increasing = true;
    for (std::size_t i = 1; i < rep.lhs.size(); ++i)
        if (!(rep.lhs[i] > rep.lhs[i - 1])) increasing = false;
    rep.verdict = rep.law.divergent && increasing ? TrendReport::Verdict::divergent
                                                  : TrendReport::Verdict::bounded;
    rep.meets_target = rhs_bounded;
    std::ostringstream os;
    os << "lhs^q slope in log(lambda): " << rep.law.slope << " (R^2 " << rep.law.r2
       << "); right side bounded by 2*||psi||_1*(1.02) = " << 2.0 * psi_l1 * 1.02 << ": "
       << (rhs_bounded ? "yes" : "no");
    rep.notes = os.str();
    return rep;
}

namespace {

/// Radial inverse Fourier synthesis with multiplier plateau(rho) rho^{-sigma}
/// supported on [0, 2]: N=2 uses the Bessel J0 kernel, N=3 the spherical
/// sinc. The radial measure is folded into the integrand so the origin stays
/// finite, and GL panels track the oscillation scale.
double hankel_synthesis(int dim, double sigma, double r, double rho_max = 2.0) {
    const int panels = 8 + static_cast<int>(std::ceil(rho_max * std::abs(r) / 3.0));
    if (dim == 2) {
        auto f = [&](double rho) {
            if (rho <= 0.0) return sigma < 1.0 ? 0.0 : (sigma == 1.0 ? 1.0 : 0.0);
            return fields::plateau(rho) * std::pow(rho, 1.0 - sigma) *
                   std::cyl_bessel_j(0.0, rho * r);
        };
        if (sigma > 1.0) {
            // integrable endpoint singularity rho^{1-sigma}
            return (radial::integrate_tanh_sinh(f, 0.0, 0.5, 1e-11) +
                    radial::fixed_gauss(f, 0.5, rho_max, panels)) /
                   (2.0 * std::numbers::pi);
        }
        return radial::fixed_gauss(f, 0.0, rho_max, panels) / (2.0 * std::numbers::pi);
    }
    if (dim == 3) {
        const double c = 2.0 * std::numbers::pi * std::numbers::pi;
        if (r == 0.0) {
            auto f0 = [&](double rho) {
                return rho <= 0.0 ? 0.0 : fields::plateau(rho) * std::pow(rho, 2.0 - sigma);
            };
            return radial::fixed_gauss(f0, 0.0, rho_max, panels) / c;
        }
        auto f = [&](double rho) {
            if (rho <= 0.0) return 0.0;
            return fields::plateau(rho) * std::pow(rho, 1.0 - sigma) * std::sin(rho * r);
        };
        if (sigma > 1.0)
            return (radial::integrate_tanh_sinh(f, 0.0, 0.5, 1e-11) +
                    radial::fixed_gauss(f, 0.5, rho_max, panels)) /
                   (c * r);
        return radial::fixed_gauss(f, 0.0, rho_max, panels) / (c * r);
    }
    throw std::invalid_argument("hankel synthesis: dim must be 2 or 3");
}

}  // namespace

double plateau_spatial(int dim, double r) { return hankel_synthesis(dim, 0.0, r); }

double plateau_potential(int dim, double ell, double r) {
    // the kernel normalization gamma_{N,l} |x|^{l-N} carries the Fourier
    // multiplier (2 pi)^l |xi|^{-l}
    return std::pow(2.0 * std::numbers::pi, ell) * hankel_synthesis(dim, ell, r);
}

TrendReport claim_convergence_probe(const quad::KernelSpec& kernel,
                                    const std::vector<double>& lambda_list,
                                    const std::vector<double>& x_radii) {
    kernel.validate();
    if (kernel.kind != quad::KernelKind::riesz)
        throw std::invalid_argument("claim probe: riesz kernel required");
    const int N = kernel.dim;
    const double ell = kernel.ell;
    for (double r : x_radii)
        if (!(r > 0.0)) throw std::invalid_argument("claim probe: radii must stay away from 0");

    TrendReport rep;
    rep.params = lambda_list;
    // envelope target with theta = N + 1/2, kappa = (ell + N)/2
    const double theta = N + 0.5, kappa = 0.5 * (ell + N);
    const double target = -std::min(theta - N, N - kappa) + 0.2;
    rep.expected_slope = target;

    std::vector<double> loglam, logerr;
    for (double lambda : lambda_list) {
        double worst = 0.0;
        for (double r : x_radii) {
            const double approx =
                std::pow(lambda, N - ell) * plateau_potential(N, ell, lambda * r) -
                std::pow(lambda, ell - N) * plateau_potential(N, ell, r / lambda);
            const double exact = kernel.radial_value(r);
            worst = std::max(worst, std::abs(approx - exact));
        }
        rep.values.push_back(worst);
        if (lambda > 1.0 && worst > 0.0) {
            loglam.push_back(std::log(lambda));
            logerr.push_back(std::log(worst));
        }
    }
    if (loglam.size() >= 2) {
        const auto f = fit::linear_fit(loglam, logerr);
        rep.law.kind = fit::LawKind::power;
        rep.law.slope = f.slope;
        rep.law.intercept = f.intercept;
        rep.law.r2 = f.r2;
        rep.meets_target = f.slope <= target;
    }
    rep.verdict = TrendReport::Verdict::bounded;
    std::ostringstream os;
    os << "error decay exponent " << rep.law.slope << " vs target " << target
       << " (theta = " << theta << ", kappa = " << kappa << ")";
    rep.notes = os.str();
    return rep;
}

Lemma31Report lemma31_check(const opalg::HomogeneousOperator& op,
                            const opalg::ProjectionMaps& kmaps,
                            const std::vector<Field>& phi_suite,
                            const std::vector<Field>& f_suite, const quad::GridSpec& grid) {
    op.validate();
    grid.validate();
    const double C = opalg::tphi_constant(op, kmaps);
    const int m = op.order;
    Lemma31Report rep;
    const long total = grid.points();
    const double cell = std::pow(grid.h(), grid.dim);

    for (const auto& f : f_suite) {
        const double residual = fields::constraint_residual(op, *f, grid);
        if (!(residual <= 1e-8)) {
            ++rep.skipped;
            continue;
        }
        for (const auto& phi : phi_suite) {
            double lhs = 0.0, rhs = 0.0, l1f = 0.0, sup_phi = 0.0;
            for (long p = 0; p < total; ++p) {
                const auto x = grid.point(p);
                const auto fv = f->value(x);
                double fmag = 0.0;
                for (double v : fv) fmag += v * v;
                fmag = std::sqrt(fmag);
                const auto pv = phi->value(x);
                double dot = 0.0, pmag = 0.0;
                for (std::size_t c = 0; c < fv.size(); ++c) {
                    dot += fv[c] * pv[c];
                    pmag += pv[c] * pv[c];
                }
                sup_phi = std::max(sup_phi, std::sqrt(pmag));
                lhs += dot;
                l1f += fmag;
                if (fmag > 0.0) {
                    double xn = 0.0;
                    for (double c : x) xn += c * c;
                    xn = std::sqrt(xn);
                    double xpow = 1.0, deriv_sum = 0.0;
                    for (int j = 1; j <= m; ++j) {
                        xpow *= xn;
                        double d2 = 0.0;
                        for (const auto& gamma : MultiIndex::all_of_order(grid.dim, j)) {
                            const auto dphi = phi->derivative(gamma, x);
                            for (double v : dphi) d2 += v * v;
                        }
                        deriv_sum += xpow * std::sqrt(d2);
                    }
                    rhs += fmag * deriv_sum;
                }
            }
            lhs = std::abs(lhs) * cell;
            rhs = C * rhs * cell;
            l1f *= cell;
            ++rep.pairs;
            // midpoint-rule slack: degenerate pairs have both sides ~0 up to
            // the grid quadrature error of a mean-zero smooth field
            const double slack = 1e-7 * std::max(1.0, l1f * sup_phi);
            if (lhs > rhs + slack) ++rep.violations;
            if (rhs > slack) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
        }
    }
    std::ostringstream os;
    os << rep.pairs << " pairs, " << rep.violations << " violations, max lhs/rhs "
       << rep.max_ratio << ", constant C = " << C;
    rep.notes = os.str();
    return rep;
}

std::vector<Field> make_phi_suite(int count, std::uint64_t seed, int dim, int fiber) {
    std::vector<Field> out;
    const Field bump =
        fields::make_bump(dim, std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.2, false);
    for (int i = 0; i < count; ++i)
        out.push_back(fields::product(
            bump, fields::make_random_polynomial(dim, fiber, 2, mix_seed(seed, 2 * i))));
    return out;
}

std::vector<Field> make_f_suite(int count, std::uint64_t seed, int dim) {
    std::vector<Field> out;
    const Field bump =
        fields::make_bump(dim, std::vector<double>(static_cast<std::size_t>(dim), 0.0), 1.0, false);
    for (int i = 0; i < count; ++i) {
        const Field stream = fields::product(
            bump, fields::make_random_polynomial(dim, 1, 2, mix_seed(seed, 2 * i + 1)));
        out.push_back(fields::stream_curl(stream));
    }
    return out;
}

EstimatorReport constant_estimator(const weights::SWParams& params, int budget,
                                   std::uint64_t seed, int grid_n) {
    params.validate();
    if (params.N != 2)
        throw std::invalid_argument("constant_estimator: shipped family is two-dimensional");
    const auto op = opalg::make_builtin(opalg::BuiltinOp::divergence, 2);

    EstimatorReport rep;
    // coordinates: log2(eps), log2(anisotropy), center offset
    std::array<double, 3> lo{-2.0, -1.0, 0.0};
    std::array<double, 3> hi{2.0, 1.0, 2.0};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::array<double, 3> cur;
    for (int i = 0; i < 3; ++i) cur[static_cast<std::size_t>(i)] =
        lo[static_cast<std::size_t>(i)] +
        (hi[static_cast<std::size_t>(i)] - lo[static_cast<std::size_t>(i)]) * unit(rng);

    auto objective = [&](const std::array<double, 3>& th) {
        const double eps = std::pow(2.0, th[0]);
        const double aniso = std::pow(2.0, th[1]);
        const double off = th[2];
        Field stream = fields::make_bump(2, {off, 0.0}, 1.0, false);
        stream = fields::axis_scaled(stream, {aniso, 1.0 / aniso});
        const Field f = fields::divfree_family(stream, eps);
        quad::GridSpec grid;
        grid.dim = 2;
        grid.n = grid_n;
        grid.half_width = 1.3 * f->support_radius();
        return inequality_ratio(f, params, grid, &op).ratio;
    };

    double best = objective(cur);
    ++rep.evaluations;
    double first = best;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    bool out_of_budget = false;
    for (int cycle = 0; cycle < 4 && !out_of_budget; ++cycle) {
        for (int d = 0; d < 3 && !out_of_budget; ++d) {
            double a = lo[static_cast<std::size_t>(d)], b = hi[static_cast<std::size_t>(d)];
            auto eval_at = [&](double t) {
                auto th = cur;
                th[static_cast<std::size_t>(d)] = t;
                ++rep.evaluations;
                return objective(th);
            };
            double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
            double f1 = eval_at(c1), f2 = eval_at(c2);
            for (int it = 0; it < 8; ++it) {
                if (rep.evaluations >= budget) {
                    out_of_budget = true;
                    break;
                }
                if (f1 < f2) {  // maximize
                    a = c1;
                    c1 = c2;
                    f1 = f2;
                    c2 = a + gr * (b - a);
                    f2 = eval_at(c2);
                } else {
                    b = c2;
                    c2 = c1;
                    f2 = f1;
                    c1 = b - gr * (b - a);
                    f1 = eval_at(c1);
                }
            }
            const double t_best = f1 > f2 ? c1 : c2;
            const double f_best = std::max(f1, f2);
            if (f_best > best) {
                best = f_best;
                cur[static_cast<std::size_t>(d)] = t_best;
            }
            if (rep.evaluations >= budget) out_of_budget = true;
        }
    }
    rep.best_ratio = best;
    rep.best_params["eps"] = std::pow(2.0, cur[0]);
    rep.best_params["anisotropy"] = std::pow(2.0, cur[1]);
    rep.best_params["center_offset"] = cur[2];
    rep.incomplete = out_of_budget;
    rep.flat = std::abs(best - first) <= 1e-9 * std::max(1.0, std::abs(first));
    return rep;
}

}  // namespace rieszlab::lab
