#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rieszlab/fields.hpp"
#include "rieszlab/quad.hpp"
#include "rieszlab/radial.hpp"
#include "support/oracles.hpp"

using namespace rieszlab;
using std::numbers::pi;

TEST_CASE("fractional integral of the unit-ball indicator at the origin") {
    // gamma_{2,1} = 1 and the integral of |y|^{-1} over the unit disk is 2 pi
    const auto kernel = quad::make_riesz_kernel(2, 1.0);
    CHECK(kernel.gamma == doctest::Approx(1.0).epsilon(1e-14));

    const quad::GridSpec g512{2, 2.0, 512};
    const auto chi512 = oracles::sample_ball_indicator(g512, 1.0);
    const double v512 = quad::riesz_potential_at(chi512, kernel, {{0.0, 0.0}})[0];
    CHECK(std::abs(v512 - 2 * pi) / (2 * pi) <= 0.01);

    SUBCASE("error contracts by at least 1.8 when the spacing halves") {
        const quad::GridSpec g256{2, 2.0, 256};
        const auto chi256 = oracles::sample_ball_indicator(g256, 1.0);
        const double v256 = quad::riesz_potential_at(chi256, kernel, {{0.0, 0.0}})[0];
        CHECK(std::abs(v256 - 2 * pi) / std::abs(v512 - 2 * pi) >= 1.8);
    }

    SUBCASE("zero density gives zero potential") {
        quad::FieldSamples zero;
        zero.grid = {2, 2.0, 64};
        zero.fiber = 1;
        zero.values.assign(static_cast<std::size_t>(zero.grid.points()), 0.0);
        const auto out = quad::riesz_potential_grid(zero, kernel);
        for (double v : out.values) CHECK(v == 0.0);
    }

    SUBCASE("grid convolution equals direct summation at grid nodes") {
        const quad::GridSpec g{2, 2.0, 64};
        const auto chi = oracles::sample_ball_indicator(g, 1.0);
        const auto grid_path = quad::riesz_potential_grid(chi, kernel);
        std::vector<std::vector<double>> pts;
        std::mt19937_64 rng(3);
        std::uniform_int_distribution<int> pick(0, g.n - 1);
        for (int i = 0; i < 20; ++i) pts.push_back({g.coord(pick(rng)), g.coord(pick(rng))});
        const auto direct = quad::riesz_potential_at(chi, kernel, pts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const long node = g.index_of(pts[i]);
            CHECK(grid_path.values[static_cast<std::size_t>(node)] ==
                  doctest::Approx(direct[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("mollifier potential approaches the kernel profile") {
    const auto kernel = quad::make_riesz_kernel(2, 1.0);
    const auto moll = fields::mollifier_family(fields::make_bump(2, {0, 0}, 1.0, true), 1.0 / 32);
    const quad::GridSpec g{2, 1.5, 768};
    const auto val = quad::riesz_potential(*moll, kernel, g, {{1.0, 0.0}})[0];
    // limit profile gamma |x|^{l-N} = 1 at |x| = 1
    CHECK(std::abs(val - 1.0) <= 0.02);
}

TEST_CASE("scaling identity of the potential under mass-preserving dilation") {
    // I_l(f_eps)(eps x) = eps^{l-N} I_l(f)(x) when f_eps = eps^{-N} f(./eps)
    const auto kernel = quad::make_riesz_kernel(2, 1.0);
    const auto bump = fields::make_bump(2, {0, 0}, 1.0, true);
    const double eps = 0.5, ell = 1.0;
    const quad::GridSpec g1{2, 1.5, 256};
    const quad::GridSpec ge{2, 1.5 * eps, 256};
    const auto base = quad::riesz_potential(*bump, kernel, g1, {{0.8, 0.2}})[0];
    const auto scaled = quad::riesz_potential(*fields::mollifier_family(bump, eps), kernel, ge,
                                              {{0.8 * eps, 0.2 * eps}})[0];
    CHECK(scaled == doctest::Approx(std::pow(eps, ell - 2.0) * base).epsilon(0.02));
}

TEST_CASE("weighted norms with power weights") {
    SUBCASE("unit-ball indicator against |x|^{-1/3}, q = 4/3") {
        // (integral over the disk of |x|^{-1/3})^{3/4} = (2 pi / (2 - 1/3))^{3/4}
        const quad::GridSpec g{2, 2.0, 512};
        const auto chi = oracles::sample_ball_indicator(g, 1.0);
        const double expect = std::pow(6.0 * pi / 5.0, 0.75);
        const double got = quad::weighted_norm(chi, -1.0 / 3.0, 4.0 / 3.0, quad::Domain::box());
        CHECK(std::abs(got - expect) / expect <= 0.005);
    }
    SUBCASE("zero field") {
        quad::FieldSamples zero;
        zero.grid = {2, 1.0, 32};
        zero.fiber = 2;
        zero.values.assign(static_cast<std::size_t>(zero.grid.points() * 2), 0.0);
        CHECK(quad::weighted_norm(zero, 0.5, 2.0, quad::Domain::box()) == 0.0);
    }
    SUBCASE("log law over annuli for the closed-form limit profile") {
        // g = |x|^{l-N}: the weighted q-integrand is r^{-1}, so the q-th power
        // of the norm over (a, 1) is exactly 2 pi log(1/a)
        for (double a : {1e-1, 1e-2, 1e-3}) {
            const double nn = quad::weighted_norm_radial(
                2, [](double r) { return 1.0 / r; }, -0.5 * 4.0 / 3.0, 4.0 / 3.0, a, 1.0);
            CHECK(std::pow(nn, 4.0 / 3.0) ==
                  doctest::Approx(2 * pi * std::log(1.0 / a)).epsilon(0.01));
        }
    }
    SUBCASE("q-th powers add exactly over disjoint annuli") {
        const quad::GridSpec g{2, 2.0, 128};
        const auto chi = oracles::sample_ball_indicator(g, 1.0);
        const double q = 4.0 / 3.0;
        auto nq = [&](const quad::Domain& d) {
            return std::pow(quad::weighted_norm(chi, -0.25, q, d), q);
        };
        const double whole = nq(quad::Domain::annulus(0.25, 1.75));
        const double left = nq(quad::Domain::annulus(0.25, 0.8));
        const double right = nq(quad::Domain::annulus(0.8, 1.75));
        CHECK(std::abs(whole - left - right) <= 1e-12 * whole);
    }
    SUBCASE("non-integrable weight is rejected with the exponent") {
        const quad::GridSpec g{2, 1.0, 16};
        const auto chi = oracles::sample_ball_indicator(g, 0.5);
        CHECK_THROWS_WITH_AS(quad::weighted_norm(chi, -2.0, 1.0, quad::Domain::box()),
                             doctest::Contains("-2.0"), std::invalid_argument);
    }
}

TEST_CASE("kernel regularity constants") {
    SUBCASE("fractional kernel meets its declared size and smoothness bounds") {
        const auto kernel = quad::make_riesz_kernel(2, 1.0);
        const auto rep = quad::kernel_regularity_check(kernel, 400);
        CHECK(rep.size_pass);
        CHECK(rep.smoothness_pass);
        CHECK(rep.size_constant == doctest::Approx(kernel.gamma).epsilon(1e-6));
        CHECK(rep.smoothness_constant <= 4.0);  // gamma (N-l) 2^{N+1-l} = 4 here
    }
    SUBCASE("bounded smooth angular factor passes with enlarged constants") {
        const int N = 2;
        const double ell = 1.0;
        auto eval = [](const std::vector<double>& x, const std::vector<double>& y) {
            const double dx = x[0] - y[0], dy = x[1] - y[1];
            const double r = std::hypot(dx, dy);
            const double angular = 1.0 + 0.5 * (dx / r);  // smooth on the sphere
            return std::pow(r, -1.0) * angular;
        };
        const auto kernel = quad::make_general_kernel(N, ell, eval, 1.5, 40.0);
        const auto rep = quad::kernel_regularity_check(kernel, 400);
        CHECK(rep.size_pass);
        CHECK(rep.smoothness_pass);
        CHECK(rep.size_constant <= 1.5);
    }
    SUBCASE("zero kernel has zero constants") {
        auto eval = [](const std::vector<double>&, const std::vector<double>&) { return 0.0; };
        const auto kernel = quad::make_general_kernel(2, 1.0, eval, 0.0, 0.0);
        const auto rep = quad::kernel_regularity_check(kernel, 100);
        CHECK(rep.size_constant == 0.0);
        CHECK(rep.smoothness_constant == 0.0);
    }
}

namespace {

quad::FieldSamples single_mode(const quad::GridSpec& g, int kx, int ky) {
    quad::FieldSamples u;
    u.grid = g;
    u.fiber = 1;
    u.values.resize(static_cast<std::size_t>(g.points()));
    const double w = pi / g.half_width;
    for (long p = 0; p < g.points(); ++p) {
        const auto x = g.point(p);
        u.values[static_cast<std::size_t>(p)] = std::cos(w * (kx * x[0] + ky * x[1]));
    }
    return u;
}

}  // namespace

TEST_CASE("Riesz transform as a Fourier multiplier") {
    const quad::GridSpec g{2, pi, 64};

    SUBCASE("single mode is scaled by -i k_j / |k|") {
        // cos(k.x) -> (k_j/|k|) sin(k.x)
        const auto u = single_mode(g, 3, 2);
        const auto r0 = quad::riesz_transform(u, 0);
        CHECK_FALSE(r0.mean_zero_warning);
        const double knorm = std::hypot(3.0, 2.0);
        for (long p = 0; p < g.points(); ++p) {
            const auto x = g.point(p);
            const double expect = (3.0 / knorm) * std::sin(3 * x[0] + 2 * x[1]);
            CHECK(r0.samples.values[static_cast<std::size_t>(p)] ==
                  doctest::Approx(expect).epsilon(1e-10));
        }
    }

    SUBCASE("transform square sums to minus the identity") {
        auto u = single_mode(g, 3, 2);
        // add a second mode for a non-trivial spectrum
        const auto v = single_mode(g, 1, 5);
        for (std::size_t i = 0; i < u.values.size(); ++i) u.values[i] += 0.37 * v.values[i];
        quad::FieldSamples acc = u;
        std::fill(acc.values.begin(), acc.values.end(), 0.0);
        for (int j = 0; j < 2; ++j) {
            const auto rj = quad::riesz_transform(u, j).samples;
            const auto rjj = quad::riesz_transform(rj, j).samples;
            for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += rjj.values[i];
        }
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            worst = std::max(worst, std::abs(acc.values[i] + u.values[i]));
            scale = std::max(scale, std::abs(u.values[i]));
        }
        CHECK(worst <= 1e-10 * scale);
    }

    SUBCASE("nonzero mean triggers the warning") {
        quad::FieldSamples u = single_mode(g, 1, 0);
        for (auto& v : u.values) v += 1.0;
        CHECK(quad::riesz_transform(u, 0).mean_zero_warning);
    }
}

TEST_CASE("field sample files round-trip") {
    const quad::GridSpec g{2, 1.0, 16};
    quad::FieldSamples f;
    f.grid = g;
    f.fiber = 2;
    f.values.resize(static_cast<std::size_t>(g.points() * 2));
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : f.values) v = u(rng);
    quad::save_field(f, "roundtrip.field");
    const auto back = quad::load_field("roundtrip.field");
    CHECK(back.grid == f.grid);
    CHECK(back.fiber == f.fiber);
    CHECK(back.values == f.values);
    std::remove("roundtrip.field");
}

TEST_CASE("radial synthesis integrates to the zero-frequency value") {
    const quad::GridSpec g{2, 8.0, 128};
    const auto psi = quad::fourier_synthesis_radial(g, [](double r) { return fields::plateau(r); });
    double sum = 0.0;
    for (double v : psi.values) sum += v;
    CHECK(sum * g.h() * g.h() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("points outside the box are rejected") {
    const quad::GridSpec g{2, 1.0, 32};
    const auto chi = oracles::sample_ball_indicator(g, 0.5);
    const auto kernel = quad::make_riesz_kernel(2, 1.0);
    CHECK_THROWS_AS(quad::riesz_potential_at(chi, kernel, {{2.0, 0.0}}), std::invalid_argument);
}
