#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rieszlab/fit.hpp"

namespace rieszlab::weights {

/// w(x) = |x|^exponent.
struct PowerWeight {
    double exponent = 0.0;
    bool locally_integrable(int dim) const { return exponent > -static_cast<double>(dim); }
};

/// Radial weight given by a sampled profile on an increasing radius grid,
/// log-log interpolated, extended by power-law tails at 0 and infinity.
struct RadialWeight {
    std::vector<double> radii;   // increasing, positive
    std::vector<double> values;  // nonnegative
    double tail_exponent_zero = 0.0;
    double tail_exponent_inf = 0.0;

    void validate() const;
    double eval(double r) const;
};

class Weight {
public:
    Weight() : w_(PowerWeight{}) {}
    Weight(PowerWeight p) : w_(p) {}
    Weight(RadialWeight r);

    bool is_power() const { return std::holds_alternative<PowerWeight>(w_); }
    const PowerWeight& as_power() const { return std::get<PowerWeight>(w_); }
    double eval(double r) const;
    /// Power-law exponent governing r -> 0 / r -> infinity.
    double exponent_at_zero() const;
    double exponent_at_inf() const;
    /// Constant scale multiplier.
    static Weight scaled(const Weight& w, double factor);

    double scale() const { return scale_; }

private:
    std::variant<PowerWeight, RadialWeight> w_;
    double scale_ = 1.0;
};

/// Structured-text weight spec (kind power | radial-table; see README).
Weight load_weight_file(const std::string& path);

/// Parameter bundle of the weighted inequality: dimension, Lebesgue
/// exponents, potential order, weight exponents.
struct SWParams {
    int N = 2;
    double p = 1.0;
    double q = 1.0;
    double ell = 1.0;
    double alpha = 0.0;
    double beta = 0.0;

    void validate() const;
    /// q forced by the scaling relation 1/q = 1/p + (alpha+beta-ell)/N.
    static double scaling_q(int N, double p, double ell, double alpha, double beta);
};

enum class Regime { p_gt_1, p_eq_1 };

struct AdmissibilityReport {
    bool pass = false;
    std::vector<std::string> violations;
};

/// Parameter screen for the weighted inequality. p>1 regime: alpha < N/p',
/// beta < N/q, alpha+beta >= 0 and the scaling relation. p=1 regime:
/// 0 <= alpha < 1, beta < N/q, alpha+beta > 0 and 1/q = 1+(alpha+beta-ell)/N.
AdmissibilityReport sw_admissible(const SWParams& params, Regime regime);

struct ConditionReport {
    bool finite = false;
    double constant = 0.0;                      // best estimate of the supremum
    std::optional<fit::TrendFit> divergence_law;  // present when finite == false
    double truncation_inner = 0.0;
    double truncation_outer = 0.0;
    std::string notes;
};

/// sup_y ( int_{B(0,T)} u(x) |x-y|^{-(N-l)q} dx )^{1/q} / v(y) over radial
/// |y| samples (rotation invariance reduces the sup to radii). Divergence in
/// the truncation T is detected by a growth-law fit across a T ladder.
ConditionReport pointwise_condition(int dim, const Weight& u, const Weight& v, double ell,
                                    double q, const std::vector<double>& y_radii = {},
                                    double truncation_outer = 1e4,
                                    double truncation_inner = 1e-4);

enum class HardyVariant { tail_u_ball_v, ball_u_tail_v };

/// sup_R of ( int_{|x|>R} u~ )^{1/q} sup_{|x|<R} v~^{-1} (tail_u_ball_v), or
/// the mirrored product (ball_u_tail_v), on a log-spaced R grid; analytic
/// tail integration for power weights.
ConditionReport hardy_constant(int dim, const Weight& u_tilde, const Weight& v_tilde, double q,
                               HardyVariant variant, const std::vector<double>& r_grid = {});

struct BallFamily {
    std::vector<std::vector<double>> centers;
    std::vector<double> radii;
    static BallFamily standard(int dim);  // centers {0,(1,0,..),(-2,1,0,..)}, radii 2^-6..2^6
};

/// Sawyer-type testing ratios on a family of balls: the potential of the
/// ball-restricted weight, normed against the companion weight over the same
/// ball, relative to the plain ball mass. Reports the worst ratio over both
/// testing directions.
ConditionReport sawyer_testing(const Weight& u, const Weight& v, const SWParams& params,
                               const BallFamily& family = BallFamily::standard(2),
                               int mesh_n = 96);

/// |B|^{l/N+1/q-1/p} (avg_B u^r)^{1/(rq)} ( int_B v^{(1-p')r} )^{1/(p'r)}
/// over the ball family, r > 1.
ConditionReport bump_condition(const Weight& u, const Weight& v, const SWParams& params,
                               double r, const BallFamily& family = BallFamily::standard(2));

/// |B|^{1/q+l/N-1} (avg_B u^p)^{1/(pq)} over the family, plus the dyadic
/// shell tail bound ( int_{|x|>2|y|} u(x) |x|^{-(N-l+1)q} dx )^{1/q} <~ 1/|y|
/// verified at sampled |y| with explicit shell sums.
ConditionReport bump_u3(int dim, const Weight& u, double p, double ell, double q,
                        const BallFamily& family = BallFamily::standard(2),
                        const std::vector<double>& y_radii = {0.25, 1.0, 4.0});

/// sup_y ( int_{|x|>2|y|} u(x) |x|^{-(N-l+1)q} dx )^{1/q} |y| / v(y).
ConditionReport pesopeso_condition(int dim, const Weight& u, const Weight& v, double ell,
                                   double q, const std::vector<double>& y_radii = {});

/// int_R^inf w(r) r^{N-1} dr; analytic for power weights, numeric plus
/// analytic tail for tabulated weights. Returns nullopt when divergent.
std::optional<double> radial_tail_integral(int dim, const Weight& w, double R);

/// int_0^R w(r) r^{N-1} dr; nullopt when divergent at the origin.
std::optional<double> radial_ball_integral(int dim, const Weight& w, double R);

/// int_B |x|^a dx over an arbitrary ball (exact polar reduction; N = 2 for
/// off-center balls, any supported N for centered balls).
double ball_power_integral(int dim, const std::vector<double>& center, double radius,
                           double exponent);

/// Numeric counterpart of ball integrals for arbitrary radial weights.
double ball_weight_integral(int dim, const Weight& w, const std::vector<double>& center,
                            double radius);

}  // namespace rieszlab::weights
