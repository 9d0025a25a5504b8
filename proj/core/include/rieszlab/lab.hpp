#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rieszlab/field_base.hpp"
#include "rieszlab/fit.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/kernels.hpp"
#include "rieszlab/operators.hpp"
#include "rieszlab/weights.hpp"

namespace rieszlab::lab {

/// One evaluation of the weighted inequality: lhs is the weighted q-norm of
/// the potential, rhs the weighted L1 norm of the field.
struct RatioReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool degenerate = false;  // rhs vanished
    std::string notes;
};

/// lhs = || |x|^{-beta} I_l f ||_q over the grid box, rhs = || |x|^alpha f ||_1.
/// Requires the p = 1 admissibility screen; when a constraint operator is
/// given the field must satisfy it to 1e-8.
RatioReport inequality_ratio(const Field& f, const weights::SWParams& params,
                             const quad::GridSpec& grid,
                             const opalg::HomogeneousOperator* constraint = nullptr);

enum class FamilyKind { divfree, mollifier };

struct TrendReport {
    std::vector<double> params;  // sweep parameter (eps, lambda, or annulus a)
    std::vector<double> lhs;
    std::vector<double> rhs;
    std::vector<double> values;  // quantity the law is fitted on
    fit::TrendFit law;
    enum class Verdict { bounded, divergent, degenerate } verdict = Verdict::bounded;
    double expected_slope = 0.0;  // analytic slope when one is forced
    bool meets_target = true;
    std::string notes;
};

std::string to_string(TrendReport::Verdict v);

/// Ratio of the inequality across the mass-preserving family f_eps with the
/// grid box rescaled along; for power weights and the pinned scaling
/// relation the ratio is exactly eps-independent.
TrendReport scale_invariance_suite(FamilyKind kind, const Field& scalar_seed,
                                   const std::vector<double>& eps_list,
                                   const weights::SWParams& params, double base_half_width,
                                   int grid_n,
                                   const opalg::HomogeneousOperator* constraint = nullptr);

/// Truncated weighted norm of the mollifier potential over annuli (a, 1) at
/// a fixed small eps (default min(a)/100): the q-th power grows linearly in
/// log(1/a) with slope |S^{N-1}| gamma^q at the pinned alpha = 0 exponents.
/// enforce_relation = false admits off-relation control runs.
TrendReport counterexample_scalar_probe(const weights::SWParams& params,
                                        const std::vector<double>& a_list, double eps = 0.0,
                                        bool enforce_relation = true);

/// Divergence-free family probe at alpha = 1: eps is tied to the shrinking
/// inner radius (eps = a * eps_ratio), the q-th power of lhs/rhs is fitted
/// against log(1/a), and the weighted L1 right side is checked to be
/// eps-independent across eps_rhs_list. alpha < 1 runs the same pipeline as
/// a bounded control.
TrendReport counterexample_alpha1_probe(const weights::SWParams& params,
                                        const std::vector<double>& a_list,
                                        double eps_ratio = 0.01,
                                        const std::vector<double>& eps_rhs_list = {0.25, 0.5, 1.0,
                                                                                   2.0, 4.0});

/// Band-limited witness probe: u_lambda carries a common-kernel witness of a
/// non-cocanceling operator through frequencies [1/lambda, 2 lambda]; the
/// right side stays bounded by twice the plateau synthesis L1 norm while the
/// left side grows. Refuses cocanceling operators.
TrendReport necessity_probe(const opalg::HomogeneousOperator& op,
                            const std::vector<double>& lambda_list,
                            const weights::SWParams& params, const quad::GridSpec& grid);

/// |K * p_lambda (x) - K(x)| at radii |x|, evaluated through the radial
/// Fourier representation of the plateau mollifier pair; fits the decay
/// exponent in lambda and compares against the envelope target.
TrendReport claim_convergence_probe(const quad::KernelSpec& kernel,
                                    const std::vector<double>& lambda_list,
                                    const std::vector<double>& x_radii = {1.0});

/// Spatial plateau synthesis psi(|x|) and its Riesz potential, via radial
/// (Hankel-type) quadrature of the analytic multiplier; used by the
/// convergence probe and its tests.
double plateau_spatial(int dim, double r);
double plateau_potential(int dim, double ell, double r);

struct Lemma31Report {
    int pairs = 0;
    int violations = 0;
    int skipped = 0;          // constraint-violating fields
    double max_ratio = 0.0;   // sharpness indicator lhs/rhs
    std::string notes;
};

/// Duality estimate check: |integral phi . f| <= C sum_j integral
/// |f| |y|^j |D^j phi| for every pair, with the constructive constant from
/// the projection maps.
Lemma31Report lemma31_check(const opalg::HomogeneousOperator& op,
                            const opalg::ProjectionMaps& kmaps,
                            const std::vector<Field>& phi_suite,
                            const std::vector<Field>& f_suite, const quad::GridSpec& grid);

/// Seeded test-pair generators (polynomial-times-bump fields).
std::vector<Field> make_phi_suite(int count, std::uint64_t seed, int dim, int fiber);
std::vector<Field> make_f_suite(int count, std::uint64_t seed, int dim);

struct EstimatorReport {
    double best_ratio = 0.0;
    std::map<std::string, double> best_params;
    int evaluations = 0;
    bool incomplete = false;  // budget exhausted mid-sweep
    bool flat = false;        // objective did not move
};

/// Empirical lower bound on the best inequality constant: coordinate
/// golden-section search over (eps, anisotropy, center offset) of a
/// divergence-free bump family, deterministic for a given seed.
EstimatorReport constant_estimator(const weights::SWParams& params, int budget,
                                   std::uint64_t seed, int grid_n = 192);

}  // namespace rieszlab::lab
