#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlab/field_base.hpp"
#include "rieszlab/linalg.hpp"
#include "rieszlab/multi_index.hpp"

namespace rieszlab::opalg {

using la::Matrix;
using la::Vector;

/// Homogeneous constant-coefficient differential operator of order m from a
/// fiber of dimension fiber_in to one of dimension fiber_out, stored through
/// its symbol coefficients: L(xi) = sum_{|alpha|=m} coeff[alpha] xi^alpha.
struct HomogeneousOperator {
    int dim = 0;        // ambient space dimension N
    int order = 0;      // m
    int fiber_in = 0;   // dim of the source fiber
    int fiber_out = 0;  // dim of the target fiber
    std::map<MultiIndex, Matrix> coeffs;

    /// Throws std::invalid_argument on any violated structural invariant
    /// (key orders, matrix shapes, all-zero coefficients).
    void validate() const;
};

Matrix eval_symbol(const HomogeneousOperator& op, const std::vector<double>& xi);

enum class PropertyVerdict { confirmed, refuted, heuristic_pass, heuristic_fail };

std::string to_string(PropertyVerdict v);

/// Subspace carrier: orthonormal columns spanning the reported space.
struct SubspaceBasis {
    Matrix basis;
    double tol = la::kRankTol;
    int dim() const { return static_cast<int>(basis.cols()); }
};

struct PropertyReport {
    PropertyVerdict verdict;
    std::optional<SubspaceBasis> witness;  // nonempty for refuted verdicts
    double evidence = 0.0;  // min singular value or worst residual, per check
    int samples_used = 0;
    std::string detail;
};

/// Exact decision: the common kernel of L(xi) over xi != 0 equals the
/// nullspace of the vertically stacked coefficient matrices, because
/// xi -> L(xi) v vanishing identically forces b_alpha v = 0 per monomial.
PropertyReport cocanceling_check(const HomogeneousOperator& op);

/// Sampled intersection of the symbol images A(xi)[E]. A trivial running
/// intersection after finitely many directions certifies the property;
/// a surviving candidate is only heuristic evidence against.
PropertyReport canceling_check(const HomogeneousOperator& op, int n_samples = 128,
                               double tol = la::kRankTol, std::uint64_t seed = 7);

/// Sampled injectivity of the symbol on the unit sphere, optionally refined
/// by local descent from the worst direction. Heuristic by nature.
PropertyReport ellipticity_check(const HomogeneousOperator& op, int n_samples = 128,
                                 bool refine = true, std::uint64_t seed = 7,
                                 double tol = 1e-8);

/// Left inverses of the coefficient family: sum_alpha k_alpha b_alpha = Id.
struct ProjectionMaps {
    std::map<MultiIndex, Matrix> k;  // fiber_in x fiber_out each
    double residual = 0.0;           // operator norm of sum k_a b_a - Id
};

struct NoIdentityError : std::runtime_error {
    explicit NoIdentityError(double res)
        : std::runtime_error("no left-inverse family: residual " + std::to_string(res) +
                             " exceeds 1e-10 (operator is not cocanceling)"),
          residual(res) {}
    double residual;
};

/// Minimal-Frobenius-norm least-squares solve of sum k_alpha b_alpha = Id.
/// Always returns the attempted solve; check residual for success.
ProjectionMaps try_solve_projection_maps(const HomogeneousOperator& op);

/// As above but throws NoIdentityError when residual > 1e-10.
ProjectionMaps solve_projection_maps(const HomogeneousOperator& op);

struct TphiResult {
    Vector value;           // T_phi(x), fiber_in components
    double majorant = 0.0;  // C * sum_j |x|^j |D^j phi(x)|
    double constant = 0.0;  // the constructive constant C
};

/// Leibniz remainder of the polynomial left-inverse identity:
///   T_phi(x) = -sum_{|a|=m} b_a^* sum_{0<g<=a} binom(a,g) d^{a-g}P(x) d^g phi(x),
/// with P(x) = sum_{|b|=m} (x^b / b!) k_b^*. The returned majorant bounds
/// |T_phi(x)| by C sum_{j=1..m} |x|^j |D^j phi(x)| with an explicit C
/// accumulated from coefficient and projection-map norms and the Leibniz
/// multiplicities (see tphi_constant).
TphiResult tphi_eval(const HomogeneousOperator& op, const ProjectionMaps& kmaps,
                     const FieldBase& phi, const std::vector<double>& x);

/// The constructive constant used by tphi_eval.
double tphi_constant(const HomogeneousOperator& op, const ProjectionMaps& kmaps);

/// H(xi) = |xi|^{m - ell} (A* A)^{-1}(xi) A*(xi); positive-degree-(-ell)
/// homogeneous left inverse factor: H(xi) A(xi) = |xi|^{m-ell} Id.
Matrix eval_H_symbol(const HomogeneousOperator& a, double ell,
                     const std::vector<double>& xi, double tol = 1e-12);

enum class BuiltinOp { divergence, curl, gradient, laplacian };

BuiltinOp builtin_from_name(const std::string& name);

/// Exact integer-coefficient constructors for the stock operators.
/// curl: N=2 scalar rotation, N=3 cross-product form, N>=4 the
/// antisymmetrized 2-form (df)_{ij} = d_i f_j - d_j f_i.
HomogeneousOperator make_builtin(BuiltinOp name, int dim);

/// Structured-text operator definition (see README for the format).
HomogeneousOperator load_operator_file(const std::string& path);
void save_operator_file(const HomogeneousOperator& op, const std::string& path);

}  // namespace rieszlab::opalg
