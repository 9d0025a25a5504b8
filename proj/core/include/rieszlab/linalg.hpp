#pragma once

#include <Eigen/Dense>
#include <complex>

namespace rieszlab::la {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Relative singular-value cutoff used for all rank decisions.
inline constexpr double kRankTol = 1e-10;

double operator_norm(const Matrix& a);
double frobenius_norm(const Matrix& a);

/// Orthonormal basis of the nullspace of a (columns). Empty matrix (n x 0)
/// when the nullspace is trivial.
Matrix nullspace(const Matrix& a, double rtol = kRankTol);

/// Orthonormal basis of the column space of a.
Matrix column_space(const Matrix& a, double rtol = kRankTol);

/// Orthonormal basis of span(u) ∩ span(w); u and w have orthonormal columns.
Matrix intersect_subspaces(const Matrix& u, const Matrix& w, double rtol = kRankTol);

/// Minimal-norm least-squares solution of a x = b (pseudo-inverse applied
/// columnwise to b).
Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, double rtol = kRankTol);

/// Smallest singular value, counting missing ones as zero when rows < cols
/// (i.e. the full-column-rank test value: sigma_cols(a)).
double min_singular_value_as_map(const Matrix& a);

/// Distance from vector v to the column span of the orthonormal basis q.
double distance_to_span(const Matrix& q, const Vector& v);

}  // namespace rieszlab::la
