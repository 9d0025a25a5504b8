#include "rieszlab/linalg.hpp"

#include <Eigen/SVD>

namespace rieszlab::la {

double operator_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

double frobenius_norm(const Matrix& a) { return a.norm(); }

Matrix nullspace(const Matrix& a, double rtol) {
    if (a.cols() == 0) return Matrix(0, 0);
    if (a.rows() == 0) return Matrix::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cut = (s.size() > 0 ? s(0) : 0.0) * rtol;
    long rank = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixV().rightCols(a.cols() - rank);
}

Matrix column_space(const Matrix& a, double rtol) {
    if (a.size() == 0) return Matrix(a.rows(), 0);
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU);
    const auto& s = svd.singularValues();
    const double cut = (s.size() > 0 ? s(0) : 0.0) * rtol;
    long rank = 0;
    for (long i = 0; i < s.size(); ++i)
        if (s(i) > cut) ++rank;
    return svd.matrixU().leftCols(rank);
}

Matrix intersect_subspaces(const Matrix& u, const Matrix& w, double rtol) {
    const long n = u.rows();
    if (u.cols() == 0 || w.cols() == 0) return Matrix(n, 0);
    // v in span(u) ∩ span(w) iff both complement projections kill it.
    Matrix stacked(2 * n, n);
    stacked.topRows(n) = Matrix::Identity(n, n) - u * u.adjoint();
    stacked.bottomRows(n) = Matrix::Identity(n, n) - w * w.adjoint();
    return nullspace(stacked, rtol);
}

Matrix lstsq_min_norm(const Matrix& a, const Matrix& b, double rtol) {
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(rtol);
    return svd.solve(b);
}

double min_singular_value_as_map(const Matrix& a) {
    if (a.rows() < a.cols()) return 0.0;  // nullity forced by shape
    Eigen::JacobiSVD<Matrix> svd(a);
    const auto& s = svd.singularValues();
    return s.size() > 0 ? s(s.size() - 1) : 0.0;
}

double distance_to_span(const Matrix& q, const Vector& v) {
    if (q.cols() == 0) return v.norm();
    return (v - q * (q.adjoint() * v)).norm();
}

}  // namespace rieszlab::la
