#include "rieszlab/kernels.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rieszlab::quad {

double riesz_gamma(int dim, double ell) {
    if (!(ell > 0.0 && ell < dim)) throw std::invalid_argument("riesz_gamma: need 0 < ell < N");
    const double n = dim;
    return std::pow(std::numbers::pi, ell - n / 2.0) * std::tgamma((n - ell) / 2.0) /
           std::tgamma(ell / 2.0);
}

double sphere_area(int dim) {
    // |S^{N-1}| = 2 pi^{N/2} / Gamma(N/2)
    return 2.0 * std::pow(std::numbers::pi, dim / 2.0) / std::tgamma(dim / 2.0);
}

double ball_volume(int dim) { return sphere_area(dim) / dim; }

void KernelSpec::validate() const {
    if (dim < 1) throw std::invalid_argument("kernel: dim must be >= 1");
    if (!(ell > 0.0 && ell < dim)) throw std::invalid_argument("kernel: need 0 < ell < N");
    if (kind == KernelKind::general && !eval)
        throw std::invalid_argument("kernel: general kind requires an evaluation routine");
}

double KernelSpec::radial_value(double r) const {
    if (kind != KernelKind::riesz)
        throw std::invalid_argument("kernel: radial_value only defined for the riesz kind");
    return gamma * std::pow(r, ell - dim);
}

KernelSpec make_riesz_kernel(int dim, double ell) {
    KernelSpec k;
    k.kind = KernelKind::riesz;
    k.dim = dim;
    k.ell = ell;
    k.gamma = riesz_gamma(dim, ell);
    k.declared_size_constant = k.gamma;
    // mean-value bound via |grad K| = gamma (N-l) |x|^{l-N-1} on |x| >= |y|/... ,
    // evaluated pessimistically at |x|/2.
    k.declared_smoothness_constant = k.gamma * (dim - ell) * std::pow(2.0, dim + 1.0 - ell);
    k.validate();
    return k;
}

KernelSpec make_general_kernel(
    int dim, double ell,
    std::function<double(const std::vector<double>&, const std::vector<double>&)> eval,
    double declared_size_constant, double declared_smoothness_constant) {
    KernelSpec k;
    k.kind = KernelKind::general;
    k.dim = dim;
    k.ell = ell;
    k.gamma = riesz_gamma(dim, ell);
    k.eval = std::move(eval);
    k.declared_size_constant = declared_size_constant;
    k.declared_smoothness_constant = declared_smoothness_constant;
    k.validate();
    return k;
}

}  // namespace rieszlab::quad
