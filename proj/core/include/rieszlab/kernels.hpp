#pragma once

#include <functional>
#include <vector>

namespace rieszlab::quad {

/// gamma_{N,l} = pi^{l - N/2} Gamma((N-l)/2) / Gamma(l/2), the fractional
/// integral normalization.
double riesz_gamma(int dim, double ell);

/// Surface measure of S^{N-1}.
double sphere_area(int dim);

/// Volume of the unit ball in R^N.
double ball_volume(int dim);

enum class KernelKind { riesz, general };

/// Convolution-type fractional kernel plus regularity metadata. The riesz
/// kind is gamma_{N,l} |x - y|^{l - N}; general kernels supply their own
/// off-diagonal evaluation and declared size/smoothness constants.
struct KernelSpec {
    KernelKind kind = KernelKind::riesz;
    int dim = 2;
    double ell = 1.0;
    double gamma = 0.0;  // normalization, filled by make_riesz_kernel

    // general kernels only
    std::function<double(const std::vector<double>& x, const std::vector<double>& y)> eval;
    double declared_size_constant = 0.0;        // sup |K| |x-y|^{N-l}
    double declared_smoothness_constant = 0.0;  // sup |K(x,y)-K(x,0)| |x|^{N+1-l} / |y|

    void validate() const;
    /// Kernel value at displacement x - y (riesz kind only).
    double radial_value(double r) const;
};

KernelSpec make_riesz_kernel(int dim, double ell);

KernelSpec make_general_kernel(
    int dim, double ell,
    std::function<double(const std::vector<double>&, const std::vector<double>&)> eval,
    double declared_size_constant, double declared_smoothness_constant);

}  // namespace rieszlab::quad
