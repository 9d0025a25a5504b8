#pragma once

#include <functional>
#include <vector>

#include "rieszlab/kernels.hpp"

namespace rieszlab::radial {

using quad::KernelSpec;

using Profile = std::function<double(double)>;

/// Adaptive Simpson on [a, b]; rel_tol is relative to the running estimate.
double integrate_adaptive(const Profile& f, double a, double b, double rel_tol = 1e-10,
                          int max_depth = 24);

/// Composite 16-point Gauss-Legendre over equal panels; the workhorse for
/// smooth integrands (machine accurate, immune to nested-quadrature noise).
double fixed_gauss(const Profile& f, double a, double b, int panels = 2);

/// tanh-sinh rule on [a, b]; robust for integrable endpoint singularities.
/// Nodes never touch the endpoints; abscissae near an endpoint are computed
/// from the stable side so f sees accurate endpoint distances.
double integrate_tanh_sinh(const Profile& f, double a, double b, double rel_tol = 1e-11,
                           int max_level = 12);

/// Splits [a, b] into log-spaced segments (per factor-of-2 decade) and
/// integrates each adaptively; suited to integrands spanning many scales.
double integrate_log_split(const Profile& f, double a, double b, double rel_tol = 1e-10);

/// A_b(r, s) = integral over S^{N-1} of |r e_1 - s w|^b dw.
/// Closed form for N = 1, 3; tanh-sinh in the polar angle for N = 2.
double angular_kernel(int dim, double b, double r, double s);

/// d/dr A_b(r, s); requires r != s.
double angular_kernel_dr(int dim, double b, double r, double s);

/// Riesz potential of a radial density at radius r:
///   (K * f)(|x| = r) = gamma integral_0^{s_max} f(s) s^{N-1} A_{l-N}(r, s) ds.
double potential(const KernelSpec& kernel, const Profile& density, double s_max, double r);

/// Radial derivative of the potential profile, via the differentiated
/// angular kernel when r is separated from the support and central
/// differences otherwise.
double potential_derivative(const KernelSpec& kernel, const Profile& density, double s_max,
                            double r);

/// ( |S^{N-1}| integral_a^b |g(r)|^q w(r) r^{N-1} dr )^{1/q}.
double weighted_q_norm(int dim, const Profile& g, const Profile& weight, double q, double a,
                       double b, double rel_tol = 1e-9);

}  // namespace rieszlab::radial
