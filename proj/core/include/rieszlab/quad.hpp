#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/field_base.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/kernels.hpp"

namespace rieszlab::quad {

/// Integration domain for weighted norms. Cells belong to a domain when
/// their center does, so disjoint annuli partition exactly.
struct Domain {
    enum class Kind { box, annulus, ball } kind = Kind::box;
    double inner = 0.0;                 // annulus
    double outer = 0.0;                 // annulus / ball radius
    std::vector<double> center;         // ball
    static Domain box() { return {}; }
    static Domain annulus(double a, double b);
    static Domain ball(std::vector<double> c, double r);
    bool contains(const std::vector<double>& x) const;
};

/// Evaluate a closed-form field at the grid nodes.
FieldSamples sample_field(const FieldBase& f, const GridSpec& grid);

/// Midpoint-rule convolution of the kernel with the samples, evaluated at
/// every grid node via zero-padded FFT. The diagonal cell is replaced by the
/// exact integral of the kernel over the ball of volume h^N, which preserves
/// its radial mean.
FieldSamples riesz_potential_grid(const FieldSamples& f, const KernelSpec& kernel);

/// Same quadrature rule, evaluated by direct summation at arbitrary points
/// inside the box. Throws on points outside.
std::vector<double> riesz_potential_at(const FieldSamples& f, const KernelSpec& kernel,
                                       const std::vector<std::vector<double>>& points);

/// Convenience: sample a closed-form field then evaluate at points.
std::vector<double> riesz_potential(const FieldBase& f, const KernelSpec& kernel,
                                    const GridSpec& grid,
                                    const std::vector<std::vector<double>>& points);

/// Mass of |x|^a over the cell around a node; near-origin cells (within 2h)
/// are integrated in polar/sub-cell form rather than by midpoint value.
double cell_weight_mass(const GridSpec& grid, long node, double exponent);

/// Position-based variant for meshes not aligned with a GridSpec: mass of
/// |x|^a over the cube cell of side h centered at cell_center.
double weight_cell_mass_at(const std::vector<double>& cell_center, double h, int dim,
                           double exponent);

/// || |x|^{a/q'...} ||: ( sum_cells |g|^q * integral_cell |x|^a dx )^{1/q},
/// with the near-origin cells polar-corrected. Uses the fiber magnitude of g.
double weighted_norm(const FieldSamples& g, double weight_exponent, double q,
                     const Domain& domain);

/// Closed-form radial overload: ( |S^{N-1}| int |g(r)|^q r^{a+N-1} dr )^{1/q}
/// over an annulus, by adaptive quadrature (no grid involved).
double weighted_norm_radial(int dim, const std::function<double(double)>& g,
                            double weight_exponent, double q, double inner, double outer);

struct KernelRegularityReport {
    double size_constant = 0.0;        // sup |K| |x-y|^{N-l}
    double smoothness_constant = 0.0;  // sup |K(x,y)-K(x,0)| |x|^{N+1-l}/|y|
    bool size_pass = false;
    bool smoothness_pass = false;
    int samples_used = 0;
};

/// Empirical size/smoothness constants over sampled pairs with 2|y| <= |x|,
/// checked against the kernel's declared constants.
KernelRegularityReport kernel_regularity_check(const KernelSpec& kernel, int n_samples = 400,
                                               std::uint64_t seed = 11);

struct RieszTransformResult {
    FieldSamples samples;
    bool mean_zero_warning = false;  // input had a nonzero mean mode
};

/// j-th Riesz transform as the Fourier multiplier -i xi_j / |xi| on the
/// periodic grid, zero mode set to 0.
RieszTransformResult riesz_transform(const FieldSamples& u, int axis);

/// Spectral partial derivative (multiplier i xi_axis).
FieldSamples spectral_derivative(const FieldSamples& u, int axis);

/// Apply a scalar Fourier multiplier m(xi) to a scalar field.
FieldSamples apply_multiplier(
    const FieldSamples& u,
    const std::function<std::complex<double>(const std::vector<double>& xi)>& m);

/// Synthesize the real field with prescribed radial Fourier data:
/// f(x) = (2L)^{-N} sum_k mhat(|xi_k|) e^{i xi_k x}.
FieldSamples fourier_synthesis_radial(const GridSpec& grid,
                                      const std::function<double(double)>& mhat);

/// h^N sum |f| over the box (fiber magnitude).
double l1_norm(const FieldSamples& f);

}  // namespace rieszlab::quad
