#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rieszlab/field_base.hpp"
#include "rieszlab/grid.hpp"
#include "rieszlab/operators.hpp"

namespace rieszlab::fields {

/// Smooth compactly supported bump A exp(1/(u-1)), u = |x-c|^2/R^2, with
/// analytic derivatives up to order 3. normalize picks A so the integral is 1
/// (radial constant computed once per dimension).
Field make_bump(int dim, const std::vector<double>& center, double radius, bool normalize);

/// Mass-preserving rescaling phi_eps(x) = eps^{-N} phi(x/eps).
Field mollifier_family(const Field& phi, double eps);

/// Divergence-free field from a scalar stream: f = (d2 g, -d1 g, 0, ...)
/// applied to the eps-rescaled stream.
Field divfree_family(const Field& stream, double eps);

/// Curl of a scalar stream without rescaling.
Field stream_curl(const Field& stream);

/// Polynomial field: one multivariate polynomial per fiber component.
Field make_polynomial(int dim, std::vector<std::map<MultiIndex, double>> components);

/// Seeded random polynomial with coefficients in [-scale, scale] up to the
/// given total degree.
Field make_random_polynomial(int dim, int fiber, int degree, std::uint64_t seed,
                             double scale = 1.0);

/// Pointwise product of a scalar field with a vector field (Leibniz
/// derivatives up to the smaller declared order).
Field product(const Field& scalar, const Field& vec);

Field make_constant(int dim, std::vector<double> value);

/// The identity field x -> x.
Field make_coordinate(int dim);

/// x -> base(d .* x) with per-axis dilation factors d.
Field axis_scaled(const Field& base, std::vector<double> dilation);

/// max over grid nodes of |L(D) f| from analytic derivatives, normalized by
/// the max magnitude of the order-m derivative tensor of f.
double constraint_residual(const opalg::HomogeneousOperator& op, const FieldBase& f,
                           const quad::GridSpec& grid);

/// C^inf plateau on the Fourier side: 1 for t <= 1, 0 for t >= 2.
double plateau(double t);

/// Band-limited grid field: low Fourier modes below 1/lambda removed.
struct BandLimitedField {
    quad::FieldSamples samples;    // fiber = witness dimension
    quad::FieldSamples scalar;     // the scalar band-limited factor
    double lambda = 1.0;
    double l1_norm = 0.0;          // of the scalar factor
    double psi_l1_norm = 0.0;      // grid L1 norm of the plateau synthesis
    double support_lo = 0.0;       // Fourier support annulus [lo, hi]
    double support_hi = 0.0;
};

/// Difference of dilated plateau syntheses: the scalar factor has Fourier
/// transform plateau(|xi|/lambda) - plateau(lambda |xi|), vanishing on
/// |xi| < 1/lambda; tensored with the witness vector.
BandLimitedField p_lambda_family(const quad::GridSpec& grid, double lambda,
                                 const std::vector<double>& witness);

struct RieszSystemField {
    quad::FieldSamples field;  // (R_1 u, ..., R_N u)
    double curl_residual = 0.0;
};

/// Vector Riesz transform of a band-limited scalar sample set, with the
/// spectral curl residual certifying membership in the curl kernel.
RieszSystemField riesz_system_field(const quad::FieldSamples& u);

}  // namespace rieszlab::fields
