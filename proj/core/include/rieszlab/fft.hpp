#pragma once

#include <complex>
#include <vector>

namespace rieszlab::fft {

using Complex = std::complex<double>;

/// In-place unnormalized complex DFT over an N-d row-major array.
/// sign = -1 forward (e^{-i}), +1 inverse (no 1/M scaling applied).
/// Plan creation is internally serialized; safe to call concurrently.
void transform(std::vector<Complex>& data, const std::vector<int>& shape, int sign);

void forward(std::vector<Complex>& data, const std::vector<int>& shape);
/// Inverse including the 1/prod(shape) normalization.
void inverse(std::vector<Complex>& data, const std::vector<int>& shape);

}  // namespace rieszlab::fft
