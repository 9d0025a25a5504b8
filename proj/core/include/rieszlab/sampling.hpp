#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace rieszlab {

/// splitmix64 step; used to derive independent per-item seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform point on the unit sphere S^{N-1}.
std::vector<double> random_unit_vector(int dim, std::mt19937_64& rng);

/// Deterministic low-discrepancy directions on S^{N-1} (Halton points pushed
/// through the inverse-normal map, then normalized).
std::vector<std::vector<double>> halton_sphere(int dim, int count);

/// count uniform + count low-discrepancy directions, deterministic for a seed.
std::vector<std::vector<double>> sphere_samples(int dim, int count_random,
                                                int count_low_discrepancy,
                                                std::uint64_t seed);

}  // namespace rieszlab
