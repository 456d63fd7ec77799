#pragma once

#include <cstdint>
#include <random>

#include "licurv/lie_algebra.hpp"

namespace licurv {

using Rng = std::mt19937_64;

/// Deterministic per-index seed derivation (splitmix64 finalizer).
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) noexcept;

Vector random_gaussian(int n, Rng& rng);
/// Haar-ish random orthogonal matrix with determinant +1.
Matrix random_rotation(int n, Rng& rng);
/// Random symmetric positive-definite matrix with eigenvalues uniform in [lo, hi].
Matrix random_spd(int n, Rng& rng, double lo = 0.25, double hi = 4.0);

}  // namespace licurv
