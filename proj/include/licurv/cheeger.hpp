#pragma once

#include <array>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "licurv/metric.hpp"

namespace licurv {

inline constexpr double kSubalgebraTolerance = 1e-10;

struct ChainStage {
  std::vector<Vector> basis;
  double lambda;
};

/// Nested subalgebras h_0 < h_1 < ... listed innermost first, each with its shrink constant.
class CheegerChain {
 public:
  CheegerChain() = default;
  explicit CheegerChain(std::vector<ChainStage> stages) : stages_(std::move(stages)) {}

  const std::vector<ChainStage>& stages() const noexcept { return stages_; }
  bool empty() const noexcept { return stages_.empty(); }

  /// Bracket closure, strict nesting and positive lambdas. Throws InvalidChain/NotSubalgebra.
  void validate(const LieAlgebra& alg) const;

 private:
  std::vector<ChainStage> stages_;
};

/// Throws NotSubalgebra unless span(basis) is bracket-closed within `tolerance`.
void require_subalgebra(const LieAlgebra& alg, const std::vector<Vector>& basis,
                        double tolerance = kSubalgebraTolerance);

/// Cheeger deformation by (H, gH), gH given as a Gram matrix on `h_basis`. The result
/// agrees with g0 on the g0-orthogonal complement of h and restricts to A(I+A)^{-1} on a
/// gH-orthonormal basis of h, where A is that basis' g0 Gram matrix.
LeftInvariantMetric deform_general(const LeftInvariantMetric& g0, const std::vector<Vector>& h_basis,
                                   const Matrix& gH);

/// Special case gH = lambda * g0|h: shrinks h uniformly by t = lambda/(lambda+1).
LeftInvariantMetric uniform_shrink(const LeftInvariantMetric& g0, const std::vector<Vector>& h_basis, double lambda);

double shrink_factor(double lambda);

/// Applies the stages outermost first. g0 must be bi-invariant.
LeftInvariantMetric chain_deform(const LeftInvariantMetric& g0, const CheegerChain& chain);

/// Eigenvalue levels t_0 < ... < t_{l-1} (relative to g0) produced by chain_deform.
std::vector<double> chain_levels(const std::vector<double>& lambdas);
/// Inverse of chain_levels for strictly increasing levels in (0,1).
std::vector<double> lambdas_for_levels(const std::vector<double>& levels);

/// lambda_i / (1 + lambda_i) for gR eigenvalues.
std::array<double, 3> so3_cheeger_eigenvalues(const std::array<double, 3>& gR_eigenvalues);

struct Realization {
  std::array<double, 3> gR_eigenvalues;
  /// Whether the gR triple itself strictly satisfies the so(3) inequalities.
  bool gR_strict;
};

/// gR eigenvalues whose deformation is (a/(1+a)) * (t1, t2, 1). Throws TargetNotStrict when
/// the target eigenvalues (t1, t2, 1) are not strictly inside the nonnegative region.
Realization realize_positive_metric(double target1, double target2, double a);

/// Strict-interior test for an eigenvalue triple (classifies the square roots).
bool eigenvalues_strictly_nonnegative(const std::array<double, 3>& eigenvalues);

/// Three pairs (V,W) in so(3)+so(3) spanning the horizontal space
/// <V,e_i>_0 + lambda_i <W,e_i>_0 = 0 at the identity.
std::vector<std::pair<Vector, Vector>> horizontal_space(const std::array<double, 3>& gR_eigenvalues);

/// {"algebra": ..., "chain": [{"basis": [[...]], "lambda": x}], "phi": optional g0}.
std::pair<LeftInvariantMetric, CheegerChain> chain_from_json(const nlohmann::json& doc);

}  // namespace licurv
