#pragma once

#include <array>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "licurv/lie_algebra.hpp"

namespace licurv {

/// Eigendata of phi. `eigenvalues` are the squared lambdas, ascending.
struct EigenData {
  std::vector<double> eigenvalues;
  std::vector<Vector> eigenvectors;

  /// Square roots of the eigenvalues.
  std::vector<double> lambdas() const;
};

/// A left-invariant metric <A,B>_l = <phi A, B>_0 at the identity.
class LeftInvariantMetric {
 public:
  /// Validates symmetry (relative `tolerance`) and positive-definiteness.
  LeftInvariantMetric(LieAlgebra algebra, const Matrix& phi, double tolerance = kStructuralTolerance);

  const LieAlgebra& algebra() const noexcept { return algebra_; }
  int dim() const noexcept { return algebra_.dim(); }
  const Matrix& phi() const noexcept { return phi_; }
  const Matrix& phi_inverse() const noexcept { return phi_inv_; }
  const EigenData& eigen() const noexcept { return eigen_; }

  double inner(const Vector& x, const Vector& y) const { return x.dot(phi_ * y); }
  double norm(const Vector& x) const;

 private:
  LieAlgebra algebra_;
  Matrix phi_;
  Matrix phi_inv_;
  EigenData eigen_;
};

/// Components of E0 and the su(2) eigendata of a metric on u(1)+su(2).
/// E0 = a e0 + b u1 + c u2 + d u3 with u_i the g0-orthonormal su(2) eigenvectors.
struct RestrictedEigenData {
  std::array<double, 3> lambdas;
  std::array<Vector, 3> su2_frame;
  std::array<double, 4> e0_components;
  Vector e0;
};

LeftInvariantMetric metric_from_phi(const LieAlgebra& alg, const Matrix& phi);

/// Inverse of the eigendecomposition: phi = sum_i value_i v_i v_i^T.
LeftInvariantMetric metric_from_eigen(const LieAlgebra& alg, const std::vector<double>& eigenvalues,
                                      const std::vector<Vector>& eigenvectors,
                                      double tolerance = 1e-10);

/// so(3) metric with eigenvalues lambda_i^2 along u_i.
LeftInvariantMetric so3_metric_from_lambdas(const std::array<double, 3>& lambdas);

/// u(1)+su(2) metric declaring {E0, u1/l1, u2/l2, u3/l3} g_l-orthonormal, where
/// E0 = a e0 + b u1 + c u2 + d u3 and {u_i} is `su2_frame` (standard basis when empty).
/// Requires a != 0.
LeftInvariantMetric u2_metric_from_restricted(const std::array<double, 3>& lambdas,
                                              const std::array<double, 4>& e0_components,
                                              const std::vector<Vector>& su2_frame = {});

/// g_l-orthonormal frame e_i = v_i / lambda_i from the eigendata.
std::vector<Vector> orthonormal_frame(const LeftInvariantMetric& metric);

/// alpha[i][j][k] = <[e_i,e_j],e_k>_l, stored flat.
class StructureTensor {
 public:
  explicit StructureTensor(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim * dim, 0.0) {}
  int dim() const noexcept { return dim_; }
  double operator()(int i, int j, int k) const noexcept { return data_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) noexcept { return data_[index(i, j, k)]; }

 private:
  size_t index(int i, int j, int k) const noexcept {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }
  int dim_;
  std::vector<double> data_;
};

StructureTensor structure_constants_l(const LeftInvariantMetric& metric);
StructureTensor structure_constants_l(const LeftInvariantMetric& metric, const std::vector<Vector>& frame);

RestrictedEigenData restricted_eigen(const LeftInvariantMetric& metric);

/// Accepts {"algebra":..., "phi": [[...]]}, {"algebra":"so3","lambdas":[...]} or
/// {"algebra":"u1su2","lambdas":[...],"E0":[a,b,c,d]}.
LeftInvariantMetric metric_from_json(const nlohmann::json& doc);
nlohmann::json metric_to_json(const LeftInvariantMetric& metric);

}  // namespace licurv
