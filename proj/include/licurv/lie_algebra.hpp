#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

namespace licurv {

/// Coordinates of an algebra element in the fixed g0-orthonormal basis.
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline constexpr double kStructuralTolerance = 1e-12;

enum class AlgebraKind { Custom, So3, U1Su2 };

const char* algebra_kind_name(AlgebraKind kind) noexcept;

/// A Lie algebra given by structure constants c[i][j][k], [u_i,u_j] = sum_k c[i][j][k] u_k,
/// relative to a basis that is orthonormal for a bi-invariant inner product. That inner
/// product is the standard dot product on coordinates.
///
/// Construction validates antisymmetry (exact), the Jacobi identity and ad-invariance of
/// the dot product, both within `tolerance`. Instances are immutable.
class LieAlgebra {
 public:
  LieAlgebra(int dim, std::vector<double> structure, std::vector<std::string> labels = {},
             AlgebraKind kind = AlgebraKind::Custom, double tolerance = kStructuralTolerance);

  int dim() const noexcept { return dim_; }
  AlgebraKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double c(int i, int j, int k) const noexcept { return structure_[index(i, j, k)]; }

  Vector basis(int i) const;

  /// Matrix of ad_{u_i}: column j holds [u_i, u_j].
  const Matrix& ad_basis(int i) const { return ad_[static_cast<size_t>(i)]; }

  Matrix ad(const Vector& x) const;
  Vector bracket(const Vector& x, const Vector& y) const;

  double antisymmetry_residual() const;
  double jacobi_residual() const;
  double ad_invariance_residual() const;

 private:
  size_t index(int i, int j, int k) const noexcept {
    return (static_cast<size_t>(i) * dim_ + j) * dim_ + k;
  }

  int dim_;
  std::vector<double> structure_;
  std::vector<std::string> labels_;
  AlgebraKind kind_;
  std::vector<Matrix> ad_;
};

/// so(3) with [u1,u2]=u3, [u2,u3]=u1, [u3,u1]=u2.
LieAlgebra make_so3();

/// u(1) + su(2) in the basis {e0, u1, u2, u3}; e0 is central.
LieAlgebra make_u1_su2();

/// Parses {"dim": n, "structure": [[i,j,k,value], ...]} with i<j; the antisymmetric
/// counterparts are filled in. Also accepts the names "so3" and "u1su2".
LieAlgebra algebra_from_json(const nlohmann::json& doc);
nlohmann::json algebra_to_json(const LieAlgebra& alg);

/// g0-orthonormal basis of [g,g].
std::vector<Vector> commutator_ideal(const LieAlgebra& alg, double tolerance = kStructuralTolerance);

/// g0-orthonormal basis of span(vectors), dropping directions below tolerance.
std::vector<Vector> orthonormal_span(const std::vector<Vector>& vectors, double tolerance);

void require_dim(const LieAlgebra& alg, const Vector& x);

}  // namespace licurv
