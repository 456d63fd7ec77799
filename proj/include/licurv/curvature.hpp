#pragma once

#include <utility>
#include <vector>

#include "licurv/metric.hpp"

namespace licurv {

inline constexpr double kPredicateTolerance = 1e-9;

/// <R(x,y)z,w>_l by Puttmann's formula. Sign convention: sectional curvature is
/// <R(x,y)y,x>_l, which is +1/4 on unit orthogonal pairs of bi-invariant so(3).
double riemann(const LeftInvariantMetric& metric, const Vector& x, const Vector& y, const Vector& z,
               const Vector& w);

/// Same tensor from the Levi-Civita connection: <nabla_x nabla_y z - nabla_y nabla_x z - nabla_[x,y] z, w>_l.
double riemann_from_connection(const LeftInvariantMetric& metric, const Vector& x, const Vector& y,
                               const Vector& z, const Vector& w);

/// Throws DegeneratePlane when the g_l Gram determinant of (x,y) is below 1e-14.
double sectional(const LeftInvariantMetric& metric, const Vector& x, const Vector& y);

/// Milnor's formula on frame indices of orthonormal_frame(metric).
double sectional_milnor(const LeftInvariantMetric& metric, int i, int j);
/// Milnor's formula for an arbitrary g_l-orthonormal frame's structure constants.
double sectional_milnor(const StructureTensor& alpha, int i, int j);

/// Curvature tensor components in a g_l-orthonormal frame, with fast evaluation of
/// sectional curvatures for planes given in frame coordinates.
class FrameCurvature {
 public:
  explicit FrameCurvature(const LeftInvariantMetric& metric);
  FrameCurvature(const LeftInvariantMetric& metric, std::vector<Vector> frame);

  int dim() const noexcept { return dim_; }
  const std::vector<Vector>& frame() const noexcept { return frame_; }
  double operator()(int i, int j, int k, int l) const noexcept { return data_[index(i, j, k, l)]; }

  /// R(a,b,c,d) for frame-coordinate vectors.
  double tensor(const Vector& a, const Vector& b, const Vector& c, const Vector& d) const;
  /// Matrix M(j,k) = R(a, f_j, f_k, a).
  Matrix jacobi_form(const Vector& a) const;
  /// Sectional curvature of span(a,b) in frame coordinates.
  double sectional(const Vector& a, const Vector& b) const;
  /// Frame coordinates back to algebra coordinates.
  Vector to_algebra(const Vector& a) const;

 private:
  size_t index(int i, int j, int k, int l) const noexcept {
    return ((static_cast<size_t>(i) * dim_ + j) * dim_ + k) * dim_ + l;
  }
  void build(const LeftInvariantMetric& metric);

  int dim_;
  std::vector<Vector> frame_;
  std::vector<double> data_;
};

/// Symmetric matrix of <R(e_i^e_j), e_k^e_l> over the lexicographic wedge basis (i<j).
Matrix curvature_operator(const LeftInvariantMetric& metric);
Matrix curvature_operator(const FrameCurvature& curvature);
/// Lexicographic index pairs labelling the rows of curvature_operator.
std::vector<std::pair<int, int>> wedge_basis(int dim);

/// Sorted ascending eigenvalues of a symmetric matrix.
std::vector<double> symmetric_spectrum(const Matrix& m);

/// Ricci curvature of the direction x. Throws ZeroVector.
double ricci(const LeftInvariantMetric& metric, const Vector& x);
/// Ricci form in the orthonormal frame.
Matrix ricci_matrix(const LeftInvariantMetric& metric);
std::vector<double> ricci_spectrum(const LeftInvariantMetric& metric);
double scalar(const LeftInvariantMetric& metric);

/// Closed-form scalar curvature of the so(3) metric with eigenvalues l_i^2.
double so3_scalar_closed_form(double l1, double l2, double l3);
/// Heron's area for side lengths l1,l2,l3 (negative radicand clamps to zero area).
double heron_area(double l1, double l2, double l3);

/// nabla_z x for left-invariant fields, read off against the orthonormal frame.
Vector covariant_derivative(const LeftInvariantMetric& metric, const Vector& z, const Vector& x);

/// max_z ||nabla_z x||_l / ||x||_l < 1e-9 over the orthonormal frame. Throws ZeroVector.
bool is_parallel(const LeftInvariantMetric& metric, const Vector& x, double tolerance = kPredicateTolerance);
/// ad_x skew-adjoint and x g_l-orthogonal to [g,g].
bool is_parallel_by_skew_criterion(const LeftInvariantMetric& metric, const Vector& x,
                                   double tolerance = kPredicateTolerance);
bool ad_skew_adjoint(const LeftInvariantMetric& metric, const Vector& x, double tolerance = kPredicateTolerance);
double ad_skew_defect(const LeftInvariantMetric& metric, const Vector& x);
bool orthogonal_to_commutator(const LeftInvariantMetric& metric, const Vector& x,
                              double tolerance = kPredicateTolerance);

}  // namespace licurv
