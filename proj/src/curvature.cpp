#include "licurv/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "licurv/errors.hpp"

namespace licurv {

namespace {

void require_nonzero(const LeftInvariantMetric& metric, const Vector& x) {
  require_dim(metric.algebra(), x);
  if (!(metric.norm(x) > 0.0)) throw Error(ErrorCode::ZeroVector, "vector must be nonzero");
}

}  // namespace

double riemann(const LeftInvariantMetric& metric, const Vector& x, const Vector& y, const Vector& z,
               const Vector& w) {
  const auto& alg = metric.algebra();
  for (const Vector* v : {&x, &y, &z, &w}) require_dim(alg, *v);
  const Matrix& phi = metric.phi();
  const Vector px = phi * x, py = phi * y, pz = phi * z, pw = phi * w;
  auto br = [&alg](const Vector& a, const Vector& b) { return alg.bracket(a, b); };
  auto ip_l = [&phi](const Vector& a, const Vector& b) { return a.dot(phi * b); };
  auto bform = [&](const Vector& a, const Vector& pa, const Vector& b, const Vector& pb) -> Vector {
    return 0.5 * (br(a, pb) + br(b, pa));
  };

  const Vector xy = br(x, y), zw = br(z, w);
  const double first = xy.dot(br(pz, w)) + xy.dot(br(z, pw)) + br(px, y).dot(zw) + br(x, py).dot(zw);
  const double second = ip_l(br(x, w), br(y, z)) - ip_l(br(x, z), br(y, w)) - 2.0 * ip_l(xy, zw);
  const Vector bxw = bform(x, px, w, pw), byz = bform(y, py, z, pz);
  const Vector bxz = bform(x, px, z, pz), byw = bform(y, py, w, pw);
  const Matrix& pinv = metric.phi_inverse();
  const double third = bxw.dot(pinv * byz) - bxz.dot(pinv * byw);
  return -0.25 * first - 0.25 * second - third;
}

Vector covariant_derivative(const LeftInvariantMetric& metric, const Vector& z, const Vector& x) {
  const auto& alg = metric.algebra();
  require_dim(alg, z);
  require_dim(alg, x);
  const auto frame = orthonormal_frame(metric);
  const Vector xz = alg.bracket(x, z);
  Vector out = Vector::Zero(metric.dim());
  for (const auto& e : frame) {
    const double c = 0.5 * (metric.inner(z, alg.bracket(e, x)) + metric.inner(x, alg.bracket(e, z)) -
                            metric.inner(e, xz));
    out += c * e;
  }
  return out;
}

double riemann_from_connection(const LeftInvariantMetric& metric, const Vector& x, const Vector& y,
                               const Vector& z, const Vector& w) {
  const auto& alg = metric.algebra();
  require_dim(alg, w);
  const Vector r = covariant_derivative(metric, x, covariant_derivative(metric, y, z)) -
                   covariant_derivative(metric, y, covariant_derivative(metric, x, z)) -
                   covariant_derivative(metric, alg.bracket(x, y), z);
  return metric.inner(r, w);
}

double sectional(const LeftInvariantMetric& metric, const Vector& x, const Vector& y) {
  require_dim(metric.algebra(), x);
  require_dim(metric.algebra(), y);
  const double xx = metric.inner(x, x), yy = metric.inner(y, y), xy = metric.inner(x, y);
  const double gram = xx * yy - xy * xy;
  if (!(gram > 1e-14)) throw Error(ErrorCode::DegeneratePlane, "vectors do not span a plane");
  return riemann(metric, x, y, y, x) / gram;
}

double sectional_milnor(const StructureTensor& alpha, int i, int j) {
  const int n = alpha.dim();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::IndexOutOfRange, "frame index");
  if (i == j) throw Error(ErrorCode::DegeneratePlane, "frame indices must differ");
  double kappa = 0.0;
  for (int k = 0; k < n; ++k) {
    const double a_ijk = alpha(i, j, k), a_jki = alpha(j, k, i), a_kij = alpha(k, i, j);
    kappa += 0.5 * a_ijk * (-a_ijk + a_jki + a_kij) -
             0.25 * (a_ijk - a_jki + a_kij) * (a_ijk + a_jki - a_kij) - alpha(k, i, i) * alpha(k, j, j);
  }
  return kappa;
}

double sectional_milnor(const LeftInvariantMetric& metric, int i, int j) {
  const int n = metric.dim();
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error(ErrorCode::IndexOutOfRange, "frame index");
  return sectional_milnor(structure_constants_l(metric), i, j);
}

FrameCurvature::FrameCurvature(const LeftInvariantMetric& metric)
    : FrameCurvature(metric, orthonormal_frame(metric)) {}

FrameCurvature::FrameCurvature(const LeftInvariantMetric& metric, std::vector<Vector> frame)
    : dim_(metric.dim()), frame_(std::move(frame)) {
  if (static_cast<int>(frame_.size()) != dim_) throw Error(ErrorCode::DimensionMismatch, "frame size");
  build(metric);
}

void FrameCurvature::build(const LeftInvariantMetric& metric) {
  // Puttmann's formula with every bracket of frame vectors precomputed.
  const int n = dim_;
  const auto& alg = metric.algebra();
  const Matrix& phi = metric.phi();
  const Matrix& pinv = metric.phi_inverse();
  const auto un = static_cast<size_t>(n);
  auto at = [un](int i, int j) { return static_cast<size_t>(i) * un + static_cast<size_t>(j); };

  std::vector<Vector> pf(un);
  for (int i = 0; i < n; ++i) pf[static_cast<size_t>(i)] = phi * frame_[static_cast<size_t>(i)];
  std::vector<Vector> br(un * un), lbr(un * un), phbr(un * un), bf(un * un), pbf(un * un);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto& fi = frame_[static_cast<size_t>(i)];
      const auto& fj = frame_[static_cast<size_t>(j)];
      br[at(i, j)] = alg.bracket(fi, fj);
      lbr[at(i, j)] = phi * br[at(i, j)];
      phbr[at(i, j)] = alg.bracket(pf[static_cast<size_t>(i)], fj);
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // B(f_i,f_j) = 1/2([f_i, phi f_j] + [f_j, phi f_i]) = -1/2([phi f_j, f_i] + [phi f_i, f_j])
      bf[at(i, j)] = -0.5 * (phbr[at(j, i)] + phbr[at(i, j)]);
      pbf[at(i, j)] = pinv * bf[at(i, j)];
    }

  data_.assign(un * un * un * un, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const Vector& xy = br[at(i, j)];
          const Vector& zw = br[at(k, l)];
          const double first =
              xy.dot(phbr[at(k, l)]) - xy.dot(phbr[at(l, k)]) + phbr[at(i, j)].dot(zw) - phbr[at(j, i)].dot(zw);
          const double second =
              br[at(i, l)].dot(lbr[at(j, k)]) - br[at(i, k)].dot(lbr[at(j, l)]) - 2.0 * xy.dot(lbr[at(k, l)]);
          const double third = bf[at(i, l)].dot(pbf[at(j, k)]) - bf[at(i, k)].dot(pbf[at(j, l)]);
          data_[index(i, j, k, l)] = -0.25 * first - 0.25 * second - third;
        }
}

double FrameCurvature::tensor(const Vector& a, const Vector& b, const Vector& c, const Vector& d) const {
  double s = 0.0;
  for (int i = 0; i < dim_; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      const double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      for (int k = 0; k < dim_; ++k) {
        const double abc = ab * c[k];
        const size_t base = index(i, j, k, 0);
        double inner = 0.0;
        for (int l = 0; l < dim_; ++l) inner += data_[base + static_cast<size_t>(l)] * d[l];
        s += abc * inner;
      }
    }
  }
  return s;
}

Matrix FrameCurvature::jacobi_form(const Vector& a) const {
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int l = 0; l < dim_; ++l) {
      const double al = a[i] * a[l];
      if (al == 0.0) continue;
      for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) m(j, k) += al * data_[index(i, j, k, l)];
    }
  return 0.5 * (m + m.transpose());
}

double FrameCurvature::sectional(const Vector& a, const Vector& b) const {
  const double gram = a.squaredNorm() * b.squaredNorm() - a.dot(b) * a.dot(b);
  if (!(gram > 1e-14)) throw Error(ErrorCode::DegeneratePlane, "vectors do not span a plane");
  return tensor(a, b, b, a) / gram;
}

Vector FrameCurvature::to_algebra(const Vector& a) const {
  Vector out = Vector::Zero(frame_.front().size());
  for (int i = 0; i < dim_; ++i) out += a[i] * frame_[static_cast<size_t>(i)];
  return out;
}

std::vector<std::pair<int, int>> wedge_basis(int dim) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) pairs.emplace_back(i, j);
  return pairs;
}

Matrix curvature_operator(const FrameCurvature& curvature) {
  const auto pairs = wedge_basis(curvature.dim());
  const auto m = static_cast<Eigen::Index>(pairs.size());
  Matrix op(m, m);
  for (Eigen::Index p = 0; p < m; ++p)
    for (Eigen::Index q = 0; q < m; ++q) {
      const auto [i, j] = pairs[static_cast<size_t>(p)];
      const auto [k, l] = pairs[static_cast<size_t>(q)];
      op(p, q) = curvature(i, j, l, k);
    }
  return op;
}

Matrix curvature_operator(const LeftInvariantMetric& metric) {
  return curvature_operator(FrameCurvature(metric));
}

std::vector<double> symmetric_spectrum(const Matrix& m) {
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  const auto& v = solver.eigenvalues();
  return std::vector<double>(v.data(), v.data() + v.size());
}

double ricci(const LeftInvariantMetric& metric, const Vector& x) {
  require_nonzero(metric, x);
  const Vector xhat = x / metric.norm(x);
  double r = 0.0;
  for (const auto& e : orthonormal_frame(metric)) r += riemann(metric, xhat, e, e, xhat);
  return r;
}

Matrix ricci_matrix(const LeftInvariantMetric& metric) {
  const FrameCurvature curvature(metric);
  const int n = metric.dim();
  Matrix ric = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int k = 0; k < n; ++k) ric(a, b) += curvature(a, k, k, b);
  return 0.5 * (ric + ric.transpose());
}

std::vector<double> ricci_spectrum(const LeftInvariantMetric& metric) {
  return symmetric_spectrum(ricci_matrix(metric));
}

double scalar(const LeftInvariantMetric& metric) { return ricci_matrix(metric).trace(); }

double so3_scalar_closed_form(double l1, double l2, double l3) {
  const double num = (-l1 + l2 + l3) * (l1 - l2 + l3) * (l1 + l2 - l3) * (l1 + l2 + l3);
  return num / (2.0 * l1 * l1 * l2 * l2 * l3 * l3);
}

double heron_area(double l1, double l2, double l3) {
  const double s = 0.5 * (l1 + l2 + l3);
  return std::sqrt(std::max(0.0, s * (s - l1) * (s - l2) * (s - l3)));
}

bool is_parallel(const LeftInvariantMetric& metric, const Vector& x, double tolerance) {
  require_nonzero(metric, x);
  const double scale = metric.norm(x);
  double worst = 0.0;
  for (const auto& z : orthonormal_frame(metric))
    worst = std::max(worst, metric.norm(covariant_derivative(metric, z, x)));
  return worst / scale < tolerance;
}

double ad_skew_defect(const LeftInvariantMetric& metric, const Vector& x) {
  require_nonzero(metric, x);
  const auto frame = orthonormal_frame(metric);
  const auto& alg = metric.algebra();
  std::vector<Vector> adx;
  adx.reserve(frame.size());
  for (const auto& e : frame) adx.push_back(alg.bracket(x, e));
  double worst = 0.0;
  for (size_t i = 0; i < frame.size(); ++i)
    for (size_t j = 0; j < frame.size(); ++j)
      worst = std::max(worst, std::abs(metric.inner(adx[i], frame[j]) + metric.inner(frame[i], adx[j])));
  return worst / metric.norm(x);
}

bool ad_skew_adjoint(const LeftInvariantMetric& metric, const Vector& x, double tolerance) {
  return ad_skew_defect(metric, x) < tolerance;
}

bool orthogonal_to_commutator(const LeftInvariantMetric& metric, const Vector& x, double tolerance) {
  require_nonzero(metric, x);
  const double nx = metric.norm(x);
  for (const auto& c : commutator_ideal(metric.algebra()))
    if (std::abs(metric.inner(x, c)) / (nx * metric.norm(c)) >= tolerance) return false;
  return true;
}

bool is_parallel_by_skew_criterion(const LeftInvariantMetric& metric, const Vector& x, double tolerance) {
  return ad_skew_adjoint(metric, x, tolerance) && orthogonal_to_commutator(metric, x, tolerance);
}

}  // namespace licurv
