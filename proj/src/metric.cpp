#include "licurv/metric.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "licurv/errors.hpp"

namespace licurv {

std::vector<double> EigenData::lambdas() const {
  std::vector<double> out(eigenvalues.size());
  std::transform(eigenvalues.begin(), eigenvalues.end(), out.begin(), [](double v) { return std::sqrt(v); });
  return out;
}

namespace {

// Right-handed orientation for three-dimensional eigenframes so the bracket table keeps
// the form [u1,u2]=u3.
void orient(Matrix& vectors) {
  if (vectors.cols() == 3 && vectors.determinant() < 0.0) vectors.col(2) *= -1.0;
}

}  // namespace

LeftInvariantMetric::LeftInvariantMetric(LieAlgebra algebra, const Matrix& phi, double tolerance)
    : algebra_(std::move(algebra)) {
  const int n = algebra_.dim();
  if (phi.rows() != n || phi.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "phi must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!phi.allFinite()) throw Error(ErrorCode::NotSymmetric, "phi has non-finite entries");
  const double scale = std::max(1.0, phi.cwiseAbs().maxCoeff());
  if ((phi - phi.transpose()).cwiseAbs().maxCoeff() > tolerance * scale)
    throw Error(ErrorCode::NotSymmetric, "phi is not symmetric");
  phi_ = 0.5 * (phi + phi.transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> solver(phi_);
  const auto& values = solver.eigenvalues();
  if (values[0] <= tolerance * scale)
    throw Error(ErrorCode::NotPositiveDefinite, "smallest eigenvalue " + std::to_string(values[0]));
  Matrix vectors = solver.eigenvectors();
  orient(vectors);
  for (int i = 0; i < n; ++i) {
    eigen_.eigenvalues.push_back(values[i]);
    eigen_.eigenvectors.push_back(vectors.col(i));
  }
  phi_inv_ = vectors * values.cwiseInverse().asDiagonal() * vectors.transpose();
}

double LeftInvariantMetric::norm(const Vector& x) const { return std::sqrt(inner(x, x)); }

LeftInvariantMetric metric_from_phi(const LieAlgebra& alg, const Matrix& phi) {
  return LeftInvariantMetric(alg, phi);
}

LeftInvariantMetric metric_from_eigen(const LieAlgebra& alg, const std::vector<double>& eigenvalues,
                                      const std::vector<Vector>& eigenvectors, double tolerance) {
  const int n = alg.dim();
  if (static_cast<int>(eigenvalues.size()) != n || static_cast<int>(eigenvectors.size()) != n)
    throw Error(ErrorCode::DimensionMismatch, "need one eigenvalue and eigenvector per dimension");
  Matrix v(n, n);
  for (int i = 0; i < n; ++i) {
    require_dim(alg, eigenvectors[static_cast<size_t>(i)]);
    v.col(i) = eigenvectors[static_cast<size_t>(i)];
    if (!(eigenvalues[static_cast<size_t>(i)] > 0.0))
      throw Error(ErrorCode::NonPositiveValue, "eigenvalues must be positive");
  }
  if ((v.transpose() * v - Matrix::Identity(n, n)).cwiseAbs().maxCoeff() > tolerance)
    throw Error(ErrorCode::NonOrthonormalFrame, "eigenvectors are not g0-orthonormal");
  const Eigen::Map<const Vector> values(eigenvalues.data(), n);
  return LeftInvariantMetric(alg, v * values.asDiagonal() * v.transpose());
}

LeftInvariantMetric so3_metric_from_lambdas(const std::array<double, 3>& lambdas) {
  for (double l : lambdas)
    if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambdas must be positive");
  Matrix phi = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) phi(i, i) = lambdas[static_cast<size_t>(i)] * lambdas[static_cast<size_t>(i)];
  return LeftInvariantMetric(make_so3(), phi);
}

LeftInvariantMetric u2_metric_from_restricted(const std::array<double, 3>& lambdas,
                                              const std::array<double, 4>& e0_components,
                                              const std::vector<Vector>& su2_frame) {
  for (double l : lambdas)
    if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "lambdas must be positive");
  if (e0_components[0] == 0.0)
    throw Error(ErrorCode::InvalidArgument, "E0 must have a nonzero u(1) component");
  Matrix u = Matrix::Identity(3, 3);
  if (!su2_frame.empty()) {
    if (su2_frame.size() != 3) throw Error(ErrorCode::DimensionMismatch, "su(2) frame needs 3 vectors");
    for (int i = 0; i < 3; ++i) {
      if (su2_frame[static_cast<size_t>(i)].size() != 3)
        throw Error(ErrorCode::DimensionMismatch, "su(2) frame vectors have 3 coordinates");
      u.col(i) = su2_frame[static_cast<size_t>(i)];
    }
    if ((u.transpose() * u - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() > 1e-10)
      throw Error(ErrorCode::NonOrthonormalFrame, "su(2) frame is not g0-orthonormal");
  }
  // Columns of p are the declared g_l-orthonormal basis in g0 coordinates.
  Matrix p = Matrix::Zero(4, 4);
  p(0, 0) = e0_components[0];
  for (int i = 0; i < 3; ++i) {
    p.block(1, 0, 3, 1) += e0_components[static_cast<size_t>(i) + 1] * u.col(i);
    p.block(1, i + 1, 3, 1) = u.col(i) / lambdas[static_cast<size_t>(i)];
  }
  const Matrix pinv = p.inverse();
  Matrix phi = pinv.transpose() * pinv;
  phi = 0.5 * (phi + phi.transpose());
  return LeftInvariantMetric(make_u1_su2(), phi);
}

std::vector<Vector> orthonormal_frame(const LeftInvariantMetric& metric) {
  const auto& e = metric.eigen();
  std::vector<Vector> frame;
  frame.reserve(e.eigenvectors.size());
  for (size_t i = 0; i < e.eigenvectors.size(); ++i)
    frame.push_back(e.eigenvectors[i] / std::sqrt(e.eigenvalues[i]));
  return frame;
}

StructureTensor structure_constants_l(const LeftInvariantMetric& metric) {
  return structure_constants_l(metric, orthonormal_frame(metric));
}

StructureTensor structure_constants_l(const LeftInvariantMetric& metric, const std::vector<Vector>& frame) {
  const int n = metric.dim();
  if (static_cast<int>(frame.size()) != n) throw Error(ErrorCode::DimensionMismatch, "frame size");
  const auto& alg = metric.algebra();
  StructureTensor alpha(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const Vector b = metric.phi() * alg.bracket(frame[static_cast<size_t>(i)], frame[static_cast<size_t>(j)]);
      for (int k = 0; k < n; ++k) {
        const double v = b.dot(frame[static_cast<size_t>(k)]);
        alpha(i, j, k) = v;
        alpha(j, i, k) = -v;
      }
    }
  return alpha;
}

RestrictedEigenData restricted_eigen(const LeftInvariantMetric& metric) {
  if (metric.algebra().kind() != AlgebraKind::U1Su2)
    throw Error(ErrorCode::WrongAlgebra, "restricted eigenvalues need u(1)+su(2)");
  const Matrix block = metric.phi().block(1, 1, 3, 3);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(block);
  Matrix u = solver.eigenvectors();
  orient(u);

  RestrictedEigenData out;
  for (int i = 0; i < 3; ++i) {
    out.lambdas[static_cast<size_t>(i)] = std::sqrt(solver.eigenvalues()[i]);
    Vector v = Vector::Zero(4);
    v.tail(3) = u.col(i);
    out.su2_frame[static_cast<size_t>(i)] = v;
  }

  // phi E0 must be proportional to e0 for E0 to be g_l-orthogonal to su(2).
  Vector e0 = metric.phi_inverse().col(0);
  e0 /= metric.norm(e0);
  if (e0[0] < 0.0) e0 = -e0;
  if (!(e0[0] > 0.0)) throw Error(ErrorCode::NotPositiveDefinite, "E0 lies inside su(2)");
  out.e0 = e0;
  out.e0_components[0] = e0[0];
  for (int i = 0; i < 3; ++i) out.e0_components[static_cast<size_t>(i) + 1] = e0.tail(3).dot(u.col(i));
  return out;
}

namespace {

std::array<double, 3> read_lambdas(const nlohmann::json& doc) {
  const auto v = doc.at("lambdas").get<std::vector<double>>();
  if (v.size() != 3) throw Error(ErrorCode::ParseError, "lambdas must have 3 entries");
  return {v[0], v[1], v[2]};
}

}  // namespace

LeftInvariantMetric metric_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "metric document must be an object");
    const LieAlgebra alg = algebra_from_json(doc.at("algebra"));
    if (doc.contains("phi")) {
      const auto rows = doc.at("phi").get<std::vector<std::vector<double>>>();
      Matrix phi(static_cast<Eigen::Index>(rows.size()), alg.dim());
      for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<int>(rows[i].size()) != alg.dim())
          throw Error(ErrorCode::DimensionMismatch, "phi rows must match the algebra dimension");
        for (int j = 0; j < alg.dim(); ++j) phi(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<size_t>(j)];
      }
      return LeftInvariantMetric(alg, phi);
    }
    if (!doc.contains("lambdas")) throw Error(ErrorCode::ParseError, "metric needs 'phi' or 'lambdas'");
    const auto lambdas = read_lambdas(doc);
    if (alg.kind() == AlgebraKind::So3) {
      if (doc.contains("E0")) throw Error(ErrorCode::ParseError, "'E0' only applies to u1su2");
      return so3_metric_from_lambdas(lambdas);
    }
    if (alg.kind() == AlgebraKind::U1Su2) {
      std::array<double, 4> e0{1.0, 0.0, 0.0, 0.0};
      if (doc.contains("E0")) {
        const auto v = doc.at("E0").get<std::vector<double>>();
        if (v.size() != 4) throw Error(ErrorCode::ParseError, "E0 must have 4 entries");
        e0 = {v[0], v[1], v[2], v[3]};
      }
      return u2_metric_from_restricted(lambdas, e0);
    }
    throw Error(ErrorCode::WrongAlgebra, "the lambdas form needs algebra so3 or u1su2");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

nlohmann::json metric_to_json(const LeftInvariantMetric& metric) {
  const int n = metric.dim();
  nlohmann::json phi = nlohmann::json::array();
  for (int i = 0; i < n; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < n; ++j) row.push_back(metric.phi()(i, j));
    phi.push_back(row);
  }
  return {{"algebra", algebra_to_json(metric.algebra())},
          {"phi", phi},
          {"eigenvalues", metric.eigen().eigenvalues},
          {"lambdas", metric.eigen().lambdas()}};
}

}  // namespace licurv
