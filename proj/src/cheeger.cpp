#include "licurv/cheeger.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "licurv/classify.hpp"
#include "licurv/errors.hpp"

namespace licurv {

namespace {

Matrix columns(const LieAlgebra& alg, const std::vector<Vector>& basis) {
  Matrix h(alg.dim(), static_cast<Eigen::Index>(basis.size()));
  for (size_t i = 0; i < basis.size(); ++i) {
    require_dim(alg, basis[i]);
    h.col(static_cast<Eigen::Index>(i)) = basis[i];
  }
  return h;
}

// Residual of v off span(h) using an orthonormal basis q of the span.
double off_span(const Matrix& q, const Vector& v) { return (v - q * (q.transpose() * v)).norm(); }

Matrix orthonormal_columns(const Matrix& h) {
  Eigen::HouseholderQR<Matrix> qr(h);
  return qr.householderQ() * Matrix::Identity(h.rows(), h.cols());
}

void require_independent(const Matrix& h) {
  if (h.cols() == 0) throw Error(ErrorCode::NotSubalgebra, "subalgebra basis is empty");
  Eigen::JacobiSVD<Matrix> svd(h);
  const auto& sv = svd.singularValues();
  if (sv[sv.size() - 1] <= 1e-10 * std::max(1.0, sv[0]))
    throw Error(ErrorCode::NotSubalgebra, "subalgebra basis is linearly dependent");
}

void require_ad_invariant(const LeftInvariantMetric& g0, const std::vector<Vector>& basis) {
  const Matrix& phi = g0.phi();
  const double scale = std::max(1.0, phi.cwiseAbs().maxCoeff());
  for (const auto& h : basis) {
    const Matrix ad = g0.algebra().ad(h);
    const double defect = (phi * ad + ad.transpose() * phi).cwiseAbs().maxCoeff();
    if (defect > 1e-9 * scale * std::max(1.0, h.norm()))
      throw Error(ErrorCode::NotAdHInvariant, "ad_h is not skew-adjoint for the starting metric");
  }
}

}  // namespace

void require_subalgebra(const LieAlgebra& alg, const std::vector<Vector>& basis, double tolerance) {
  const Matrix h = columns(alg, basis);
  require_independent(h);
  const Matrix q = orthonormal_columns(h);
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      const Vector b = alg.bracket(basis[i], basis[j]);
      if (off_span(q, b) > tolerance * std::max(1.0, basis[i].norm() * basis[j].norm()))
        throw Error(ErrorCode::NotSubalgebra, "span is not closed under the bracket");
    }
}

LeftInvariantMetric deform_general(const LeftInvariantMetric& g0, const std::vector<Vector>& h_basis,
                                   const Matrix& gH) {
  const auto& alg = g0.algebra();
  require_subalgebra(alg, h_basis);
  require_ad_invariant(g0, h_basis);
  const auto k = static_cast<Eigen::Index>(h_basis.size());
  const int n = alg.dim();
  if (gH.rows() != k || gH.cols() != k) throw Error(ErrorCode::DimensionMismatch, "gH must match the basis size");
  if (!gH.allFinite() || (gH - gH.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, gH.cwiseAbs().maxCoeff()))
    throw Error(ErrorCode::NotSPD, "gH is not symmetric");
  Eigen::LLT<Matrix> llt(0.5 * (gH + gH.transpose()));
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotSPD, "gH is not positive definite");

  // gH-orthonormal basis E = H L^{-T}.
  const Matrix h = columns(alg, h_basis);
  const Matrix lower = llt.matrixL();
  const Matrix e = lower.triangularView<Eigen::Lower>().solve(h.transpose()).transpose();
  const Matrix& phi = g0.phi();
  const Matrix a = e.transpose() * phi * e;
  const Matrix shrunk = a * (Matrix::Identity(k, k) + a).inverse();

  // g0-orthonormal basis of the g0-orthogonal complement of h.
  Matrix complement(n, n - k);
  if (n > k) {
    Eigen::FullPivLU<Matrix> lu(e.transpose() * phi);
    Matrix kernel = lu.kernel();
    Eigen::LLT<Matrix> gram(kernel.transpose() * phi * kernel);
    const Matrix gl = gram.matrixL();
    complement = gl.triangularView<Eigen::Lower>().solve(kernel.transpose()).transpose();
  }

  Matrix p(n, n);
  p << e, complement;
  Matrix target = Matrix::Identity(n, n);
  target.topLeftCorner(k, k) = 0.5 * (shrunk + shrunk.transpose());
  const Matrix pinv = p.inverse();
  Matrix phi1 = pinv.transpose() * target * pinv;
  phi1 = 0.5 * (phi1 + phi1.transpose());
  try {
    return LeftInvariantMetric(alg, phi1, 1e-10);
  } catch (const Error& err) {
    throw Error(ErrorCode::NotSPD, err.what());
  }
}

double shrink_factor(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::NotSPD, "lambda must be positive");
  return lambda / (lambda + 1.0);
}

LeftInvariantMetric uniform_shrink(const LeftInvariantMetric& g0, const std::vector<Vector>& h_basis, double lambda) {
  const auto& alg = g0.algebra();
  const double t = shrink_factor(lambda);
  require_subalgebra(alg, h_basis);
  require_ad_invariant(g0, h_basis);
  // g1 = g0 - (1-t) g0(P_h ., P_h .), P_h the g0-orthogonal projection onto h.
  const Matrix h = columns(alg, h_basis);
  const Matrix& phi = g0.phi();
  const Matrix ph = phi * h;
  const Matrix gram = h.transpose() * ph;
  Matrix phi1 = phi - (1.0 - t) * ph * gram.ldlt().solve(ph.transpose());
  phi1 = 0.5 * (phi1 + phi1.transpose());
  return LeftInvariantMetric(alg, phi1, 1e-10);
}

void CheegerChain::validate(const LieAlgebra& alg) const {
  Eigen::Index previous_dim = 0;
  Matrix previous_q;
  for (size_t s = 0; s < stages_.size(); ++s) {
    const auto& stage = stages_[s];
    if (!(stage.lambda > 0.0) || !std::isfinite(stage.lambda))
      throw Error(ErrorCode::InvalidChain, "stage lambdas must be positive");
    require_subalgebra(alg, stage.basis);
    const Matrix q = orthonormal_columns(columns(alg, stage.basis));
    if (q.cols() <= previous_dim) throw Error(ErrorCode::InvalidChain, "stage dimensions must strictly increase");
    if (q.cols() > alg.dim()) throw Error(ErrorCode::InvalidChain, "stage larger than the algebra");
    for (Eigen::Index c = 0; c < previous_q.cols(); ++c)
      if (off_span(q, previous_q.col(c)) > kSubalgebraTolerance)
        throw Error(ErrorCode::InvalidChain, "each stage must contain the previous one");
    previous_q = q;
    previous_dim = q.cols();
  }
}

LeftInvariantMetric chain_deform(const LeftInvariantMetric& g0, const CheegerChain& chain) {
  const auto& alg = g0.algebra();
  chain.validate(alg);
  std::vector<Vector> all;
  for (int i = 0; i < alg.dim(); ++i) all.push_back(alg.basis(i));
  require_ad_invariant(g0, all);
  LeftInvariantMetric current = g0;
  for (auto it = chain.stages().rbegin(); it != chain.stages().rend(); ++it)
    current = uniform_shrink(current, it->basis, it->lambda);
  return current;
}

std::vector<double> chain_levels(const std::vector<double>& lambdas) {
  std::vector<double> levels(lambdas.size());
  double product = 1.0;
  for (size_t i = lambdas.size(); i-- > 0;) {
    product *= shrink_factor(lambdas[i]);
    levels[i] = product;
  }
  return levels;
}

std::vector<double> lambdas_for_levels(const std::vector<double>& levels) {
  std::vector<double> lambdas(levels.size());
  for (size_t i = 0; i < levels.size(); ++i) {
    const double next = i + 1 < levels.size() ? levels[i + 1] : 1.0;
    if (!(levels[i] > 0.0) || !(levels[i] < next))
      throw Error(ErrorCode::InvalidChain, "levels must be strictly increasing in (0,1)");
    const double s = levels[i] / next;
    lambdas[i] = s / (1.0 - s);
  }
  return lambdas;
}

std::array<double, 3> so3_cheeger_eigenvalues(const std::array<double, 3>& gR_eigenvalues) {
  std::array<double, 3> out{};
  for (size_t i = 0; i < 3; ++i) {
    const double l = gR_eigenvalues[i];
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::NonPositiveLambda, "eigenvalues must be positive");
    out[i] = l / (1.0 + l);
  }
  return out;
}

bool eigenvalues_strictly_nonnegative(const std::array<double, 3>& eigenvalues) {
  return so3_classify(std::sqrt(eigenvalues[0]), std::sqrt(eigenvalues[1]), std::sqrt(eigenvalues[2])).status ==
         CurvatureStatus::StrictlyNonnegative;
}

Realization realize_positive_metric(double target1, double target2, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw Error(ErrorCode::NonPositiveLambda, "a must be positive");
  if (!(target1 > 0.0) || !(target2 > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "targets must be positive");
  if (!eigenvalues_strictly_nonnegative({target1, target2, 1.0}))
    throw Error(ErrorCode::TargetNotStrict, "target is not strictly inside the nonnegative region");
  auto pull_back = [a](double t) {
    const double denom = 1.0 + a * (1.0 - t);
    if (!(denom > 0.0)) throw Error(ErrorCode::NonPositiveLambda, "a is too large for this target");
    return a * t / denom;
  };
  Realization r;
  r.gR_eigenvalues = {pull_back(target1), pull_back(target2), a};
  r.gR_strict = eigenvalues_strictly_nonnegative(r.gR_eigenvalues);
  return r;
}

std::vector<std::pair<Vector, Vector>> horizontal_space(const std::array<double, 3>& gR_eigenvalues) {
  std::vector<std::pair<Vector, Vector>> pairs;
  for (int i = 0; i < 3; ++i) {
    const double l = gR_eigenvalues[static_cast<size_t>(i)];
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::NonPositiveLambda, "eigenvalues must be positive");
    pairs.emplace_back(l * Vector::Unit(3, i), -Vector::Unit(3, i));
  }
  return pairs;
}

std::pair<LeftInvariantMetric, CheegerChain> chain_from_json(const nlohmann::json& doc) {
  try {
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "chain document must be an object");
    const LieAlgebra alg = algebra_from_json(doc.at("algebra"));
    Matrix phi = Matrix::Identity(alg.dim(), alg.dim());
    if (doc.contains("phi")) {
      nlohmann::json metric_doc = {{"algebra", doc.at("algebra")}, {"phi", doc.at("phi")}};
      phi = metric_from_json(metric_doc).phi();
    }
    std::vector<ChainStage> stages;
    for (const auto& s : doc.at("chain")) {
      ChainStage stage;
      for (const auto& v : s.at("basis")) {
        const auto coords = v.get<std::vector<double>>();
        if (static_cast<int>(coords.size()) != alg.dim())
          throw Error(ErrorCode::DimensionMismatch, "basis vectors must match the algebra dimension");
        stage.basis.push_back(Eigen::Map<const Vector>(coords.data(), alg.dim()));
      }
      stage.lambda = s.at("lambda").get<double>();
      stages.push_back(std::move(stage));
    }
    return {LeftInvariantMetric(alg, phi), CheegerChain(std::move(stages))};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace licurv
