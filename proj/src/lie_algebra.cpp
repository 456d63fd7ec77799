#include "licurv/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "licurv/errors.hpp"

namespace licurv {

const char* algebra_kind_name(AlgebraKind kind) noexcept {
  switch (kind) {
    case AlgebraKind::So3: return "so3";
    case AlgebraKind::U1Su2: return "u1su2";
    case AlgebraKind::Custom: return "custom";
  }
  return "custom";
}

LieAlgebra::LieAlgebra(int dim, std::vector<double> structure, std::vector<std::string> labels,
                       AlgebraKind kind, double tolerance)
    : dim_(dim), structure_(std::move(structure)), labels_(std::move(labels)), kind_(kind) {
  if (dim_ <= 0) throw Error(ErrorCode::InvalidAlgebra, "dimension must be positive");
  const auto n = static_cast<size_t>(dim_);
  if (structure_.size() != n * n * n)
    throw Error(ErrorCode::InvalidAlgebra, "structure tensor must have dim^3 entries");
  if (!labels_.empty() && labels_.size() != n)
    throw Error(ErrorCode::InvalidAlgebra, "label count does not match dimension");
  for (double v : structure_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidAlgebra, "non-finite structure constant");

  if (antisymmetry_residual() != 0.0)
    throw Error(ErrorCode::InvalidAlgebra, "structure constants are not antisymmetric");

  ad_.reserve(n);
  for (int i = 0; i < dim_; ++i) {
    Matrix m(dim_, dim_);
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) m(k, j) = c(i, j, k);
    ad_.push_back(std::move(m));
  }

  if (jacobi_residual() > tolerance)
    throw Error(ErrorCode::InvalidAlgebra, "Jacobi identity fails");
  if (ad_invariance_residual() > tolerance)
    throw Error(ErrorCode::InvalidAlgebra, "basis inner product is not ad-invariant");
}

Vector LieAlgebra::basis(int i) const {
  if (i < 0 || i >= dim_) throw Error(ErrorCode::IndexOutOfRange, "basis index");
  return Vector::Unit(dim_, i);
}

Matrix LieAlgebra::ad(const Vector& x) const {
  require_dim(*this, x);
  Matrix m = Matrix::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0) m += x[i] * ad_[static_cast<size_t>(i)];
  return m;
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  require_dim(*this, x);
  require_dim(*this, y);
  Vector out = Vector::Zero(dim_);
  for (int i = 0; i < dim_; ++i)
    if (x[i] != 0.0) out.noalias() += x[i] * (ad_[static_cast<size_t>(i)] * y);
  return out;
}

double LieAlgebra::antisymmetry_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(j, i, k)));
  return worst;
}

double LieAlgebra::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        for (int m = 0; m < dim_; ++m) {
          double s = 0.0;
          for (int l = 0; l < dim_; ++l)
            s += c(i, j, l) * c(l, k, m) + c(j, k, l) * c(l, i, m) + c(k, i, l) * c(l, j, m);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

double LieAlgebra::ad_invariance_residual() const {
  // <[u_i,u_j],u_k> + <u_j,[u_i,u_k]> = c[i][j][k] + c[i][k][j]
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) worst = std::max(worst, std::abs(c(i, j, k) + c(i, k, j)));
  return worst;
}

namespace {

void set_bracket(std::vector<double>& s, int n, int i, int j, int k, double v) {
  s[(static_cast<size_t>(i) * n + j) * n + k] = v;
  s[(static_cast<size_t>(j) * n + i) * n + k] = -v;
}

}  // namespace

LieAlgebra make_so3() {
  std::vector<double> s(27, 0.0);
  set_bracket(s, 3, 0, 1, 2, 1.0);
  set_bracket(s, 3, 1, 2, 0, 1.0);
  set_bracket(s, 3, 2, 0, 1, 1.0);
  return LieAlgebra(3, std::move(s), {"u1", "u2", "u3"}, AlgebraKind::So3);
}

LieAlgebra make_u1_su2() {
  std::vector<double> s(64, 0.0);
  set_bracket(s, 4, 1, 2, 3, 1.0);
  set_bracket(s, 4, 2, 3, 1, 1.0);
  set_bracket(s, 4, 3, 1, 2, 1.0);
  return LieAlgebra(4, std::move(s), {"e0", "u1", "u2", "u3"}, AlgebraKind::U1Su2);
}

LieAlgebra algebra_from_json(const nlohmann::json& doc) {
  try {
    if (doc.is_string()) {
      const auto name = doc.get<std::string>();
      if (name == "so3") return make_so3();
      if (name == "u1su2") return make_u1_su2();
      throw Error(ErrorCode::InvalidAlgebra, "unknown algebra name '" + name + "'");
    }
    if (!doc.is_object()) throw Error(ErrorCode::ParseError, "algebra must be a name or an object");
    const int dim = doc.at("dim").get<int>();
    if (dim <= 0) throw Error(ErrorCode::InvalidAlgebra, "dimension must be positive");
    const auto n = static_cast<size_t>(dim);
    std::vector<double> s(n * n * n, 0.0);
    for (const auto& entry : doc.at("structure")) {
      if (!entry.is_array() || entry.size() != 4)
        throw Error(ErrorCode::ParseError, "structure entries must be [i,j,k,value]");
      const int i = entry[0].get<int>();
      const int j = entry[1].get<int>();
      const int k = entry[2].get<int>();
      const double v = entry[3].get<double>();
      if (i < 0 || j < 0 || k < 0 || i >= dim || j >= dim || k >= dim)
        throw Error(ErrorCode::InvalidAlgebra, "structure index out of range");
      if (i >= j) throw Error(ErrorCode::InvalidAlgebra, "structure entries must have i < j");
      set_bracket(s, dim, i, j, k, v);
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) labels = doc.at("labels").get<std::vector<std::string>>();
    return LieAlgebra(dim, std::move(s), std::move(labels));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

nlohmann::json algebra_to_json(const LieAlgebra& alg) {
  if (alg.kind() != AlgebraKind::Custom) return algebra_kind_name(alg.kind());
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      for (int k = 0; k < alg.dim(); ++k)
        if (alg.c(i, j, k) != 0.0) entries.push_back({i, j, k, alg.c(i, j, k)});
  nlohmann::json doc = {{"dim", alg.dim()}, {"structure", entries}};
  if (!alg.labels().empty()) doc["labels"] = alg.labels();
  return doc;
}

std::vector<Vector> orthonormal_span(const std::vector<Vector>& vectors, double tolerance) {
  std::vector<Vector> basis;
  if (vectors.empty()) return basis;
  const auto n = vectors.front().size();
  Matrix m(n, static_cast<Eigen::Index>(vectors.size()));
  for (size_t i = 0; i < vectors.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = vectors[i];
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double scale = std::max(1.0, sv.size() > 0 ? sv[0] : 0.0);
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tolerance * scale) basis.push_back(svd.matrixU().col(i));
  return basis;
}

std::vector<Vector> commutator_ideal(const LieAlgebra& alg, double tolerance) {
  std::vector<Vector> brackets;
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j) brackets.push_back(alg.ad_basis(i).col(j));
  return orthonormal_span(brackets, tolerance);
}

void require_dim(const LieAlgebra& alg, const Vector& x) {
  if (x.size() != alg.dim())
    throw Error(ErrorCode::DimensionMismatch, "vector of length " + std::to_string(x.size()) +
                                                  " in algebra of dimension " + std::to_string(alg.dim()));
}

}  // namespace licurv
