#include "licurv/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "licurv/errors.hpp"
#include "licurv/verify.hpp"

namespace licurv {

const char* status_name(CurvatureStatus status) noexcept {
  switch (status) {
    case CurvatureStatus::StrictlyNonnegative: return "StrictlyNonnegative";
    case CurvatureStatus::Boundary: return "Boundary";
    case CurvatureStatus::Violated: return "Violated";
  }
  return "Violated";
}

namespace {

// Positive multiple of the curvature of the eigenplane (i,j); xk is the third normalized
// eigenvalue. Written so that swapping xi and xj is bit-exact.
double plane_inequality(double xi, double xj, double xk) {
  const double lo = std::min(xi, xj), hi = std::max(xi, xj);
  const double d = hi - lo;
  return 2.0 * xk * (lo + hi - xk) - (xk + d) * (xk - d);
}

constexpr std::array<std::array<int, 3>, 3> kPlanes{{{0, 1, 2}, {1, 2, 0}, {0, 2, 1}}};

CurvatureStatus status_for(double value, double eps) {
  if (value > eps) return CurvatureStatus::StrictlyNonnegative;
  if (value >= -eps) return CurvatureStatus::Boundary;
  return CurvatureStatus::Violated;
}

}  // namespace

std::array<double, 3> so3_inequalities(double l1, double l2, double l3) {
  for (double l : {l1, l2, l3})
    if (!(l > 0.0) || !std::isfinite(l)) throw Error(ErrorCode::NonPositiveLambda, "lambdas must be positive");
  const double m = std::max({l1, l2, l3});
  const std::array<double, 3> x{(l1 / m) * (l1 / m), (l2 / m) * (l2 / m), (l3 / m) * (l3 / m)};
  std::array<double, 3> out{};
  for (size_t p = 0; p < 3; ++p) {
    const auto [i, j, k] = kPlanes[p];
    out[p] = plane_inequality(x[static_cast<size_t>(i)], x[static_cast<size_t>(j)], x[static_cast<size_t>(k)]);
  }
  return out;
}

ClassificationResult so3_classify(double l1, double l2, double l3, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be nonnegative");
  ClassificationResult result;
  result.inequality_values = so3_inequalities(l1, l2, l3);
  const auto& v = result.inequality_values;
  const auto worst = static_cast<size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  result.status = status_for(v[worst], eps);
  result.margin = std::min({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
  if (result.status != CurvatureStatus::StrictlyNonnegative) {
    Witness w;
    w.inequality = static_cast<int>(worst) + 1;
    const auto [i, j, k] = kPlanes[worst];
    w.plane = std::make_pair(Vector(Vector::Unit(3, i)), Vector(Vector::Unit(3, j)));
    const std::array<double, 3> l{l1, l2, l3};
    const double m = std::max({l1, l2, l3});
    const double prod = l[static_cast<size_t>(i)] * l[static_cast<size_t>(j)] * l[static_cast<size_t>(k)] / (m * m * m);
    // Sectional curvature of span(u_i,u_j) for the unnormalized metric.
    w.plane_curvature = v[worst] / (4.0 * prod * prod) / (m * m);
    result.witness = w;
  }
  return result;
}

double u2_skew_defect(const RestrictedEigenData& data) {
  const auto& l = data.lambdas;
  const auto& c = data.e0_components;
  const double d12 = c[3] * (l[1] / l[0] - l[0] / l[1]);
  const double d23 = c[1] * (l[2] / l[1] - l[1] / l[2]);
  const double d13 = c[2] * (l[0] / l[2] - l[2] / l[0]);
  const double m = std::max({l[0], l[1], l[2]});
  return m * m * (d12 * d12 + d23 * d23 + d13 * d13);
}

ClassificationResult u2_classify(const LeftInvariantMetric& metric, double eps, int witness_samples) {
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be nonnegative");
  const RestrictedEigenData data = restricted_eigen(metric);
  const auto& l = data.lambdas;
  ClassificationResult so3 = so3_classify(l[0], l[1], l[2], eps);

  const double m = std::max({l[0], l[1], l[2]});
  auto gap = [&](int i, int j) { return std::abs(l[static_cast<size_t>(i)] - l[static_cast<size_t>(j)]) / m; };
  std::array<double, 3> w{};
  for (size_t k = 0; k < 3; ++k) w[k] = std::abs(data.e0_components[k + 1]) * l[k];

  const double r1 = std::max({w[0], w[1], w[2]});
  const double r2 = std::max({gap(0, 1), gap(1, 2), gap(0, 2)});
  double r3 = std::numeric_limits<double>::infinity();
  for (const auto& [i, j] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{0, 2}})
    r3 = std::min(r3, std::max(gap(i, j), std::hypot(w[static_cast<size_t>(i)], w[static_cast<size_t>(j)])));

  const std::array<double, 3> residuals{r1, r2, r3};
  int matched = 0;
  for (int c = 0; c < 3; ++c)
    if (residuals[static_cast<size_t>(c)] <= eps) {
      matched = c + 1;
      break;
    }

  ClassificationResult result;
  result.inequality_values = so3.inequality_values;
  result.margin = so3.margin;
  Witness w_out;
  if (matched == 0) {
    result.status = CurvatureStatus::Violated;
    w_out.condition = "no_condition";
    result.margin = std::min(so3.margin, u2_skew_defect(data));
  } else if (so3.status == CurvatureStatus::Violated) {
    result.status = CurvatureStatus::Violated;
    w_out.condition = "so3_inequality";
    w_out.inequality = so3.witness->inequality;
  } else {
    const double floor = std::min(kStructuralTolerance, eps);
    const bool marginal = residuals[static_cast<size_t>(matched - 1)] > floor;
    result.status = (so3.status == CurvatureStatus::Boundary || marginal) ? CurvatureStatus::Boundary
                                                                           : CurvatureStatus::StrictlyNonnegative;
    w_out.condition = "condition" + std::to_string(matched);
    if (so3.status == CurvatureStatus::Boundary) w_out.inequality = so3.witness->inequality;
  }
  if (result.status == CurvatureStatus::Violated && witness_samples > 0) {
    const SampleReport sample = min_sectional_sampled(metric, witness_samples, 0);
    if (sample.min_sectional < 0.0) {
      w_out.plane = sample.witness_plane;
      w_out.plane_curvature = sample.min_sectional;
    }
  }
  result.witness = w_out;
  return result;
}

ClassificationResult classify_metric(const LeftInvariantMetric& metric, double eps, int witness_samples) {
  switch (metric.algebra().kind()) {
    case AlgebraKind::So3: {
      const auto l = metric.eigen().lambdas();
      auto result = so3_classify(l[0], l[1], l[2], eps);
      if (result.witness && result.witness->plane) {
        // Map the coordinate plane back through the eigenframe.
        const auto& vecs = metric.eigen().eigenvectors;
        const auto& [a, b] = *result.witness->plane;
        Vector x = Vector::Zero(3), y = Vector::Zero(3);
        for (int i = 0; i < 3; ++i) {
          x += a[i] * vecs[static_cast<size_t>(i)];
          y += b[i] * vecs[static_cast<size_t>(i)];
        }
        result.witness->plane = std::make_pair(x, y);
      }
      return result;
    }
    case AlgebraKind::U1Su2: return u2_classify(metric, eps, witness_samples);
    case AlgebraKind::Custom: break;
  }
  throw Error(ErrorCode::WrongAlgebra, "closed-form classification exists only for so3 and u1su2");
}

std::array<double, 3> so3_isometry_class(const LeftInvariantMetric& metric) {
  if (metric.algebra().kind() != AlgebraKind::So3) throw Error(ErrorCode::WrongAlgebra, "expected so3");
  const auto& v = metric.eigen().eigenvalues;
  return {v[0], v[1], v[2]};
}

bool are_isometric(const LeftInvariantMetric& a, const LeftInvariantMetric& b, double eps) {
  const auto ca = so3_isometry_class(a), cb = so3_isometry_class(b);
  for (size_t i = 0; i < 3; ++i)
    if (std::abs(ca[i] - cb[i]) > eps * std::max({1.0, std::abs(ca[i]), std::abs(cb[i])})) return false;
  return true;
}

std::array<double, 3> u2_local_isometry_class(const LeftInvariantMetric& metric, double eps) {
  if (metric.algebra().kind() != AlgebraKind::U1Su2) throw Error(ErrorCode::WrongAlgebra, "expected u1su2");
  if (u2_classify(metric, eps, 0).status == CurvatureStatus::Violated)
    throw Error(ErrorCode::NotNonnegative, "metric does not have nonnegative curvature");
  return restricted_eigen(metric).lambdas;
}

nlohmann::json to_json(const ClassificationResult& result) {
  nlohmann::json doc = {{"status", status_name(result.status)},
                        {"inequality_values", result.inequality_values},
                        {"margin", result.margin}};
  if (!result.witness) {
    doc["witness"] = nullptr;
    return doc;
  }
  nlohmann::json w = nlohmann::json::object();
  const auto& wit = *result.witness;
  if (wit.inequality) w["inequality"] = *wit.inequality;
  if (wit.condition) w["condition"] = *wit.condition;
  if (wit.plane) {
    auto as_list = [](const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
    w["plane"] = {as_list(wit.plane->first), as_list(wit.plane->second)};
  }
  if (wit.plane_curvature) w["plane_curvature"] = *wit.plane_curvature;
  doc["witness"] = w;
  return doc;
}

}  // namespace licurv
