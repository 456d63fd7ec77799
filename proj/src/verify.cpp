#include "licurv/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include <nlohmann/json.hpp>

#include "licurv/errors.hpp"

namespace licurv {

namespace {

// Results are written by index, so the outcome does not depend on the thread count.
template <typename F>
void parallel_for(size_t n, F&& body) {
  const size_t workers = std::min<size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (size_t i = w; i < n; i += workers) body(i);
    });
  for (auto& t : pool) t.join();
}

std::vector<double> as_list(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

// Orthonormal basis of the complement of the unit vector a.
Matrix complement_basis(const Vector& a) {
  const auto n = a.size();
  const Matrix column = a;
  Eigen::HouseholderQR<Matrix> qr(column);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  return q.rightCols(n - 1);
}

struct Plane {
  Vector a;
  Vector b;
  double kappa;
};

// Alternating eigen-minimization: with one vector fixed, the best partner is the extreme
// eigenvector of the Jacobi form on its orthogonal complement.
Plane polish(const FrameCurvature& fc, Plane p, double sign) {
  for (int iter = 0; iter < 60; ++iter) {
    const double before = p.kappa;
    for (int side = 0; side < 2; ++side) {
      const Vector& fixed = side == 0 ? p.a : p.b;
      const Matrix q = complement_basis(fixed);
      const Matrix form = sign * (q.transpose() * fc.jacobi_form(fixed) * q);
      Eigen::SelfAdjointEigenSolver<Matrix> solver(form);
      const Vector best = (q * solver.eigenvectors().col(0)).normalized();
      const double value = sign * solver.eigenvalues()[0];
      if (sign * value < sign * p.kappa) {
        (side == 0 ? p.b : p.a) = best;
        p.kappa = value;
      }
    }
    if (std::abs(before - p.kappa) <= 1e-15 * std::max(1.0, std::abs(p.kappa))) break;
  }
  return p;
}

}  // namespace

SampleReport min_sectional_sampled(const LeftInvariantMetric& metric, int n, std::uint64_t seed) {
  return min_sectional_sampled(FrameCurvature(metric), n, seed);
}

SampleReport min_sectional_sampled(const FrameCurvature& fc, int n, std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  const int dim = fc.dim();
  if (dim < 2) throw Error(ErrorCode::DegeneratePlane, "algebra has no 2-planes");
  constexpr size_t kPolished = 4;

  Rng rng(seed);
  std::vector<Plane> lowest, highest;
  auto keep = [](std::vector<Plane>& best, const Plane& p, double sign) {
    if (best.size() < kPolished) {
      best.push_back(p);
    } else {
      auto worst = std::max_element(best.begin(), best.end(),
                                    [sign](const Plane& x, const Plane& y) { return sign * x.kappa < sign * y.kappa; });
      if (sign * p.kappa < sign * worst->kappa) *worst = p;
    }
  };
  for (int s = 0; s < n; ++s) {
    Vector a, b;
    while (true) {
      a = random_gaussian(dim, rng);
      b = random_gaussian(dim, rng);
      const double aa = a.squaredNorm(), bb = b.squaredNorm(), ab = a.dot(b);
      if (aa * bb - ab * ab < 1e-10 * aa * bb) continue;
      a /= std::sqrt(aa);
      b -= a.dot(b) * a;
      b.normalize();
      break;
    }
    const Plane p{a, b, fc.tensor(a, b, b, a)};
    keep(lowest, p, 1.0);
    keep(highest, p, -1.0);
  }
  Plane best_min = lowest.front(), best_max = highest.front();
  for (const auto& p : lowest) {
    const Plane q = polish(fc, p, 1.0);
    if (q.kappa < best_min.kappa) best_min = q;
  }
  for (const auto& p : highest) {
    const Plane q = polish(fc, p, -1.0);
    if (q.kappa > best_max.kappa) best_max = q;
  }

  SampleReport report;
  report.n_samples = n;
  report.seed = seed;
  report.min_sectional = best_min.kappa;
  report.max_sectional = best_max.kappa;
  report.witness_plane = {fc.to_algebra(best_min.a), fc.to_algebra(best_min.b)};
  report.min_operator_eigenvalue = symmetric_spectrum(curvature_operator(fc)).front();
  return report;
}

CurvatureReport curvature_report(const LeftInvariantMetric& metric, int samples, std::uint64_t seed) {
  const FrameCurvature fc(metric);
  CurvatureReport r;
  r.scalar = scalar(metric);
  r.ricci_spectrum = ricci_spectrum(metric);
  r.operator_spectrum = symmetric_spectrum(curvature_operator(fc));
  const SampleReport s = min_sectional_sampled(fc, samples, seed);
  r.sampled_min_sectional = s.min_sectional;
  r.sampled_max_sectional = s.max_sectional;
  r.witness_plane = s.witness_plane;
  r.n_samples = samples;
  r.seed = seed;
  return r;
}

void ScanGrid::validate() const {
  for (double v : {l1_min, l1_step, l2_min, l2_step})
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "scan ranges need min > 0 and step > 0");
  if (!(l1_max >= l1_min) || !(l2_max >= l2_min) || !std::isfinite(l1_max) || !std::isfinite(l2_max))
    throw Error(ErrorCode::InvalidArgument, "scan ranges need max >= min");
  if (!(eps >= 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be nonnegative");
}

namespace {

std::vector<double> axis(double lo, double hi, double step) {
  const auto count = static_cast<size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> v(count);
  for (size_t i = 0; i < count; ++i) v[i] = lo + static_cast<double>(i) * step;
  return v;
}

}  // namespace

std::vector<double> ScanGrid::l1_values() const { return axis(l1_min, l1_max, l1_step); }
std::vector<double> ScanGrid::l2_values() const { return axis(l2_min, l2_max, l2_step); }

std::vector<ScanRow> scan_so3_region(const ScanGrid& grid) {
  grid.validate();
  const auto xs = grid.l1_values();
  const auto ys = grid.l2_values();
  std::vector<ScanRow> rows(xs.size() * ys.size());
  parallel_for(xs.size(), [&](size_t i) {
    for (size_t j = 0; j < ys.size(); ++j) {
      const auto r = so3_classify(xs[i], ys[j], 1.0, grid.eps);
      const auto& v = r.inequality_values;
      rows[i * ys.size() + j] = {xs[i], ys[j], r.status, std::min({v[0], v[1], v[2]})};
    }
  });
  return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::string out = "l1,l2,status,min_inequality_value\n";
  char line[160];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%.12g,%.12g,%s,%.17g\n", r.l1, r.l2, status_name(r.status),
                  r.min_inequality_value);
    out += line;
  }
  return out;
}

double cross_check(const LeftInvariantMetric& metric, int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1) throw Error(ErrorCode::InvalidArgument, "need at least one pair");
  const int n = metric.dim();
  if (n < 2) throw Error(ErrorCode::DegeneratePlane, "algebra has no 2-planes");
  Rng rng(seed);
  std::uniform_int_distribution<int> index(0, n - 1);
  const auto eigenframe = orthonormal_frame(metric);
  const StructureTensor alpha = structure_constants_l(metric, eigenframe);
  double worst = 0.0;
  for (int p = 0; p < n_pairs; ++p) {
    int i = index(rng), j = index(rng);
    while (j == i) j = index(rng);
    const double milnor = sectional_milnor(alpha, i, j);
    const double puttmann = sectional(metric, eigenframe[static_cast<size_t>(i)], eigenframe[static_cast<size_t>(j)]);
    worst = std::max(worst, std::abs(milnor - puttmann));

    // Random plane, completed to a g_l-orthonormal frame by Gram-Schmidt.
    const Vector x = random_gaussian(n, rng), y = random_gaussian(n, rng);
    std::vector<Vector> frame;
    std::vector<Vector> candidates{x, y};
    for (int k = 0; k < n; ++k) candidates.push_back(Vector::Unit(n, k));
    for (const auto& c : candidates) {
      if (static_cast<int>(frame.size()) == n) break;
      Vector v = c;
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& f : frame) v -= metric.inner(v, f) * f;
      const double len = metric.norm(v);
      if (len < 1e-6 * metric.norm(c)) continue;
      frame.push_back(v / len);
    }
    const StructureTensor local = structure_constants_l(metric, frame);
    worst = std::max(worst, std::abs(sectional_milnor(local, 0, 1) - sectional(metric, x, y)));
  }
  return worst;
}

CrossCheckSummary cross_check_random(const LieAlgebra& alg, int n_metrics, int n_pairs, std::uint64_t seed) {
  if (n_metrics < 1) throw Error(ErrorCode::InvalidArgument, "need at least one metric");
  std::vector<double> worst(static_cast<size_t>(n_metrics), 0.0);
  parallel_for(worst.size(), [&](size_t m) {
    Rng rng(split_seed(seed, m));
    const LeftInvariantMetric metric(alg, random_spd(alg.dim(), rng));
    worst[m] = cross_check(metric, n_pairs, rng());
  });
  return {n_metrics, n_pairs, *std::max_element(worst.begin(), worst.end())};
}

namespace {

struct PointOutcome {
  AuditPoint point;
  bool failed = false;
  bool indeterminate = false;
  bool agreed = false;
  int condition = 0;
  bool lemma_mismatch = false;
  double ricci_e0 = -std::numeric_limits<double>::infinity();
};

// Judges one classifier verdict against the sampled oracle.
void judge(PointOutcome& out, const FrameCurvature& fc, const SampleReport& oracle, double threshold) {
  const auto spectrum = symmetric_spectrum(curvature_operator(fc));
  const double scale = std::max({1.0, std::abs(spectrum.front()), std::abs(spectrum.back())});
  const bool oracle_negative = oracle.min_sectional < -1e-12 * scale;
  const bool classifier_nonneg = out.point.status != CurvatureStatus::Violated;
  out.point.oracle_min = oracle.min_sectional;
  out.agreed = classifier_nonneg != oracle_negative;
  const bool near = out.point.margin <= threshold || out.point.status == CurvatureStatus::Boundary;
  if (near) out.indeterminate = true;
  if (!out.agreed && !near) out.failed = true;
}

AuditReport collect(std::string group, int n_points, std::uint64_t seed, double margin, int samples,
                    const std::vector<PointOutcome>& outcomes) {
  constexpr size_t kListed = 100;
  AuditReport report;
  report.group = std::move(group);
  report.n_points = n_points;
  report.seed = seed;
  report.margin = margin;
  report.n_samples = samples;
  report.max_ricci_e0 = -std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes) {
    report.status_counts[static_cast<size_t>(o.point.status)]++;
    if (o.agreed) report.agreements++;
    if (o.failed) {
      report.failures++;
      if (report.failed_points.size() < kListed) report.failed_points.push_back(o.point);
    }
    if (o.indeterminate) {
      report.indeterminate_count++;
      if (report.indeterminate_points.size() < kListed) report.indeterminate_points.push_back(o.point);
    }
    if (o.condition > 0 && o.point.status != CurvatureStatus::Violated)
      report.condition_counts[static_cast<size_t>(o.condition - 1)]++;
    if (o.lemma_mismatch) report.lemma_mismatches++;
    report.max_ricci_e0 = std::max(report.max_ricci_e0, o.ricci_e0);
  }
  return report;
}

void check_audit_args(int n_points, double margin, int samples) {
  if (n_points < 1) throw Error(ErrorCode::InvalidArgument, "need at least one audit point");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidArgument, "margin must be nonnegative");
}

}  // namespace

AuditReport so3_audit(int n_points, std::uint64_t seed, double margin, int samples, double eps) {
  check_audit_args(n_points, margin, samples);
  std::vector<PointOutcome> outcomes(static_cast<size_t>(n_points));
  parallel_for(outcomes.size(), [&](size_t i) {
    Rng rng(split_seed(seed, i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double l1 = 2.0 * (1.0 - unit(rng)), l2 = 2.0 * (1.0 - unit(rng));
    const auto verdict = so3_classify(l1, l2, 1.0, eps);
    auto& o = outcomes[i];
    o.point = {{l1, l2, 1.0}, verdict.status, verdict.margin, 0.0};
    const FrameCurvature fc(so3_metric_from_lambdas({l1, l2, 1.0}));
    judge(o, fc, min_sectional_sampled(fc, samples, rng()), margin);
  });
  return collect("so3", n_points, seed, margin, samples, outcomes);
}

U2Config random_u2_config(Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> pick3(0, 2);
  auto lambda = [&] { return 0.5 + unit(rng); };
  auto component = [&] {
    const double mag = 0.05 + 0.95 * unit(rng);
    return unit(rng) < 0.5 ? -mag : mag;
  };
  auto distinct = [&](double from) {
    double v = lambda();
    while (std::abs(v - from) < 0.05) v = lambda();
    return v;
  };

  U2Config cfg;
  cfg.e0 = {0.5 + unit(rng), 0.0, 0.0, 0.0};
  // 0: product, 1: all equal, 2: pair equal with E0 along the odd axis,
  // 3: pair equal with E0 leaning into the pair, 4: generic.
  const int mode = std::uniform_int_distribution<int>(0, 4)(rng);
  if (mode == 1) {
    const double l = lambda();
    cfg.lambdas = {l, l, l};
  } else if (mode == 2 || mode == 3) {
    const double l = lambda();
    const double odd_value = distinct(l);
    const int odd = pick3(rng);
    cfg.lambdas = {l, l, l};
    cfg.lambdas[static_cast<size_t>(odd)] = odd_value;
    if (unit(rng) < 0.8) cfg.e0[static_cast<size_t>(odd) + 1] = component();
    if (mode == 3) cfg.e0[static_cast<size_t>((odd + 1 + pick3(rng) % 2) % 3) + 1] = component();
  } else {
    cfg.lambdas[0] = lambda();
    cfg.lambdas[1] = distinct(cfg.lambdas[0]);
    do {
      cfg.lambdas[2] = distinct(cfg.lambdas[0]);
    } while (std::abs(cfg.lambdas[2] - cfg.lambdas[1]) < 0.05);
    if (mode == 4) {
      for (size_t k = 1; k < 4; ++k)
        if (unit(rng) < 2.0 / 3.0) cfg.e0[k] = component();
      if (cfg.e0[1] == 0.0 && cfg.e0[2] == 0.0 && cfg.e0[3] == 0.0) cfg.e0[static_cast<size_t>(pick3(rng)) + 1] = component();
    }
  }
  if (mode == 1)
    for (size_t k = 1; k < 4; ++k)
      if (unit(rng) < 2.0 / 3.0) cfg.e0[k] = component();
  const Matrix r = random_rotation(3, rng);
  for (int i = 0; i < 3; ++i) cfg.su2_frame.push_back(r.col(i));
  return cfg;
}

AuditReport u2_audit(int n_points, std::uint64_t seed, double margin, int samples, double eps) {
  check_audit_args(n_points, margin, samples);
  std::vector<PointOutcome> outcomes(static_cast<size_t>(n_points));
  parallel_for(outcomes.size(), [&](size_t i) {
    Rng rng(split_seed(seed, i));
    const U2Config cfg = random_u2_config(rng);
    const auto metric = u2_metric_from_restricted(cfg.lambdas, cfg.e0, cfg.su2_frame);
    const auto verdict = u2_classify(metric, eps, 0);
    auto& o = outcomes[i];
    o.point = {{cfg.lambdas[0], cfg.lambdas[1], cfg.lambdas[2], cfg.e0[0], cfg.e0[1], cfg.e0[2], cfg.e0[3]},
               verdict.status, verdict.margin, 0.0};
    const auto& tag = verdict.witness->condition;
    if (tag && tag->rfind("condition", 0) == 0) o.condition = std::stoi(tag->substr(9));
    const FrameCurvature fc(metric);
    judge(o, fc, min_sectional_sampled(fc, samples, rng()), margin);

    // Parallel-field and Ricci lemmas on E0.
    const Vector e0 = restricted_eigen(metric).e0;
    const bool skew = ad_skew_adjoint(metric, e0);
    const bool parallel = is_parallel(metric, e0);
    const double r = ricci(metric, e0);
    o.ricci_e0 = r;
    const bool ricci_ok = r <= kPredicateTolerance && ((std::abs(r) < kPredicateTolerance) == skew);
    o.lemma_mismatch = parallel != is_parallel_by_skew_criterion(metric, e0) || !ricci_ok;
  });
  return collect("u2", n_points, seed, margin, samples, outcomes);
}

nlohmann::json to_json(const SampleReport& report) {
  return {{"n_samples", report.n_samples},
          {"seed", report.seed},
          {"sampled_min_sectional", report.min_sectional},
          {"sampled_max_sectional", report.max_sectional},
          {"witness_plane", {as_list(report.witness_plane.first), as_list(report.witness_plane.second)}},
          {"min_operator_eigenvalue", report.min_operator_eigenvalue}};
}

nlohmann::json to_json(const CurvatureReport& report) {
  return {{"scalar", report.scalar},
          {"ricci_spectrum", report.ricci_spectrum},
          {"operator_spectrum", report.operator_spectrum},
          {"sampled_min_sectional", report.sampled_min_sectional},
          {"sampled_max_sectional", report.sampled_max_sectional},
          {"witness_plane", {as_list(report.witness_plane.first), as_list(report.witness_plane.second)}},
          {"n_samples", report.n_samples},
          {"seed", report.seed}};
}

nlohmann::json to_json(const AuditReport& report) {
  auto points = [](const std::vector<AuditPoint>& list) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : list)
      arr.push_back({{"parameters", p.parameters},
                     {"status", status_name(p.status)},
                     {"margin", p.margin},
                     {"oracle_min", p.oracle_min}});
    return arr;
  };
  nlohmann::json doc = {{"group", report.group},
                        {"n_points", report.n_points},
                        {"seed", report.seed},
                        {"margin", report.margin},
                        {"n_samples", report.n_samples},
                        {"passed", report.passed()},
                        {"failures", report.failures},
                        {"agreements", report.agreements},
                        {"status_counts",
                         {{"StrictlyNonnegative", report.status_counts[0]},
                          {"Boundary", report.status_counts[1]},
                          {"Violated", report.status_counts[2]}}},
                        {"indeterminate_count", report.indeterminate_count},
                        {"failed_points", points(report.failed_points)},
                        {"indeterminate_points", points(report.indeterminate_points)}};
  if (report.group == "u2") {
    doc["condition_counts"] = {{"condition1", report.condition_counts[0]},
                               {"condition2", report.condition_counts[1]},
                               {"condition3", report.condition_counts[2]}};
    doc["lemma_mismatches"] = report.lemma_mismatches;
    doc["max_ricci_e0"] = report.max_ricci_e0;
  }
  return doc;
}

}  // namespace licurv
