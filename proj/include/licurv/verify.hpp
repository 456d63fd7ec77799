#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "licurv/classify.hpp"
#include "licurv/curvature.hpp"
#include "licurv/random.hpp"

namespace licurv {

struct SampleReport {
  int n_samples = 0;
  std::uint64_t seed = 0;
  double min_sectional = 0.0;
  double max_sectional = 0.0;
  std::pair<Vector, Vector> witness_plane;
  double min_operator_eigenvalue = 0.0;
};

/// Brute-force curvature oracle. Draws n random planes (Gaussian pairs, Gram-Schmidt in
/// g_l) and then polishes the best few by alternating minimization, so near-zero negative
/// curvature is resolved. Deterministic given the seed.
SampleReport min_sectional_sampled(const LeftInvariantMetric& metric, int n, std::uint64_t seed);
SampleReport min_sectional_sampled(const FrameCurvature& curvature, int n, std::uint64_t seed);

struct CurvatureReport {
  double scalar = 0.0;
  std::vector<double> ricci_spectrum;
  std::vector<double> operator_spectrum;
  double sampled_min_sectional = 0.0;
  double sampled_max_sectional = 0.0;
  std::pair<Vector, Vector> witness_plane;
  int n_samples = 0;
  std::uint64_t seed = 0;
};

CurvatureReport curvature_report(const LeftInvariantMetric& metric, int samples, std::uint64_t seed);

struct ScanGrid {
  double l1_min = 0.01, l1_max = 2.0, l1_step = 0.01;
  double l2_min = 0.01, l2_max = 2.0, l2_step = 0.01;
  double eps = kDefaultClassifyEps;

  void validate() const;
  std::vector<double> l1_values() const;
  std::vector<double> l2_values() const;
};

struct ScanRow {
  double l1;
  double l2;
  CurvatureStatus status;
  double min_inequality_value;
};

/// One row per (l1, l2) grid point with l3 = 1, l1 varying slowest.
std::vector<ScanRow> scan_so3_region(const ScanGrid& grid);
std::string scan_to_csv(const std::vector<ScanRow>& rows);

/// Max |Milnor - Puttmann| over random eigenframe index pairs and random planes
/// (each completed to a g_l-orthonormal frame).
double cross_check(const LeftInvariantMetric& metric, int n_pairs, std::uint64_t seed);

struct CrossCheckSummary {
  int n_metrics = 0;
  int n_pairs = 0;
  double max_discrepancy = 0.0;
};

/// cross_check over random SPD metrics on the given algebra.
CrossCheckSummary cross_check_random(const LieAlgebra& alg, int n_metrics, int n_pairs, std::uint64_t seed);

struct AuditPoint {
  std::vector<double> parameters;
  CurvatureStatus status;
  double margin;
  double oracle_min;
};

struct AuditReport {
  std::string group;
  int n_points = 0;
  std::uint64_t seed = 0;
  double margin = 0.0;
  int n_samples = 0;
  int failures = 0;
  int agreements = 0;
  std::array<int, 3> status_counts{};
  /// Non-Violated verdicts per matched U(2) condition.
  std::array<int, 3> condition_counts{};
  /// Points with is_parallel(E0) disagreeing with the skew criterion, or Ricci(E0)
  /// contradicting the skew-adjointness test.
  int lemma_mismatches = 0;
  double max_ricci_e0 = 0.0;
  std::vector<AuditPoint> failed_points;
  std::vector<AuditPoint> indeterminate_points;
  int indeterminate_count = 0;

  bool passed() const noexcept { return failures == 0 && lemma_mismatches == 0; }
};

AuditReport so3_audit(int n_points, std::uint64_t seed, double margin, int samples = 2000,
                      double eps = kDefaultClassifyEps);
AuditReport u2_audit(int n_points, std::uint64_t seed, double margin, int samples = 2000,
                     double eps = kDefaultClassifyEps);

/// Random U(2) configuration used by the audit. Components of E0 are either exactly zero
/// or at least 0.05 in magnitude; lambda gaps are either zero or at least 0.05.
struct U2Config {
  std::array<double, 3> lambdas;
  std::array<double, 4> e0;
  std::vector<Vector> su2_frame;
};
U2Config random_u2_config(Rng& rng);

nlohmann::json to_json(const SampleReport& report);
nlohmann::json to_json(const CurvatureReport& report);
nlohmann::json to_json(const AuditReport& report);

}  // namespace licurv
