#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>

#include <nlohmann/json_fwd.hpp>

#include "licurv/metric.hpp"

namespace licurv {

inline constexpr double kDefaultClassifyEps = 1e-9;

enum class CurvatureStatus { StrictlyNonnegative, Boundary, Violated };

const char* status_name(CurvatureStatus status) noexcept;

struct Witness {
  /// 1: plane (1,2), 2: plane (2,3), 3: plane (1,3), by input position.
  std::optional<int> inequality;
  /// "condition1".."condition3" when a U(2) condition matched, "no_condition" or
  /// "so3_inequality" when it failed.
  std::optional<std::string> condition;
  /// A plane with negative sectional curvature, in algebra coordinates.
  std::optional<std::pair<Vector, Vector>> plane;
  std::optional<double> plane_curvature;
};

struct ClassificationResult {
  CurvatureStatus status = CurvatureStatus::StrictlyNonnegative;
  std::optional<Witness> witness;
  /// Inequality values by input position, normalized by the largest lambda.
  std::array<double, 3> inequality_values{};
  /// Minimum absolute value among the evaluations the verdict rests on.
  double margin = 0.0;
};

/// The three plane inequalities for the so(3) metric with eigenvalues l_i^2, each a
/// positive multiple of the sectional curvature of a coordinate eigenplane. Entries follow
/// the witness numbering. Exactly invariant under permutations of the arguments.
std::array<double, 3> so3_inequalities(double l1, double l2, double l3);

ClassificationResult so3_classify(double l1, double l2, double l3, double eps = kDefaultClassifyEps);

/// Classifies a metric on u(1)+su(2). `witness_samples` random planes (seed 0) are searched
/// for a negative plane when the verdict is Violated; 0 disables the search.
ClassificationResult u2_classify(const LeftInvariantMetric& metric, double eps = kDefaultClassifyEps,
                                 int witness_samples = 2000);

/// Dispatches on the algebra of the metric (so3 or u1su2).
ClassificationResult classify_metric(const LeftInvariantMetric& metric, double eps = kDefaultClassifyEps,
                                     int witness_samples = 2000);

/// Skew-adjointness defect of ad_E0 from the structure-constant table, scaled like curvature.
double u2_skew_defect(const RestrictedEigenData& data);

std::array<double, 3> so3_isometry_class(const LeftInvariantMetric& metric);
bool are_isometric(const LeftInvariantMetric& a, const LeftInvariantMetric& b, double eps = kDefaultClassifyEps);

/// Sorted restricted lambdas. Throws NotNonnegative when the metric classifies as Violated.
std::array<double, 3> u2_local_isometry_class(const LeftInvariantMetric& metric, double eps = kDefaultClassifyEps);

nlohmann::json to_json(const ClassificationResult& result);

}  // namespace licurv
