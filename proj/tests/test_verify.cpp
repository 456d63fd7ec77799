#include <algorithm>
#include <cmath>
#include <cstring>
#include <functional>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "helpers.hpp"
#include "licurv/classify.hpp"
#include "licurv/curvature.hpp"
#include "licurv/errors.hpp"
#include "licurv/random.hpp"
#include "licurv/verify.hpp"

using namespace licurv;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("sampling oracle examples") {
  const auto bi = metric_from_phi(make_so3(), Matrix::Identity(3, 3));
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto r = min_sectional_sampled(bi, 50, seed);
    CHECK(std::abs(r.min_sectional - 0.25) < 1e-9);
    CHECK(std::abs(r.max_sectional - 0.25) < 1e-9);
    CHECK(r.seed == seed);
  }
  const auto bad = min_sectional_sampled(so3_metric_from_lambdas({0.5, 0.5, 1.0}), 200, 0);
  CHECK(bad.min_sectional < 0.0);
  // The polished minimum reaches the true minimum, the (u1,u2) plane at -8.
  CHECK(std::abs(bad.min_sectional + 8.0) < 1e-9);
  const auto& [x, y] = bad.witness_plane;
  CHECK(std::abs(sectional(so3_metric_from_lambdas({0.5, 0.5, 1.0}), x, y) - bad.min_sectional) < 1e-9);

  const auto one = min_sectional_sampled(bi, 1, 5);
  CHECK(one.n_samples == 1);
  CHECK(code_of([&] { min_sectional_sampled(bi, 0, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("oracle minimum matches the eigenplane minimum on so3") {
  Rng rng(41);
  std::uniform_real_distribution<double> u(0.1, 2.0);
  for (int t = 0; t < 200; ++t) {
    const double l1 = u(rng), l2 = u(rng);
    const auto m = so3_metric_from_lambdas({l1, l2, 1.0});
    const auto& b = m.algebra();
    const double k = std::min({sectional(m, b.basis(0), b.basis(1)), sectional(m, b.basis(1), b.basis(2)),
                               sectional(m, b.basis(0), b.basis(2))});
    const auto r = min_sectional_sampled(m, 200, static_cast<std::uint64_t>(t));
    CHECK(r.min_sectional >= k - 1e-9 * (1 + std::abs(k)));
    CHECK(r.min_sectional <= k + 1e-9 * (1 + std::abs(k)));
  }
}

TEST_CASE("operator bound dominates sampled curvature") {
  Rng rng(42);
  for (int t = 0; t < 200; ++t) {
    const LieAlgebra alg = t % 2 == 0 ? make_so3() : make_u1_su2();
    const auto m = metric_from_phi(alg, random_spd(alg.dim(), rng));
    const auto r = min_sectional_sampled(m, 100, static_cast<std::uint64_t>(t));
    CHECK(r.min_operator_eigenvalue <= r.min_sectional + 1e-9);
    if (r.min_operator_eigenvalue >= -1e-9) CHECK(r.min_sectional >= -1e-9);
  }
}

TEST_CASE("strictly nonnegative verdicts have nonnegative curvature operators") {
  Rng rng(43);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  int so3_checked = 0, u2_checked = 0;
  for (int t = 0; t < 400; ++t) {
    const std::array<double, 3> l{u(rng), u(rng), u(rng)};
    if (so3_classify(l[0], l[1], l[2]).status == CurvatureStatus::StrictlyNonnegative) {
      CHECK(symmetric_spectrum(curvature_operator(so3_metric_from_lambdas(l))).front() >= -1e-9);
      ++so3_checked;
    }
    const U2Config cfg = random_u2_config(rng);
    const auto m = u2_metric_from_restricted(cfg.lambdas, cfg.e0, cfg.su2_frame);
    if (u2_classify(m, kDefaultClassifyEps, 0).status == CurvatureStatus::StrictlyNonnegative) {
      CHECK(symmetric_spectrum(curvature_operator(m)).front() >= -1e-9);
      ++u2_checked;
    }
  }
  CHECK(so3_checked > 50);
  CHECK(u2_checked > 50);
}

TEST_CASE("twisted and product metrics share curvature operator spectra") {
  Rng rng(44);
  std::uniform_real_distribution<double> u(0.8, 1.2);
  for (int t = 0; t < 100; ++t) {
    const Vector e = random_gaussian(4, rng);
    const double a = std::abs(e(0)) + 0.1;
    std::array<double, 3> lambdas;
    std::array<double, 4> comps{a, 0, 0, 0};
    if (t % 2 == 0) {
      const double l = u(rng);
      lambdas = {l, l, l};
      comps = {a, e(1), e(2), e(3)};
    } else {
      const double l = 0.9 + 0.02 * (t % 5);
      lambdas = {l, l, 1.0};
      comps[3] = e(3);
    }
    const auto twisted = u2_metric_from_restricted(lambdas, comps);
    const auto product = u2_metric_from_restricted(lambdas, {1, 0, 0, 0});
    REQUIRE(u2_classify(twisted, kDefaultClassifyEps, 0).status != CurvatureStatus::Violated);
    const auto s1 = symmetric_spectrum(curvature_operator(twisted));
    const auto s2 = symmetric_spectrum(curvature_operator(product));
    for (int i = 0; i < 6; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-8);
  }
}

TEST_CASE("curvature report") {
  const auto m = so3_metric_from_lambdas({1, 1, std::sqrt(0.5)});
  const auto r = curvature_report(m, 300, 3);
  CHECK(r.operator_spectrum.size() == 3);
  CHECK(std::is_sorted(r.operator_spectrum.begin(), r.operator_spectrum.end()));
  CHECK(std::abs(r.scalar - 1.75) < 1e-12);
  CHECK(std::abs(r.sampled_min_sectional - 0.125) < 1e-9);
  CHECK(std::abs(r.sampled_max_sectional - 0.625) < 1e-9);
  double ricci_sum = 0.0;
  for (double v : r.ricci_spectrum) ricci_sum += v;
  CHECK(std::abs(ricci_sum - r.scalar) < 1e-9);
  const auto doc = to_json(r);
  for (const char* key : {"scalar", "ricci_spectrum", "operator_spectrum", "sampled_min_sectional",
                          "sampled_max_sectional", "witness_plane", "n_samples", "seed"})
    CHECK(doc.contains(key));
  CHECK(doc.at("operator_spectrum").size() == 3);
  const auto u2 = curvature_report(u2_metric_from_restricted({0.9, 1.0, 1.1}, {1, 0.2, 0, 0}), 10, 0);
  CHECK(u2.operator_spectrum.size() == 6);
}

TEST_CASE("determinism") {
  Rng rng(45);
  const auto m = metric_from_phi(make_u1_su2(), random_spd(4, rng));
  const auto a = min_sectional_sampled(m, 500, 77), b = min_sectional_sampled(m, 500, 77);
  CHECK(same_bits(a.min_sectional, b.min_sectional));
  CHECK(same_bits(a.max_sectional, b.max_sectional));
  CHECK(to_json(curvature_report(m, 200, 5)).dump() == to_json(curvature_report(m, 200, 5)).dump());
  CHECK(to_json(u2_audit(40, 9, 1e-6, 200)).dump() == to_json(u2_audit(40, 9, 1e-6, 200)).dump());
  CHECK(same_bits(cross_check_random(make_so3(), 20, 10, 3).max_discrepancy,
                  cross_check_random(make_so3(), 20, 10, 3).max_discrepancy));
}

TEST_CASE("region scan") {
  ScanGrid grid;
  grid.l1_min = grid.l2_min = 0.1;
  grid.l1_max = grid.l2_max = 2.0;
  grid.l1_step = grid.l2_step = 0.1;
  const auto rows = scan_so3_region(grid);
  REQUIRE(rows.size() == 400);
  CHECK(rows[0].l1 == doctest::Approx(0.1));
  CHECK(rows[1].l2 == doctest::Approx(0.2));
  CHECK(rows[20].l1 == doctest::Approx(0.2));
  auto at = [&](int i, int j) { return rows[static_cast<size_t>(i * 20 + j)]; };
  CHECK(at(9, 9).status == CurvatureStatus::StrictlyNonnegative);   // (1,1)
  CHECK(at(1, 17).status == CurvatureStatus::Violated);             // (0.2,1.8)
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) {
      CHECK(at(i, j).status == at(j, i).status);
      CHECK(same_bits(at(i, j).min_inequality_value, at(j, i).min_inequality_value));
    }

  ScanGrid corner;
  corner.l1_min = corner.l1_max = corner.l2_min = corner.l2_max = std::sqrt(0.75);
  const auto single = scan_so3_region(corner);
  REQUIRE(single.size() == 1);
  CHECK(single[0].status == CurvatureStatus::Boundary);

  const std::string csv = scan_to_csv(single);
  CHECK(csv.rfind("l1,l2,status,min_inequality_value\n", 0) == 0);
  CHECK(csv.find("Boundary") != std::string::npos);

  ScanGrid bad;
  bad.l1_min = 0.0;
  CHECK(code_of([&] { scan_so3_region(bad); }) == ErrorCode::InvalidArgument);
  bad = ScanGrid{};
  bad.l2_step = -0.1;
  CHECK(code_of([&] { scan_so3_region(bad); }) == ErrorCode::InvalidArgument);
  bad = ScanGrid{};
  bad.l1_max = 0.001;
  CHECK(code_of([&] { scan_so3_region(bad); }) == ErrorCode::InvalidArgument);

  const ScanGrid defaults;
  CHECK(defaults.l1_values().size() == 200);
  CHECK(defaults.l1_values().back() == doctest::Approx(2.0));
}

TEST_CASE("cross check") {
  CHECK(cross_check(metric_from_phi(make_so3(), Matrix::Identity(3, 3)), 100, 0) < 1e-12);
  CHECK(cross_check(metric_from_phi(make_so3(), Matrix(testing_support::from_list({4, 1, 1}).asDiagonal())), 100, 0) <
        1e-9);
  Rng rng(46);
  CHECK(cross_check(metric_from_phi(make_u1_su2(), random_spd(4, rng)), 100, 1) < 1e-9);
  const auto summary = cross_check_random(make_u1_su2(), 50, 20, 2);
  CHECK(summary.n_metrics == 50);
  CHECK(summary.max_discrepancy < 1e-9);
}

TEST_CASE("audits") {
  const auto so3 = so3_audit(300, 1, 1e-6, 300);
  CHECK(so3.passed());
  CHECK(so3.failures == 0);
  CHECK(so3.status_counts[0] + so3.status_counts[1] + so3.status_counts[2] == 300);
  CHECK(so3.status_counts[2] > 0);
  CHECK(so3.status_counts[0] > 0);

  const auto u2 = u2_audit(300, 2, 1e-6, 300);
  CHECK(u2.passed());
  CHECK(u2.lemma_mismatches == 0);
  CHECK(u2.max_ricci_e0 <= 1e-9);
  for (int c = 0; c < 3; ++c) CHECK(u2.condition_counts[c] > 0);

  // A zero margin makes boundary noise indeterminate rather than failed.
  const auto tight = so3_audit(200, 3, 0.0, 200);
  CHECK(tight.failures == 0);

  const auto doc = to_json(u2);
  CHECK(doc.at("group") == "u2");
  CHECK(doc.at("failures") == 0);
  CHECK(doc.at("passed") == true);
}
