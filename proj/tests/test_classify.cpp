#include <algorithm>
#include <array>
#include <cmath>
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

LeftInvariantMetric rotated_so3(const std::array<double, 3>& eigenvalues, Rng& rng) {
  const Matrix q = random_rotation(3, rng);
  std::vector<Vector> vecs{q.col(0), q.col(1), q.col(2)};
  return metric_from_eigen(make_so3(), {eigenvalues[0], eigenvalues[1], eigenvalues[2]}, vecs);
}

}  // namespace

TEST_CASE("so3 inequalities equal the printed ones when l3 is largest") {
  Rng rng(2);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const double l1 = u(rng), l2 = u(rng);
    const auto v = so3_inequalities(l1, l2, 1.0);
    const auto ref = oracle::printed_inequalities(l1, l2);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(v[i] - ref[i]) < 1e-13);
  }
  // Each inequality is a positive multiple of the matching eigenplane curvature.
  for (int t = 0; t < 200; ++t) {
    const double l1 = 2 * u(rng), l2 = 2 * u(rng);
    const auto v = oracle::printed_inequalities(l1, l2);
    CHECK(std::abs(v[0] - 4 * l1 * l1 * l2 * l2 * oracle::printed_kappa12(l1, l2, 1.0)) < 1e-12 * (1 + std::abs(v[0])));
    CHECK(std::abs(v[1] - 4 * l1 * l1 * l2 * l2 * oracle::printed_kappa12(l2, 1.0, l1)) < 1e-12 * (1 + std::abs(v[1])));
    CHECK(std::abs(v[2] - 4 * l1 * l1 * l2 * l2 * oracle::printed_kappa12(l1, 1.0, l2)) < 1e-12 * (1 + std::abs(v[2])));
  }
}

TEST_CASE("so3 classification examples") {
  const double s = std::sqrt(0.75);
  const auto boundary = so3_classify(s, s, 1.0);
  CHECK(boundary.status == CurvatureStatus::Boundary);
  CHECK(std::abs(boundary.inequality_values[0]) < 1e-12);
  REQUIRE(boundary.witness);
  CHECK(boundary.witness->inequality == 1);

  CHECK(so3_classify(1, 1, std::sqrt(4.0 / 3.0)).status == CurvatureStatus::Boundary);
  CHECK(so3_classify(1, 1, 1).status == CurvatureStatus::StrictlyNonnegative);
  CHECK_FALSE(so3_classify(1, 1, 1).witness);

  const auto bad = so3_classify(0.5, 0.5, 1.0);
  CHECK(bad.status == CurvatureStatus::Violated);
  CHECK(bad.inequality_values[0] == doctest::Approx(-2.0).epsilon(1e-14));
  REQUIRE(bad.witness);
  CHECK(bad.witness->inequality == 1);
  // The witness plane's curvature is the true sectional curvature of that plane.
  const auto m = so3_metric_from_lambdas({0.5, 0.5, 1.0});
  const auto& [x, y] = *bad.witness->plane;
  CHECK(*bad.witness->plane_curvature == doctest::Approx(sectional(m, x, y)).epsilon(1e-12));
  CHECK(*bad.witness->plane_curvature < 0.0);

  CHECK(code_of([] { so3_classify(0.0, 1.0, 1.0); }) == ErrorCode::NonPositiveLambda);
  CHECK(code_of([] { so3_classify(1.0, -1.0, 1.0); }) == ErrorCode::NonPositiveLambda);
}

TEST_CASE("so3 classification is scale and permutation invariant") {
  Rng rng(4);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int t = 0; t < 2000; ++t) {
    std::array<double, 3> l{u(rng), u(rng), u(rng)};
    const auto base = so3_classify(l[0], l[1], l[2]).status;
    const double c = scale(rng);
    CHECK(so3_classify(c * l[0], c * l[1], c * l[2]).status == base);
    std::sort(l.begin(), l.end());
    do {
      CHECK(so3_classify(l[0], l[1], l[2]).status == base);
    } while (std::next_permutation(l.begin(), l.end()));
  }
}

TEST_CASE("so3 classifier agrees with the curvature of the eigenplanes") {
  Rng rng(5);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  for (int t = 0; t < 1000; ++t) {
    const double l1 = u(rng), l2 = u(rng), l3 = u(rng);
    const auto m = so3_metric_from_lambdas({l1, l2, l3});
    const auto& b = m.algebra();
    const double k = std::min({sectional(m, b.basis(0), b.basis(1)), sectional(m, b.basis(1), b.basis(2)),
                               sectional(m, b.basis(0), b.basis(2))});
    const auto r = so3_classify(l1, l2, l3);
    if (r.margin > 1e-6) CHECK((r.status == CurvatureStatus::Violated) == (k < 0.0));
  }
}

TEST_CASE("u2 classification examples") {
  const double a = 0.8, d = 0.6;
  const auto type3 = u2_classify(u2_metric_from_restricted({0.9, 0.9, 1.0}, {a, 0, 0, d}));
  CHECK(type3.status == CurvatureStatus::StrictlyNonnegative);
  CHECK(type3.witness->condition == "condition3");

  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    const Vector e = random_gaussian(4, rng);
    const auto r = u2_classify(u2_metric_from_restricted({1, 1, 1}, {std::abs(e(0)) + 0.1, e(1), e(2), e(3)}));
    CHECK(r.status == CurvatureStatus::StrictlyNonnegative);
    CHECK(r.witness->condition == "condition2");
  }

  const auto product = u2_classify(u2_metric_from_restricted({1, 1, 1}, {1, 0, 0, 0}));
  CHECK(product.witness->condition == "condition1");

  const auto violated = u2_classify(u2_metric_from_restricted({0.9, 0.95, 1.0}, {0.9, 0.4, 0, 0}));
  CHECK(violated.status == CurvatureStatus::Violated);
  REQUIRE(violated.witness);
  CHECK(violated.witness->condition == "no_condition");
  REQUIRE(violated.witness->plane_curvature);
  CHECK(*violated.witness->plane_curvature < 0.0);

  const auto so3_fail = u2_classify(u2_metric_from_restricted({0.5, 0.5, 1.0}, {1, 0, 0, 0}));
  CHECK(so3_fail.status == CurvatureStatus::Violated);
  CHECK(so3_fail.witness->condition == "so3_inequality");
  CHECK(so3_fail.witness->inequality == 1);

  const double s = std::sqrt(0.75);
  CHECK(u2_classify(u2_metric_from_restricted({s, s, 1.0}, {1, 0, 0, 0})).status == CurvatureStatus::Boundary);

  CHECK(code_of([] { u2_classify(so3_metric_from_lambdas({1, 1, 1})); }) == ErrorCode::WrongAlgebra);
}

TEST_CASE("condition three is symmetric over the three pairs") {
  // lambda_2 = lambda_3 with E0 in span(e0,e1), and lambda_1 = lambda_3 with E0 in span(e0,e2).
  CHECK(u2_classify(u2_metric_from_restricted({0.9, 1.0, 1.0}, {0.8, 0.5, 0, 0})).status ==
        CurvatureStatus::StrictlyNonnegative);
  CHECK(u2_classify(u2_metric_from_restricted({1.0, 0.9, 1.0}, {0.8, 0, 0.5, 0})).status ==
        CurvatureStatus::StrictlyNonnegative);
  CHECK(u2_classify(u2_metric_from_restricted({0.9, 1.0, 1.0}, {0.8, 0, 0.5, 0})).status ==
        CurvatureStatus::Violated);
}

TEST_CASE("u2 verdict does not depend on the su2 eigenframe") {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const U2Config cfg = random_u2_config(rng);
    const auto base = u2_classify(u2_metric_from_restricted(cfg.lambdas, cfg.e0), kDefaultClassifyEps, 0);
    const auto moved = u2_classify(u2_metric_from_restricted(cfg.lambdas, cfg.e0, cfg.su2_frame), kDefaultClassifyEps, 0);
    CHECK(base.status == moved.status);
  }
  // Degenerate eigenspaces: rotating inside the repeated eigenspace keeps the verdict.
  for (int t = 0; t < 50; ++t) {
    const double th = 0.1 * t;
    std::vector<Vector> frame{testing_support::from_list({std::cos(th), std::sin(th), 0}),
                              testing_support::from_list({-std::sin(th), std::cos(th), 0}),
                              testing_support::from_list({0, 0, 1})};
    const auto r = u2_classify(u2_metric_from_restricted({0.9, 0.9, 1.0}, {0.8, 0, 0, 0.6}, frame));
    CHECK(r.status == CurvatureStatus::StrictlyNonnegative);
  }
}

TEST_CASE("so3 isometry classes") {
  Rng rng(8);
  const auto a = metric_from_phi(make_so3(), Matrix(testing_support::from_list({1, 2, 3}).asDiagonal()));
  const auto b = rotated_so3({1, 2, 3}, rng);
  const auto c = metric_from_phi(make_so3(), Matrix(testing_support::from_list({1, 2, 4}).asDiagonal()));
  CHECK(are_isometric(a, b));
  CHECK(are_isometric(a, a));
  CHECK_FALSE(are_isometric(a, c));
  // Isometric metrics share curvature invariants.
  const auto sa = symmetric_spectrum(curvature_operator(a));
  const auto sb = symmetric_spectrum(curvature_operator(b));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(sa[i] - sb[i]) < 1e-10);
  CHECK(code_of([&] { so3_isometry_class(u2_metric_from_restricted({1, 1, 1}, {1, 0, 0, 0})); }) ==
        ErrorCode::WrongAlgebra);
}

TEST_CASE("u2 local isometry class") {
  const auto product = u2_metric_from_restricted({1, 1, 1}, {1, 0, 0, 0});
  const auto twisted2 = u2_metric_from_restricted({1, 1, 1}, {0.5, 0.3, -0.4, 0.6});
  const auto c1 = u2_local_isometry_class(product), c2 = u2_local_isometry_class(twisted2);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(c1[i] - c2[i]) < 1e-12);
  const auto s1 = symmetric_spectrum(curvature_operator(product));
  const auto s2 = symmetric_spectrum(curvature_operator(twisted2));
  for (int i = 0; i < 6; ++i) CHECK(std::abs(s1[i] - s2[i]) < 1e-8);

  const auto p3 = u2_metric_from_restricted({0.9, 0.9, 1.0}, {1, 0, 0, 0});
  const auto t3 = u2_metric_from_restricted({0.9, 0.9, 1.0}, {0.8, 0, 0, 0.6});
  CHECK(std::abs(scalar(p3) - scalar(t3)) < 1e-10);

  CHECK(code_of([] { u2_local_isometry_class(u2_metric_from_restricted({0.9, 0.95, 1}, {0.9, 0.4, 0, 0})); }) ==
        ErrorCode::NotNonnegative);
  CHECK(code_of([] { u2_local_isometry_class(so3_metric_from_lambdas({1, 1, 1})); }) == ErrorCode::WrongAlgebra);
}

TEST_CASE("classification JSON") {
  const auto doc = to_json(so3_classify(0.5, 0.5, 1.0));
  CHECK(doc.at("status") == "Violated");
  CHECK(doc.at("witness").at("inequality") == 1);
  CHECK(doc.at("inequality_values").size() == 3);
  const auto ok = to_json(so3_classify(1, 1, 1));
  CHECK(ok.at("status") == "StrictlyNonnegative");
  CHECK(ok.at("witness").is_null());
}

TEST_CASE("classify_metric dispatch") {
  Rng rng(10);
  const auto rotated = rotated_so3({0.25, 0.25, 1.0}, rng);
  const auto r = classify_metric(rotated);
  CHECK(r.status == CurvatureStatus::Violated);
  const auto& [x, y] = *r.witness->plane;
  CHECK(sectional(rotated, x, y) == doctest::Approx(*r.witness->plane_curvature).epsilon(1e-10));
  const LieAlgebra abelian(2, std::vector<double>(8, 0.0));
  CHECK(code_of([&] { classify_metric(metric_from_phi(abelian, Matrix::Identity(2, 2))); }) ==
        ErrorCode::WrongAlgebra);
}
