#include "licurv/licurv.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "licurv/cheeger.hpp"
#include "licurv/classify.hpp"
#include "licurv/curvature.hpp"
#include "licurv/errors.hpp"
#include "licurv/lie_algebra.hpp"
#include "licurv/metric.hpp"
#include "licurv/verify.hpp"

#ifndef LICURV_VERSION_STRING
#define LICURV_VERSION_STRING "0.0.0"
#endif

struct licurv_algebra {
  licurv::LieAlgebra value;
};

struct licurv_metric {
  licurv::LeftInvariantMetric value;
};

struct licurv_chain {
  licurv::LeftInvariantMetric g0;
  licurv::CheegerChain chain;
};

namespace {

thread_local std::string g_last_error;

licurv_status fail(licurv_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

template <class F>
licurv_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return LICURV_OK;
  } catch (const licurv::Error& e) {
    return fail(static_cast<licurv_status>(static_cast<int>(e.code())), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LICURV_ERR_PARSE, std::string("ParseError: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(LICURV_ERR_INTERNAL, "Internal: out of memory");
  } catch (const std::exception& e) {
    return fail(LICURV_ERR_INTERNAL, std::string("Internal: ") + e.what());
  } catch (...) {
    return fail(LICURV_ERR_INTERNAL, "Internal: unknown exception");
  }
}

void require(bool condition, const char* what) {
  if (!condition) throw licurv::Error(licurv::ErrorCode::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit_json(const nlohmann::json& doc, char** out) {
  if (out != nullptr) *out = copy_string(doc.dump(2) + "\n");
}

void check_dim(size_t n, int dim) {
  if (static_cast<int>(n) != dim) {
    throw licurv::Error(licurv::ErrorCode::DimensionMismatch,
                        "expected " + std::to_string(dim) + " components, got " + std::to_string(n));
  }
}

licurv::Vector as_vector(const double* data, size_t n) {
  require(data != nullptr, "null vector");
  return Eigen::Map<const licurv::Vector>(data, static_cast<Eigen::Index>(n));
}

licurv_verdict verdict_of(licurv::CurvatureStatus status) {
  switch (status) {
    case licurv::CurvatureStatus::StrictlyNonnegative: return LICURV_STRICTLY_NONNEGATIVE;
    case licurv::CurvatureStatus::Boundary: return LICURV_BOUNDARY;
    case licurv::CurvatureStatus::Violated: break;
  }
  return LICURV_VIOLATED;
}

}  // namespace

extern "C" {

const char* licurv_version(void) { return LICURV_VERSION_STRING; }

const char* licurv_status_name(licurv_status status) {
  if (status == LICURV_OK) return "Ok";
  if (status == LICURV_ERR_INTERNAL) return "Internal";
  const int code = static_cast<int>(status);
  if (code >= 1 && code <= 19) return licurv::error_name(static_cast<licurv::ErrorCode>(code));
  return "Unknown";
}

const char* licurv_last_error(void) { return g_last_error.c_str(); }

void licurv_string_free(char* s) { std::free(s); }

licurv_status licurv_algebra_so3(licurv_algebra** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new licurv_algebra{licurv::make_so3()};
  });
}

licurv_status licurv_algebra_u1su2(licurv_algebra** out) {
  return guarded([&] {
    require(out != nullptr, "null output");
    *out = new licurv_algebra{licurv::make_u1_su2()};
  });
}

licurv_status licurv_algebra_from_json(const char* json, licurv_algebra** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new licurv_algebra{licurv::algebra_from_json(nlohmann::json::parse(json))};
  });
}

void licurv_algebra_free(licurv_algebra* alg) { delete alg; }

int licurv_algebra_dim(const licurv_algebra* alg) { return alg == nullptr ? 0 : alg->value.dim(); }

licurv_status licurv_algebra_bracket(const licurv_algebra* alg, const double* x, const double* y, size_t n,
                                     double* out) {
  return guarded([&] {
    require(alg != nullptr && out != nullptr, "null argument");
    check_dim(n, alg->value.dim());
    const licurv::Vector z = alg->value.bracket(as_vector(x, n), as_vector(y, n));
    for (size_t i = 0; i < n; ++i) out[i] = z(static_cast<Eigen::Index>(i));
  });
}

licurv_status licurv_metric_from_phi(const licurv_algebra* alg, const double* phi, size_t n,
                                     licurv_metric** out) {
  return guarded([&] {
    require(alg != nullptr && phi != nullptr && out != nullptr, "null argument");
    check_dim(n, alg->value.dim());
    const auto dim = static_cast<Eigen::Index>(n);
    const licurv::Matrix m = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        phi, dim, dim);
    *out = new licurv_metric{licurv::metric_from_phi(alg->value, m)};
  });
}

licurv_status licurv_metric_from_lambdas(const char* algebra, const double lambdas[3], const double* e0,
                                         licurv_metric** out) {
  return guarded([&] {
    require(algebra != nullptr && lambdas != nullptr && out != nullptr, "null argument");
    const std::array<double, 3> l{lambdas[0], lambdas[1], lambdas[2]};
    const std::string name(algebra);
    if (name == "so3") {
      require(e0 == nullptr, "E0 is only meaningful on u1su2");
      *out = new licurv_metric{licurv::so3_metric_from_lambdas(l)};
    } else if (name == "u1su2") {
      std::array<double, 4> comps{1.0, 0.0, 0.0, 0.0};
      if (e0 != nullptr) comps = {e0[0], e0[1], e0[2], e0[3]};
      *out = new licurv_metric{licurv::u2_metric_from_restricted(l, comps)};
    } else {
      throw licurv::Error(licurv::ErrorCode::InvalidAlgebra, "unknown algebra '" + name + "'");
    }
  });
}

licurv_status licurv_metric_from_json(const char* json, licurv_metric** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    *out = new licurv_metric{licurv::metric_from_json(nlohmann::json::parse(json))};
  });
}

licurv_status licurv_metric_to_json(const licurv_metric* metric, char** out_json) {
  return guarded([&] {
    require(metric != nullptr && out_json != nullptr, "null argument");
    emit_json(licurv::metric_to_json(metric->value), out_json);
  });
}

void licurv_metric_free(licurv_metric* metric) { delete metric; }

int licurv_metric_dim(const licurv_metric* metric) { return metric == nullptr ? 0 : metric->value.dim(); }

licurv_status licurv_metric_eigenvalues(const licurv_metric* metric, double* out, size_t n) {
  return guarded([&] {
    require(metric != nullptr && out != nullptr, "null argument");
    check_dim(n, metric->value.dim());
    const auto& values = metric->value.eigen().eigenvalues;
    for (size_t i = 0; i < n; ++i) out[i] = values[i];
  });
}

licurv_status licurv_metric_phi(const licurv_metric* metric, double* out, size_t n) {
  return guarded([&] {
    require(metric != nullptr && out != nullptr, "null argument");
    check_dim(n, metric->value.dim());
    const auto& phi = metric->value.phi();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) out[i * n + j] = phi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  });
}

licurv_status licurv_riemann(const licurv_metric* metric, const double* x, const double* y, const double* z,
                             const double* w, size_t n, double* out) {
  return guarded([&] {
    require(metric != nullptr && out != nullptr, "null argument");
    check_dim(n, metric->value.dim());
    *out = licurv::riemann(metric->value, as_vector(x, n), as_vector(y, n), as_vector(z, n), as_vector(w, n));
  });
}

licurv_status licurv_sectional(const licurv_metric* metric, const double* x, const double* y, size_t n,
                               double* out) {
  return guarded([&] {
    require(metric != nullptr && out != nullptr, "null argument");
    check_dim(n, metric->value.dim());
    *out = licurv::sectional(metric->value, as_vector(x, n), as_vector(y, n));
  });
}

licurv_status licurv_scalar(const licurv_metric* metric, double* out) {
  return guarded([&] {
    require(metric != nullptr && out != nullptr, "null argument");
    *out = licurv::scalar(metric->value);
  });
}

licurv_status licurv_report_json(const licurv_metric* metric, int samples, uint64_t seed, char** out_json) {
  return guarded([&] {
    require(metric != nullptr && out_json != nullptr, "null argument");
    require(samples >= 1, "samples must be at least 1");
    emit_json(licurv::to_json(licurv::curvature_report(metric->value, samples, seed)), out_json);
  });
}

licurv_status licurv_classify_so3(double l1, double l2, double l3, double eps, licurv_verdict* verdict,
                                  char** out_json) {
  return guarded([&] {
    require(verdict != nullptr, "null verdict");
    require(eps > 0.0, "eps must be positive");
    const auto result = licurv::so3_classify(l1, l2, l3, eps);
    *verdict = verdict_of(result.status);
    emit_json(licurv::to_json(result), out_json);
  });
}

licurv_status licurv_classify_metric(const licurv_metric* metric, double eps, licurv_verdict* verdict,
                                     char** out_json) {
  return guarded([&] {
    require(metric != nullptr && verdict != nullptr, "null argument");
    require(eps > 0.0, "eps must be positive");
    const auto result = licurv::classify_metric(metric->value, eps);
    *verdict = verdict_of(result.status);
    emit_json(licurv::to_json(result), out_json);
  });
}

licurv_status licurv_scan_so3_csv(double l1_min, double l1_max, double l1_step, double l2_min, double l2_max,
                                  double l2_step, double eps, char** out_csv) {
  return guarded([&] {
    require(out_csv != nullptr, "null output");
    licurv::ScanGrid grid;
    grid.l1_min = l1_min;
    grid.l1_max = l1_max;
    grid.l1_step = l1_step;
    grid.l2_min = l2_min;
    grid.l2_max = l2_max;
    grid.l2_step = l2_step;
    grid.eps = eps;
    *out_csv = copy_string(licurv::scan_to_csv(licurv::scan_so3_region(grid)));
  });
}

licurv_status licurv_chain_from_json(const char* json, licurv_chain** out) {
  return guarded([&] {
    require(json != nullptr && out != nullptr, "null argument");
    auto [g0, chain] = licurv::chain_from_json(nlohmann::json::parse(json));
    *out = new licurv_chain{std::move(g0), std::move(chain)};
  });
}

void licurv_chain_free(licurv_chain* chain) { delete chain; }

licurv_status licurv_chain_deform(const licurv_chain* chain, licurv_metric** out) {
  return guarded([&] {
    require(chain != nullptr && out != nullptr, "null argument");
    *out = new licurv_metric{licurv::chain_deform(chain->g0, chain->chain)};
  });
}

licurv_status licurv_uniform_shrink(const licurv_metric* metric, const double* basis, size_t k, double lambda,
                                    licurv_metric** out) {
  return guarded([&] {
    require(metric != nullptr && basis != nullptr && out != nullptr, "null argument");
    const auto dim = static_cast<size_t>(metric->value.dim());
    std::vector<licurv::Vector> h;
    for (size_t i = 0; i < k; ++i) h.push_back(as_vector(basis + i * dim, dim));
    *out = new licurv_metric{licurv::uniform_shrink(metric->value, h, lambda)};
  });
}

licurv_status licurv_so3_cheeger_eigenvalues(const double gR_eigenvalues[3], double out[3]) {
  return guarded([&] {
    require(gR_eigenvalues != nullptr && out != nullptr, "null argument");
    const auto t = licurv::so3_cheeger_eigenvalues({gR_eigenvalues[0], gR_eigenvalues[1], gR_eigenvalues[2]});
    for (int i = 0; i < 3; ++i) out[i] = t[i];
  });
}

licurv_status licurv_audit_json(const char* group, int points, uint64_t seed, double margin, int samples,
                                int* passed, char** out_json) {
  return guarded([&] {
    require(group != nullptr && passed != nullptr, "null argument");
    require(points >= 1, "points must be at least 1");
    require(samples >= 1, "samples must be at least 1");
    require(margin >= 0.0, "margin must be nonnegative");
    const std::string name(group);
    licurv::AuditReport report;
    if (name == "so3") {
      report = licurv::so3_audit(points, seed, margin, samples);
    } else if (name == "u2") {
      report = licurv::u2_audit(points, seed, margin, samples);
    } else {
      throw licurv::Error(licurv::ErrorCode::InvalidArgument, "unknown audit group '" + name + "'");
    }
    *passed = report.passed() ? 1 : 0;
    emit_json(licurv::to_json(report), out_json);
  });
}

licurv_status licurv_crosscheck(const licurv_metric* metric, int pairs, uint64_t seed, double* max_discrepancy) {
  return guarded([&] {
    require(metric != nullptr && max_discrepancy != nullptr, "null argument");
    require(pairs >= 1, "pairs must be at least 1");
    *max_discrepancy = licurv::cross_check(metric->value, pairs, seed);
  });
}

licurv_status licurv_crosscheck_random(const licurv_algebra* alg, int metrics, int pairs, uint64_t seed,
                                       double* max_discrepancy) {
  return guarded([&] {
    require(alg != nullptr && max_discrepancy != nullptr, "null argument");
    require(metrics >= 1 && pairs >= 1, "metrics and pairs must be at least 1");
    *max_discrepancy = licurv::cross_check_random(alg->value, metrics, pairs, seed).max_discrepancy;
  });
}

}  // extern "C"
