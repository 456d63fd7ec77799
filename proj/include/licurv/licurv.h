/* licurv: curvature of left-invariant metrics on compact Lie groups.
 *
 * Plain C interface over the C++ core. Objects are opaque handles created by
 * licurv_*_create/_from_* functions and released with the matching _free call.
 * Every fallible call returns a licurv_status; on failure the thread-local
 * message from licurv_last_error() describes the cause. Strings returned through
 * char** out-parameters are heap allocated and must be released with
 * licurv_string_free(). Matrices are row-major. */
#ifndef LICURV_LICURV_H
#define LICURV_LICURV_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LICURV_BUILDING)
#    define LICURV_API __declspec(dllexport)
#  else
#    define LICURV_API __declspec(dllimport)
#  endif
#else
#  define LICURV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum licurv_status {
  LICURV_OK = 0,
  LICURV_ERR_DIMENSION_MISMATCH = 1,
  LICURV_ERR_NOT_SYMMETRIC = 2,
  LICURV_ERR_NOT_POSITIVE_DEFINITE = 3,
  LICURV_ERR_NON_ORTHONORMAL_FRAME = 4,
  LICURV_ERR_NON_POSITIVE_VALUE = 5,
  LICURV_ERR_DEGENERATE_PLANE = 6,
  LICURV_ERR_INDEX_OUT_OF_RANGE = 7,
  LICURV_ERR_ZERO_VECTOR = 8,
  LICURV_ERR_WRONG_ALGEBRA = 9,
  LICURV_ERR_NOT_NONNEGATIVE = 10,
  LICURV_ERR_NOT_SUBALGEBRA = 11,
  LICURV_ERR_NOT_AD_H_INVARIANT = 12,
  LICURV_ERR_NOT_SPD = 13,
  LICURV_ERR_TARGET_NOT_STRICT = 14,
  LICURV_ERR_NON_POSITIVE_LAMBDA = 15,
  LICURV_ERR_INVALID_ALGEBRA = 16,
  LICURV_ERR_INVALID_CHAIN = 17,
  LICURV_ERR_PARSE = 18,
  LICURV_ERR_INVALID_ARGUMENT = 19,
  LICURV_ERR_INTERNAL = 100
} licurv_status;

typedef enum licurv_verdict {
  LICURV_STRICTLY_NONNEGATIVE = 0,
  LICURV_BOUNDARY = 1,
  LICURV_VIOLATED = 2
} licurv_verdict;

typedef struct licurv_algebra licurv_algebra;
typedef struct licurv_metric licurv_metric;
typedef struct licurv_chain licurv_chain;

LICURV_API const char* licurv_version(void);
LICURV_API const char* licurv_status_name(licurv_status status);
/* Message for the last failed call on this thread ("" if none). */
LICURV_API const char* licurv_last_error(void);
LICURV_API void licurv_string_free(char* s);

/* Algebras. */
LICURV_API licurv_status licurv_algebra_so3(licurv_algebra** out);
LICURV_API licurv_status licurv_algebra_u1su2(licurv_algebra** out);
/* {"dim": n, "structure": [[i,j,k,value],...]} or "so3" / "u1su2". */
LICURV_API licurv_status licurv_algebra_from_json(const char* json, licurv_algebra** out);
LICURV_API void licurv_algebra_free(licurv_algebra* alg);
LICURV_API int licurv_algebra_dim(const licurv_algebra* alg);
LICURV_API licurv_status licurv_algebra_bracket(const licurv_algebra* alg, const double* x, const double* y,
                                                size_t n, double* out);

/* Metrics. */
LICURV_API licurv_status licurv_metric_from_phi(const licurv_algebra* alg, const double* phi, size_t n,
                                                licurv_metric** out);
/* algebra "so3" (e0 must be NULL) or "u1su2" (e0 = {a,b,c,d}, NULL means {1,0,0,0}). */
LICURV_API licurv_status licurv_metric_from_lambdas(const char* algebra, const double lambdas[3],
                                                    const double* e0, licurv_metric** out);
LICURV_API licurv_status licurv_metric_from_json(const char* json, licurv_metric** out);
LICURV_API licurv_status licurv_metric_to_json(const licurv_metric* metric, char** out_json);
LICURV_API void licurv_metric_free(licurv_metric* metric);
LICURV_API int licurv_metric_dim(const licurv_metric* metric);
/* Ascending eigenvalues of phi; `out` holds `n` = dim entries. */
LICURV_API licurv_status licurv_metric_eigenvalues(const licurv_metric* metric, double* out, size_t n);
/* phi in row-major order; `out` holds n*n entries. */
LICURV_API licurv_status licurv_metric_phi(const licurv_metric* metric, double* out, size_t n);

/* Curvature. */
LICURV_API licurv_status licurv_riemann(const licurv_metric* metric, const double* x, const double* y,
                                        const double* z, const double* w, size_t n, double* out);
LICURV_API licurv_status licurv_sectional(const licurv_metric* metric, const double* x, const double* y,
                                          size_t n, double* out);
LICURV_API licurv_status licurv_scalar(const licurv_metric* metric, double* out);
/* CurvatureReport JSON. */
LICURV_API licurv_status licurv_report_json(const licurv_metric* metric, int samples, uint64_t seed,
                                            char** out_json);

/* Classification. out_json may be NULL. */
LICURV_API licurv_status licurv_classify_so3(double l1, double l2, double l3, double eps,
                                             licurv_verdict* verdict, char** out_json);
LICURV_API licurv_status licurv_classify_metric(const licurv_metric* metric, double eps,
                                                licurv_verdict* verdict, char** out_json);

/* Region scan of so(3) with l3 = 1; CSV with header l1,l2,status,min_inequality_value. */
LICURV_API licurv_status licurv_scan_so3_csv(double l1_min, double l1_max, double l1_step, double l2_min,
                                             double l2_max, double l2_step, double eps, char** out_csv);

/* Cheeger deformation. */
LICURV_API licurv_status licurv_chain_from_json(const char* json, licurv_chain** out);
LICURV_API void licurv_chain_free(licurv_chain* chain);
LICURV_API licurv_status licurv_chain_deform(const licurv_chain* chain, licurv_metric** out);
/* basis: k vectors of length dim, row-major (k x dim). */
LICURV_API licurv_status licurv_uniform_shrink(const licurv_metric* metric, const double* basis, size_t k,
                                               double lambda, licurv_metric** out);
LICURV_API licurv_status licurv_so3_cheeger_eigenvalues(const double gR_eigenvalues[3], double out[3]);

/* Verification. group is "so3" or "u2". *passed is 1 when the audit has no failures. */
LICURV_API licurv_status licurv_audit_json(const char* group, int points, uint64_t seed, double margin,
                                           int samples, int* passed, char** out_json);
/* Max Milnor-vs-Puttmann discrepancy for one metric. */
LICURV_API licurv_status licurv_crosscheck(const licurv_metric* metric, int pairs, uint64_t seed,
                                           double* max_discrepancy);
/* Same over `metrics` random metrics on the given algebra. */
LICURV_API licurv_status licurv_crosscheck_random(const licurv_algebra* alg, int metrics, int pairs,
                                                  uint64_t seed, double* max_discrepancy);

#ifdef __cplusplus
}
#endif

#endif /* LICURV_LICURV_H */
