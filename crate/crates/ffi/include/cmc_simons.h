#ifndef CMC_SIMONS_H
#define CMC_SIMONS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CmcChart {
  CMC_CHART_BERGER = 0,
  CMC_CHART_DISK = 1,
} CmcChart;

// Status codes returned by every fallible function.
typedef enum CmcStatus {
  CMC_STATUS_OK = 0,
  CMC_STATUS_NULL_POINTER = 1,
  CMC_STATUS_INVALID_ARGUMENT = 2,
  CMC_STATUS_ZERO_TAU = 3,
  CMC_STATUS_OUTSIDE_CHART = 4,
  CMC_STATUS_ADAPTED_FRAME_UNDEFINED = 5,
  CMC_STATUS_CMC_REQUIRED = 6,
  CMC_STATUS_NON_COMPACT = 7,
  CMC_STATUS_NEGATIVE_DISCRIMINANT = 8,
  CMC_STATUS_WRONG_CURVATURE_REGIME = 9,
  CMC_STATUS_CONFIG = 10,
  CMC_STATUS_DEGENERATE = 11,
  CMC_STATUS_PANIC = 12,
  CMC_STATUS_INTERNAL = 13,
} CmcStatus;

typedef enum CmcVerdict {
  CMC_VERDICT_PASS = 0,
  CMC_VERDICT_FAIL = 1,
  CMC_VERDICT_INCONCLUSIVE = 2,
} CmcVerdict;

// Opaque model `E(kappa, tau)`.
typedef struct CmcModel CmcModel;

// Opaque parametrized surface.
typedef struct CmcSurface CmcSurface;

typedef struct CmcInvariants {
  double mean_curvature;
  double a_norm_sq;
  double phi_norm_sq;
  // Angle function `<N, xi>`.
  double c;
} CmcInvariants;

typedef struct CmcSimonsValue {
  double value;
  double doubled;
  double mean_curvature;
  bool nonnegative;
  bool equality;
} CmcSimonsValue;

typedef struct CmcPinching {
  double rho;
  double a;
  double b;
} CmcPinching;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or null. The pointer stays
// valid until the next failing call on the same thread.
const char *cmc_last_error(void);

// Library version as a static string.
const char *cmc_version(void);

// # Safety
// `out` must be a valid pointer to writable storage for one handle.
enum CmcStatus cmc_model_new(double kappa, double tau, struct CmcModel **out);

// # Safety
// `model` must be null or a handle from [`cmc_model_new`] not yet freed.
void cmc_model_free(struct CmcModel *model);

// Largest bracket-relation residual of the canonical frame over
// `n_points` random points of the chart.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum CmcStatus cmc_model_bracket_residual(const struct CmcModel *model,
                                          enum CmcChart chart,
                                          uint32_t n_points,
                                          uint64_t seed,
                                          double *out);

// Hopf torus over the latitude circle `s` in the Berger sphere.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum CmcStatus cmc_surface_hopf_torus(const struct CmcModel *model,
                                      double s,
                                      struct CmcSurface **out);

// Hopf torus with a rippled latitude, not cmc.
//
// # Safety
// `model` must be a live handle and `out` writable.
enum CmcStatus cmc_surface_perturbed_torus(const struct CmcModel *model,
                                           double s,
                                           double amplitude,
                                           int32_t p,
                                           int32_t q,
                                           struct CmcSurface **out);

// # Safety
// `surface` must be null or a live surface handle.
void cmc_surface_free(struct CmcSurface *surface);

// Whether the surface carries a cmc tag; writes the tagged `H` if so.
//
// # Safety
// `surface` must be a live handle; `h` may be null.
bool cmc_surface_is_cmc(const struct CmcSurface *surface, double *h);

// `H`, `|A|^2`, `|Phi|^2` and `C` at parameter `(u, v)`.
//
// # Safety
// `surface` must be a live handle and `out` writable.
enum CmcStatus cmc_surface_invariants(const struct CmcSurface *surface,
                                      double u,
                                      double v,
                                      struct CmcInvariants *out);

// The Simons functional on an `n_u x n_v` grid.
//
// # Safety
// `surface` must be a live handle and `out` writable.
enum CmcStatus cmc_surface_simons(const struct CmcSurface *surface,
                                  uint32_t n_u,
                                  uint32_t n_v,
                                  struct CmcSimonsValue *out);

// Discriminant and roots of the Simons quadratic.
//
// # Safety
// `out` must be writable.
enum CmcStatus cmc_pinching_interval(double kappa,
                                     double tau,
                                     double h,
                                     double c,
                                     struct CmcPinching *out);

// Exact check of the identity chain on `count` random rational states.
// `exact` receives whether every residual vanished.
//
// # Safety
// `exact` must be writable.
enum CmcStatus cmc_formal_run(uint32_t count, uint64_t seed, bool mutate, bool *exact);

// Runs a JSON verify config. On success `report` receives a JSON string to
// be released with [`cmc_string_free`].
//
// # Safety
// `config` must be a NUL-terminated string; `verdict` and `report` writable.
enum CmcStatus cmc_verify_json(const char *config, enum CmcVerdict *verdict, char **report);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void cmc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* CMC_SIMONS_H */
