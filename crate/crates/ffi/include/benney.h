#ifndef BENNEY_H
#define BENNEY_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Transport discretization ids accepted by `bny_sim_set_numerics`.
 */
#define BNY_TRANSPORT_UPWIND1 0

#define BNY_TRANSPORT_MINMOD 1

/**
 * Diffusion discretization ids accepted by `bny_sim_set_numerics`.
 */
#define BNY_DIFFUSION_BACKWARD_EULER 0

#define BNY_DIFFUSION_CRANK_NICOLSON 1

/**
 * Result codes of every fallible call.
 */
typedef enum BnyStatus {
  BNY_STATUS_OK = 0,
  BNY_STATUS_NULL_POINTER = 1,
  BNY_STATUS_INVALID_ARGUMENT = 2,
  BNY_STATUS_CFL_VIOLATION = 3,
  BNY_STATUS_DIVERGED = 4,
  BNY_STATUS_INADMISSIBLE = 5,
  BNY_STATUS_CONFIG = 6,
  BNY_STATUS_IO = 7,
  BNY_STATUS_FORMAT = 8,
  BNY_STATUS_RESOURCE = 9,
  BNY_STATUS_PANIC = 10,
} BnyStatus;

/**
 * Opaque simulation handle.
 */
typedef struct BnySim BnySim;

/**
 * Quadratures of the current state.
 */
typedef struct BnyInvariants {
  double t;
  /**
   * ∫|u|²
   */
  double mass;
  double energy;
  double momentum;
  /**
   * ∫|u_x|²
   */
  double ux2;
  /**
   * ∫v²
   */
  double v2;
  /**
   * ∫x²|u|²
   */
  double i2;
  /**
   * ∫x v²
   */
  double j;
  /**
   * ∫x|u|²
   */
  double k;
  /**
   * Transport speed a∫v²
   */
  double speed;
  double max_abs_u;
  double max_abs_v;
} BnyInvariants;

/**
 * Traveling-wave parameters for given `(a, b, s*, mu*)`.
 */
typedef struct BnyBoundState {
  double mu;
  double lambda;
  double s_star;
  double s;
  double omega;
  double k_wave;
  double c_const;
  double alpha;
  double r_inf;
  double gamma;
} BnyBoundState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Creates a simulation on `[0, length]` with `cells` cells from nodal data.
 * All three arrays hold `cells + 1` values; the end values are kept as given.
 *
 * # Safety
 * The arrays must be readable for `cells + 1` doubles and `out` writable.
 */
enum BnyStatus bny_sim_new(double length,
                           size_t cells,
                           double a,
                           double b,
                           double epsilon,
                           const double *u_re,
                           const double *u_im,
                           const double *v,
                           struct BnySim **out);

/**
 * Creates a simulation from a scenario config file, with the initial data,
 * numerics and boundary data it describes.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` writable.
 */
enum BnyStatus bny_sim_from_config(const char *path, struct BnySim **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `sim` must come from a constructor here and not be used afterwards.
 */
void bny_sim_free(struct BnySim *sim);

/**
 * Selects the transport and diffusion discretizations and the CFL safety
 * factor in (0, 1].
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum BnyStatus bny_sim_set_numerics(struct BnySim *sim,
                                    uint32_t transport,
                                    uint32_t diffusion,
                                    double cfl_safety);

/**
 * One split step of exactly `dt`. Fails with `CflViolation` when `dt` is
 * beyond the explicit transport limit; the state is then unchanged.
 *
 * # Safety
 * `sim` must be a live handle.
 */
enum BnyStatus bny_sim_step(struct BnySim *sim, double dt);

/**
 * Advances to time `t_end` with steps of at most `dt_max`, shortened to the
 * CFL limit and clipped to land on `t_end`. Writes the step count to
 * `steps` when it is not null.
 *
 * # Safety
 * `sim` must be a live handle; `steps` null or writable.
 */
enum BnyStatus bny_sim_advance(struct BnySim *sim, double t_end, double dt_max, size_t *steps);

/**
 * Number of grid nodes, `cells + 1`; zero for a null handle.
 *
 * # Safety
 * `sim` must be null or a live handle.
 */
size_t bny_sim_nodes(const struct BnySim *sim);

/**
 * Current simulation time.
 *
 * # Safety
 * `sim` must be a live handle and `t` writable.
 */
enum BnyStatus bny_sim_time(const struct BnySim *sim, double *t);

/**
 * Invariants and moments of the current state.
 *
 * # Safety
 * `sim` must be a live handle and `out` writable.
 */
enum BnyStatus bny_sim_invariants(const struct BnySim *sim, struct BnyInvariants *out);

/**
 * Copies the nodal fields into caller buffers of `len` doubles each;
 * `len` must equal `bny_sim_nodes`.
 *
 * # Safety
 * The buffers must be writable for `len` doubles.
 */
enum BnyStatus bny_sim_copy_fields(const struct BnySim *sim,
                                   double *u_re,
                                   double *u_im,
                                   double *v,
                                   size_t len);

/**
 * L² distance to the exact traveling wave at the current time. Fails with
 * `InvalidArgument` unless the handle was built from bound-state data.
 *
 * # Safety
 * `sim` must be a live handle; `err_u` and `err_v` writable.
 */
enum BnyStatus bny_sim_tracking_error(const struct BnySim *sim, double *err_u, double *err_v);

/**
 * Writes the current state as a binary snapshot.
 *
 * # Safety
 * `sim` must be a live handle and `path` NUL-terminated.
 */
enum BnyStatus bny_sim_save_snapshot(const struct BnySim *sim, const char *path);

/**
 * Solves for the traveling-wave parameters.
 *
 * # Safety
 * `out` must be writable.
 */
enum BnyStatus bny_boundstate_solve(double a,
                                    double b,
                                    double s_star,
                                    double mu_star,
                                    struct BnyBoundState *out);

/**
 * Copies the last error message of this thread into `buf` (NUL-terminated,
 * truncated to `len`) and returns the full message length in bytes
 * excluding the NUL. A null `buf` only queries the length.
 *
 * # Safety
 * `buf` must be null or writable for `len` bytes.
 */
size_t bny_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *bny_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BENNEY_H */
