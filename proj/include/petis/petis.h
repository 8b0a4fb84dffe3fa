/*
 * petis: periodic event-triggered impulsive stabilization toolkit.
 *
 * C interface to the simulation engine, certificate math and analysis
 * routines. Objects are opaque handles created by petis_*_create / returned
 * by petis_simulate and released with the matching *_destroy function.
 * Every fallible call returns a petis_status; on failure a human-readable
 * message for the calling thread is available from petis_last_error().
 *
 * Matrices are passed as dense row-major arrays.
 */
#ifndef PETIS_PETIS_H
#define PETIS_PETIS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(PETIS_BUILDING_LIBRARY)
#    define PETIS_API __declspec(dllexport)
#  else
#    define PETIS_API __declspec(dllimport)
#  endif
#else
#  define PETIS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum petis_status {
    PETIS_OK = 0,
    PETIS_ERR_INVALID_ARGUMENT = 1,
    PETIS_ERR_DOMAIN = 2,
    PETIS_ERR_DIVERGENCE = 3,
    PETIS_ERR_CERTIFICATE = 4,
    PETIS_ERR_NUMERIC = 5,
    PETIS_ERR_RANGE = 6,
    PETIS_ERR_IO = 7,
    PETIS_ERR_INTERNAL = 8
} petis_status;

typedef struct petis_model petis_model;
typedef struct petis_record petis_record;

/* Threshold a (1-b)^k, checked every `delta` steps. */
typedef struct petis_trigger {
    double a;
    double b;
    int64_t delta;
} petis_trigger;

/* Actuator delay. When has_components is nonzero, gamma1 + gamma2 must equal
 * gamma. */
typedef struct petis_delay {
    int64_t gamma;
    int64_t gamma1;
    int64_t gamma2;
    int has_components;
} petis_delay;

typedef struct petis_condition {
    double lhs;
    int satisfied;
    double margin;
    double rho_bound;
} petis_condition;

typedef struct petis_certificate_info {
    double c;
    double rho;
    double growth_constant; /* max(c, 1) */
} petis_certificate_info;

typedef struct petis_sim_options {
    int allow_v0_above_a;
    double divergence_bound; /* <= 0 selects the default 1e12 */
} petis_sim_options;

typedef struct petis_subthreshold_result {
    int ok;
    int64_t first_violation_event; /* -1 if none */
    int64_t violation_step;        /* -1 if none */
} petis_subthreshold_result;

typedef struct petis_envelope_result {
    int ok;
    double max_ratio;
    int64_t first_violation; /* -1 if none */
} petis_envelope_result;

typedef struct petis_estimate {
    double c_hat;
    double rho_hat;
    size_t sample_count;
    double region_radius;
} petis_estimate;

/* f(x, u) -> out (length n). Return 0 on success. */
typedef int (*petis_system_fn)(const double* x, const double* u, double* out, void* user);
/* k(x) -> out (length m). */
typedef int (*petis_law_fn)(const double* x, double* out, void* user);
/* V(x). */
typedef double (*petis_lyapunov_fn)(const double* x, void* user);

PETIS_API const char* petis_version(void);
PETIS_API const char* petis_last_error(void);
/* Step index carried by the last PETIS_ERR_DIVERGENCE on this thread, or -1. */
PETIS_API int64_t petis_last_divergence_step(void);
PETIS_API const char* petis_status_string(petis_status status);

/* ---- certificate math ---------------------------------------------------- */

PETIS_API petis_status petis_threshold(const petis_trigger* trigger, int64_t k, double* out);
PETIS_API petis_status petis_log_threshold(const petis_trigger* trigger, int64_t k, double* out);
PETIS_API petis_status petis_check_condition(double rho, double c, const petis_trigger* trigger,
                                             const petis_delay* delay, petis_condition* out);
PETIS_API petis_status petis_crossing_time(double v0, const petis_trigger* trigger, double c,
                                           double* out);
PETIS_API petis_status petis_decay_envelope(const petis_trigger* trigger, const petis_delay* delay,
                                            double c, int64_t k, double* out);
PETIS_API petis_status petis_stability_radius(const petis_model* model, double epsilon,
                                              const petis_trigger* trigger,
                                              const petis_delay* delay, double* sigma,
                                              double* guaranteed_radius);

/* ---- models -------------------------------------------------------------- */

/* Names: "ex1-c103", "ex1-a2of0.1", "ex2-paper", "ex2-designed", "ex3-reference". */
PETIS_API petis_status petis_model_create_named(const char* name, int64_t gamma,
                                                petis_model** out);
PETIS_API petis_status petis_model_create_scalar(double a1, double a2, double b, double gain,
                                                 int64_t gamma, petis_model** out);
PETIS_API petis_status petis_model_create_linear(int n, int m, const double* a, const double* b,
                                                 const double* gain, int64_t gamma,
                                                 petis_model** out);
/* c_diag and lipschitz have n entries; activation is tanh. */
PETIS_API petis_status petis_model_create_network(int n, int m, const double* c_diag,
                                                  const double* a, const double* b,
                                                  const double* gain, const double* lipschitz,
                                                  int64_t gamma, petis_model** out);
/* class_k is "identity" or "square" (used for both alpha and beta). The
 * callbacks must stay valid while the model is alive. */
PETIS_API petis_status petis_model_create_custom(int n, int m, petis_system_fn f, petis_law_fn law,
                                                 petis_lyapunov_fn v, const char* class_k,
                                                 double c, double rho, int64_t gamma, void* user,
                                                 petis_model** out);
PETIS_API void petis_model_destroy(petis_model* model);
/* New model identical to `model` but carrying user-claimed certificate
 * constants c and rho. Nothing is checked beyond c > 0 and rho >= 0; use
 * petis_estimate_constants to test the claim. */
PETIS_API petis_status petis_model_with_constants(const petis_model* model, double c, double rho,
                                                  petis_model** out);

PETIS_API int petis_model_state_dim(const petis_model* model);
PETIS_API int petis_model_input_dim(const petis_model* model);
/* "scalar", "linear", "network" or "custom". */
PETIS_API const char* petis_model_kind(const petis_model* model);
PETIS_API const char* petis_model_name(const petis_model* model);
PETIS_API int64_t petis_model_gamma(const petis_model* model);
PETIS_API petis_status petis_model_certificate(const petis_model* model,
                                               petis_certificate_info* out);
PETIS_API petis_status petis_model_lyapunov(const petis_model* model, const double* x,
                                            double* out);
/* Copies a named model parameter (row-major) into out[0..capacity). Keys:
 * scalar "A1","A2","B","K"; linear "A","B","K"; network "C","A","B","K","L".
 * rows/cols receive the shape. */
PETIS_API petis_status petis_model_parameter(const petis_model* model, const char* key,
                                             double* out, size_t capacity, int* rows, int* cols);

/* ---- engine -------------------------------------------------------------- */

PETIS_API petis_status petis_simulate(const petis_model* model, const petis_trigger* trigger,
                                      const petis_delay* delay, const double* x0, int64_t horizon,
                                      const petis_sim_options* options, petis_record** out);
/* Oracle event sequence. *count receives the number of events even when it
 * exceeds capacity (then only capacity entries are written). */
PETIS_API petis_status petis_brute_force_events(const petis_model* model,
                                                const petis_trigger* trigger,
                                                const petis_delay* delay, const double* x0,
                                                int64_t horizon, const petis_sim_options* options,
                                                int64_t* out, size_t capacity, size_t* count);
PETIS_API void petis_record_destroy(petis_record* record);

PETIS_API int64_t petis_record_horizon(const petis_record* record);
PETIS_API size_t petis_record_event_count(const petis_record* record);
PETIS_API int petis_record_trailing_unactuated(const petis_record* record);
PETIS_API int petis_record_exploratory(const petis_record* record);
PETIS_API petis_status petis_record_event_times(const petis_record* record, int64_t* out,
                                                size_t capacity, size_t* count);
PETIS_API petis_status petis_record_v_series(const petis_record* record, double* out,
                                             size_t capacity, size_t* count);
PETIS_API petis_status petis_record_state(const petis_record* record, int64_t k, double* out);
/* *has_value is 0 when fewer than two events occurred. */
PETIS_API petis_status petis_record_min_inter_event(const petis_record* record, int64_t* out,
                                                    int* has_value);
PETIS_API petis_status petis_verify_post_impulse(const petis_record* record,
                                                 const petis_trigger* trigger,
                                                 const petis_delay* delay,
                                                 petis_subthreshold_result* out);
PETIS_API petis_status petis_verify_envelope(const petis_record* record,
                                             const petis_trigger* trigger,
                                             const petis_delay* delay, double c,
                                             petis_envelope_result* out);
PETIS_API petis_status petis_record_write_csv(const petis_record* record, const char* path);
PETIS_API petis_status petis_record_write_plot_csv(const petis_record* record,
                                                   const petis_trigger* trigger,
                                                   const petis_delay* delay, double c,
                                                   const char* path);

/* ---- analysis ------------------------------------------------------------ */

/* Witness buffers (n entries each) may be NULL. */
PETIS_API petis_status petis_estimate_constants(const petis_model* model,
                                                const petis_delay* delay, double region_radius,
                                                size_t sample_count, uint64_t seed,
                                                petis_estimate* out, double* c_witness,
                                                double* rho_witness);
PETIS_API petis_status petis_scalar_gain_interval(double a1, double a2, double b,
                                                  const petis_trigger* trigger, double* lower,
                                                  double* upper, int* empty);
PETIS_API petis_status petis_linear_constants(int n, int m, const double* a, const double* b,
                                              const double* gain, int64_t gamma, double* c,
                                              double* rho);
/* gain_out receives m*n entries. */
PETIS_API petis_status petis_design_linear_gain(int n, int m, const double* a, const double* b,
                                                int64_t gamma, double target_rho,
                                                double* gain_out, double* achieved_rho,
                                                int* target_met);
PETIS_API petis_status petis_network_constants(int n, int m, const double* c_diag,
                                               const double* a, const double* b,
                                               const double* gain, const double* lipschitz,
                                               double* c, double* rho_min);
PETIS_API petis_status petis_schur_feasible(int n, int m, const double* c_diag, const double* a,
                                            const double* b, const double* gain,
                                            const double* lipschitz, double rho, int* feasible);
PETIS_API petis_status petis_schur_boundary(int n, int m, const double* c_diag, const double* a,
                                            const double* b, const double* gain,
                                            const double* lipschitz, double lo, double hi,
                                            double tolerance, double* out);
PETIS_API petis_status petis_spectral_norm(int rows, int cols, const double* m, double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PETIS_PETIS_H */
