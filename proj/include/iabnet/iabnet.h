/*
 * iabnet: analytical and Monte-Carlo evaluation of cache-enabled mmWave
 * heterogeneous networks with in-band wireless backhaul.
 *
 * All entry points are C ABI. Objects are opaque handles; every fallible
 * call returns an iabnet_status and leaves a human-readable message in
 * iabnet_last_error() (thread-local). Angles of use:
 *
 *   iabnet_config* cfg = iabnet_config_create();
 *   iabnet_config_set(cfg, "cache.C", "100");
 *   iabnet_engine* eng = iabnet_engine_create(cfg);
 *   double cov[3];
 *   iabnet_coverage(eng, IABNET_TIER_SBS, 10.0, IABNET_MODE_GENERAL, -1, cov);
 */
#ifndef IABNET_H
#define IABNET_H

#include <stddef.h>
#include <stdint.h>

/* The shared library is built with hidden visibility; only the functions
 * below are exported. */
#if defined(_WIN32)
#ifdef IABNET_BUILD
#define IABNET_API __declspec(dllexport)
#else
#define IABNET_API __declspec(dllimport)
#endif
#else
#ifdef IABNET_BUILD
#define IABNET_API __attribute__((visibility("default")))
#else
#define IABNET_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  IABNET_OK = 0,        /* success */
  IABNET_TOLERANCE = 1, /* comparison exceeded the configured tolerance */
  IABNET_USAGE = 2,     /* bad argument, key, or configuration */
  IABNET_NUMERIC = 3    /* quadrature failed to converge */
} iabnet_status;

typedef enum {
  IABNET_TIER_SBS = 0,
  IABNET_TIER_MBS = 1,
  IABNET_TIER_BACKHAUL = 2
} iabnet_tier;

typedef enum {
  IABNET_MODE_GENERAL = 0,       /* noise + interference */
  IABNET_MODE_NOISE_ONLY = 1,    /* interference dropped */
  IABNET_MODE_INTF_LIMITED = 2   /* high-density LoS approximation */
} iabnet_mode;

typedef enum {
  IABNET_OBJECTIVE_APT = 0,
  IABNET_OBJECTIVE_ASE = 1
} iabnet_objective;

typedef struct iabnet_config iabnet_config;
typedef struct iabnet_engine iabnet_engine;

/* Library version string, e.g. "1.0.0". */
IABNET_API const char* iabnet_version(void);

/* Message describing the most recent failure on this thread. */
IABNET_API const char* iabnet_last_error(void);

/* Frees strings returned through char** out-parameters. */
IABNET_API void iabnet_free_string(char* s);

/* ---- configuration ---------------------------------------------------- */

/* Creates a config pre-filled with the built-in defaults. */
IABNET_API iabnet_config* iabnet_config_create(void);
IABNET_API iabnet_config* iabnet_config_clone(const iabnet_config* cfg);
IABNET_API void iabnet_config_destroy(iabnet_config* cfg);

/* Loads key=value lines (dotted sections, '#' comments) from a file. */
IABNET_API iabnet_status iabnet_config_load_file(iabnet_config* cfg, const char* path);

/* Applies IABNET_-prefixed environment overrides
 * (IABNET_power__P_s_tot=9.0 sets power.P_s_tot). */
IABNET_API iabnet_status iabnet_config_apply_env(iabnet_config* cfg);

IABNET_API iabnet_status iabnet_config_set(iabnet_config* cfg, const char* key,
                                const char* value);
IABNET_API iabnet_status iabnet_config_get(const iabnet_config* cfg, const char* key,
                                char* buf, size_t buflen);

/* Full validation; IABNET_USAGE with a message naming the offending key. */
IABNET_API iabnet_status iabnet_config_validate(const iabnet_config* cfg);

/* Canonical sorted key=value serialization (malloc'd; free with
 * iabnet_free_string). */
IABNET_API iabnet_status iabnet_config_serialize(const iabnet_config* cfg, char** out);

/* Stable 64-bit fingerprint of the canonical serialization. */
IABNET_API uint64_t iabnet_config_fingerprint(const iabnet_config* cfg);

/* ---- derived scalars --------------------------------------------------- */

/* Cache hit ratio p_h for capacity C (files). */
IABNET_API iabnet_status iabnet_cache_hit_ratio(const iabnet_config* cfg, int C,
                                     double* out);
/* Largest cache capacity the SBS power budget admits. */
IABNET_API iabnet_status iabnet_max_cache_capacity(const iabnet_config* cfg, int* out);
/* Per-link association mass; state: 0 LoS, 1 NLoS. */
IABNET_API iabnet_status iabnet_association_mass(const iabnet_config* cfg, int tier,
                                      int state, double* out);

/* ---- analytical engine -------------------------------------------------- */

/* Validates the config and captures a snapshot of it. */
IABNET_API iabnet_engine* iabnet_engine_create(const iabnet_config* cfg);
IABNET_API void iabnet_engine_destroy(iabnet_engine* eng);

/* Coverage P[SINR > gamma] split by serving-link state.
 * gamma_db in dB; cache_files overrides cache.C (-1 keeps the config value);
 * out = {LoS part, NLoS part, total}. */
IABNET_API iabnet_status iabnet_coverage(iabnet_engine* eng, int tier, double gamma_db,
                              int mode, int cache_files, double out[3]);

/* Conditional coverage at a pinned serving distance r (metres). */
IABNET_API iabnet_status iabnet_conditional_coverage(iabnet_engine* eng, int tier,
                                          int state, double gamma_db,
                                          double r, int mode, double* out);

/* Average potential throughput, bit/s per m^2, at partition eta, cache C,
 * threshold gamma0 (dB).
 * out = {sbs_ll, sbs_ln, sbs_nl, sbs_nn, mbs_los, mbs_nlos, total}. */
IABNET_API iabnet_status iabnet_apt(iabnet_engine* eng, double eta, int cache_files,
                         double gamma0_db, double out[7]);

/* Area spectral efficiency, bit/s/Hz per m^2; variant is an iabnet_mode
 * (general / noise-only / interference-limited).
 * out = {sbs, mbs, total}. */
IABNET_API iabnet_status iabnet_ase(iabnet_engine* eng, double eta, int cache_files,
                         int variant, double out[3]);

/* argmax over eta of the chosen objective (0.01 grid + golden-section
 * refinement to 1e-3, ties toward smaller eta). */
IABNET_API iabnet_status iabnet_optimal_partition(iabnet_engine* eng, int cache_files,
                                       int objective, double gamma0_db,
                                       int variant, double* out);

/* eta*(C) - eta*(0) under the ASE objective. */
IABNET_API iabnet_status iabnet_saved_spectrum(iabnet_engine* eng, int cache_files,
                                    double* out);

/* P[user spectral efficiency > rho] conditional on serving distances.
 * SBS-served users: out4 = {LL, LN, NL, NN} (access state, backhaul state).
 * MBS-served users: out2 = {LoS, NLoS}. */
IABNET_API iabnet_status iabnet_rate_ccdf_sbs(const iabnet_config* cfg, double rho,
                                   double r_s, double r_bh, double eta,
                                   int cache_files, double out4[4]);
IABNET_API iabnet_status iabnet_rate_ccdf_mbs(const iabnet_config* cfg, double rho,
                                   double r_m, double eta, int cache_files,
                                   double out2[2]);

/* ---- Monte-Carlo -------------------------------------------------------- */

typedef struct {
  double window_radius; /* metres; 0 selects the edge-effect bound */
  long long drops;
  unsigned long long seed;
  int jobs;          /* worker threads; results identical for any value */
  double eta;        /* access bandwidth fraction */
  int cache_files;   /* cache capacity C */
  double gamma0_db;  /* APT threshold, dB */
} iabnet_sim_params;

/* Fills params with the default simulation settings. */
IABNET_API void iabnet_sim_params_init(iabnet_sim_params* params);

/* Runs the drop simulator and renders the estimator report as CSV
 * (columns: quantity,gamma_db,value,ci_half_width). gammas_db may be NULL
 * when n_gammas is 0. */
IABNET_API iabnet_status iabnet_simulate_csv(const iabnet_config* cfg,
                                  const iabnet_sim_params* params,
                                  const double* gammas_db, size_t n_gammas,
                                  char** csv_out);

/* Side-by-side analytic vs Monte-Carlo report as CSV (columns:
 * quantity,gamma_db,analytic,simulated,ci_half_width,abs_gap,allowed,flag).
 * Probability rows allow max(tol_prob, 3*ci); rate rows allow
 * max(tol_rel*|analytic|, 3*ci). Returns IABNET_TOLERANCE when any row is
 * flagged (the CSV is still produced). */
IABNET_API iabnet_status iabnet_compare_csv(iabnet_engine* eng,
                                 const iabnet_sim_params* params,
                                 const double* gammas_db, size_t n_gammas,
                                 double tol_prob, double tol_rel,
                                 char** csv_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* IABNET_H */
