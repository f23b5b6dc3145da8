/* C interface to the annuli lattice-counting laboratory.
 *
 * All functions return an annuli_status; out-parameters are written only on
 * ANNULI_OK.  Objects are opaque handles released with the matching _free
 * (free functions accept NULL).  annuli_last_error() returns a thread-local
 * message describing the most recent failure on the calling thread.
 */
#ifndef ANNULI_H
#define ANNULI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum annuli_status {
  ANNULI_OK = 0,
  ANNULI_ERR_INVALID = 1,  /* bad argument or config */
  ANNULI_ERR_DOMAIN = 2,   /* evaluation outside mathematical domain */
  ANNULI_ERR_BUDGET = 3,   /* enumeration would exceed memory budget */
  ANNULI_ERR_IO = 4,       /* file read/write failure */
  ANNULI_ERR_INTERNAL = 5
} annuli_status;

typedef enum annuli_side { ANNULI_PRIMAL = 0, ANNULI_DUAL = 1 } annuli_side;
typedef enum annuli_zeta_method {
  ANNULI_ZETA_DIRECT = 0,
  ANNULI_ZETA_INTEGRAL = 1
} annuli_zeta_method;

typedef struct annuli_lattice annuli_lattice;
typedef struct annuli_kernel annuli_kernel;
typedef struct annuli_spectrum annuli_spectrum;
typedef struct annuli_config annuli_config;

const char* annuli_last_error(void);

/* ---- lattice and counting ---------------------------------------------- */

annuli_status annuli_lattice_create(double alpha, annuli_lattice** out);
void annuli_lattice_free(annuli_lattice* lat);

annuli_status annuli_count_sharp(const annuli_lattice* lat, double t,
                                 int64_t* out);
annuli_status annuli_remainder_sharp(const annuli_lattice* lat, double t,
                                     double rho, double* out);

/* ---- smoothing --------------------------------------------------------- */

annuli_status annuli_kernel_create(int grid_points, annuli_kernel** out);
void annuli_kernel_free(annuli_kernel* kernel);
annuli_status annuli_kernel_eval(const annuli_kernel* kernel, double x,
                                 double* out);

annuli_status annuli_smooth_remainder(const annuli_lattice* lat,
                                      const annuli_kernel* kernel, double M,
                                      double L, double t, double* out);
annuli_status annuli_theoretical_sigma2(const annuli_lattice* lat,
                                        const annuli_kernel* kernel, double L,
                                        double M, double* out);

/* ---- spectrum ---------------------------------------------------------- */

annuli_status annuli_spectrum_create(const annuli_lattice* lat,
                                     annuli_side side, double cutoff,
                                     annuli_spectrum** out);
void annuli_spectrum_free(annuli_spectrum* spec);
annuli_status annuli_spectrum_size(const annuli_spectrum* spec, int64_t* out);
annuli_status annuli_spectrum_entry(const annuli_spectrum* spec, int64_t index,
                                    double* squared_norm, int* n, int* m,
                                    int* multiplicity);
annuli_status annuli_spectrum_min_gap(const annuli_spectrum* spec, double* out);
annuli_status annuli_spectrum_export_csv(const annuli_spectrum* spec,
                                         const char* path);

/* ---- Epstein zeta ------------------------------------------------------ */

annuli_status annuli_epstein_eval(double gamma, double s_re, double s_im,
                                  annuli_zeta_method method, double* out_re,
                                  double* out_im);

/* ---- configuration and experiments ------------------------------------- */

annuli_status annuli_config_create(annuli_config** out);
annuli_status annuli_config_load(const char* path, annuli_config** out);
void annuli_config_free(annuli_config* cfg);
/* Keys: experiment, alpha, T, L, M, window, n_samples, seed, out_dir,
 * write_samples.  Values are strings exactly as they appear in the TOML. */
annuli_status annuli_config_set(annuli_config* cfg, const char* key,
                                const char* value);
/* Caller frees the returned TOML text with annuli_string_free. */
annuli_status annuli_config_emit(const annuli_config* cfg, char** out);
void annuli_string_free(char* s);

/* Runs the configured experiment; *exit_status is 0 iff all configured
 * tolerance checks passed.  Report files are written into out_dir. */
annuli_status annuli_run_experiment(const annuli_config* cfg,
                                    int* exit_status);

#ifdef __cplusplus
}
#endif

#endif /* ANNULI_H */
