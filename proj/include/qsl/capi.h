/*
 * C interface to the qsl core library. Objects are opaque handles created and
 * destroyed through this API; every function returns a qsl_status (or a value
 * documented as such), and the last failure message is retrievable per thread.
 */

#ifndef QSL_CAPI_H
#define QSL_CAPI_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsl_status {
  QSL_OK = 0,
  QSL_ERR_INVALID_ARGUMENT = 1,
  QSL_ERR_DIMENSION = 2,
  QSL_ERR_NOT_A_STATE = 3,
  QSL_ERR_NOT_PSD = 4,
  QSL_ERR_SPECTRUM_MISMATCH = 5,
  QSL_ERR_UNDEFINED_ANGLE = 6,
  QSL_ERR_RESOURCE = 7,
  QSL_ERR_NUMERICAL = 8,
  QSL_ERR_IO = 9,
  QSL_ERR_INTERNAL = 10
} qsl_status;

typedef struct qsl_matrix qsl_matrix;       /* dense complex square matrix */
typedef struct qsl_stream qsl_stream;       /* reproducible sample stream */
typedef struct qsl_brach_run qsl_brach_run; /* iterative-search result */

const char* qsl_version(void);
/* Message of the most recent failure on this thread; empty when none. */
const char* qsl_last_error(void);

/* ------------------------------------------------------------------ */
/* Matrices. Entries are row-major dim*dim arrays; im may be NULL.     */

qsl_matrix* qsl_matrix_create(int dim, const double* re, const double* im);
void qsl_matrix_destroy(qsl_matrix* m);
int qsl_matrix_dim(const qsl_matrix* m);
qsl_status qsl_matrix_get(const qsl_matrix* m, double* re, double* im);

/* Validates Hermiticity, unit trace, and positivity. */
qsl_status qsl_density_check(const qsl_matrix* rho);

/* ------------------------------------------------------------------ */
/* States.                                                             */

qsl_status qsl_purity(const qsl_matrix* rho, double* out);
qsl_status qsl_vn_entropy(const qsl_matrix* rho, double* out);
/* Generalized Bloch components; out must hold dim*dim - 1 doubles.    */
qsl_status qsl_bloch_vector(const qsl_matrix* rho, double* out);
qsl_status qsl_gibbs_state(const qsl_matrix* h0, double beta, qsl_matrix** out);

/* ------------------------------------------------------------------ */
/* Distinguishability measures.                                        */

qsl_status qsl_fidelity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_bures_angle(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_gba_theta(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_phi_angle(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_hs_distance(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_sub_fidelity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_affinity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);
qsl_status qsl_relative_purity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out);

/* ------------------------------------------------------------------ */
/* Sampling.                                                           */

qsl_stream* qsl_stream_create(uint64_t seed, uint64_t stream_id);
void qsl_stream_destroy(qsl_stream* s);
qsl_status qsl_sample_ginibre(int d, qsl_stream* s, qsl_matrix** out);
qsl_status qsl_sample_haar_unitary(int d, qsl_stream* s, qsl_matrix** out);
qsl_status qsl_sample_bures_state(int d, qsl_stream* s, qsl_matrix** out);
qsl_status qsl_sample_hamiltonian(int d, qsl_stream* s, qsl_matrix** out);

/* ------------------------------------------------------------------ */
/* Speed-limit bounds on the constant-Hamiltonian orbit of duration    */
/* tau starting from rho; sigma is the orbit endpoint.                 */

typedef struct qsl_bound_set {
  double t_l;
  double t_theta;
  double t_phi;
  double t_unified;
  double t_d;
  double t_sun;
  double t_delcampo;
  double t_deffner;
  double t_sun_star;
  double t_deffner_star;
  double tau;
  int deffner_valid; /* 1 when an endpoint is pure */
} qsl_bound_set;

qsl_status qsl_bounds_constant_h(const qsl_matrix* rho, const qsl_matrix* hamiltonian, double tau,
                                 qsl_bound_set* out);

/* ------------------------------------------------------------------ */
/* Iterative Hamiltonian search between isospectral states.            */

enum { QSL_BRACH_FORWARD = 0, QSL_BRACH_BACKWARD = 1, QSL_BRACH_TWO_SIDED = 2 };

/* phases0 may be NULL for all-zero initialization; length dim otherwise. */
qsl_status qsl_brach_solve(const qsl_matrix* rho, const qsl_matrix* sigma, const double* phases0,
                           double epsilon, int variant, int max_iterations, qsl_brach_run** out);
void qsl_brach_destroy(qsl_brach_run* run);
int qsl_brach_iterations(const qsl_brach_run* run);
int qsl_brach_converged(const qsl_brach_run* run);
double qsl_brach_endpoint_error(const qsl_brach_run* run);
double qsl_brach_ratio_to_qsl(const qsl_brach_run* run);
double qsl_brach_eta(const qsl_brach_run* run);
double qsl_brach_eta_star(const qsl_brach_run* run);
qsl_status qsl_brach_hamiltonian(const qsl_brach_run* run, qsl_matrix** out);

/* ------------------------------------------------------------------ */
/* Batteries.                                                          */

qsl_status qsl_ergotropy(const qsl_matrix* rho, const qsl_matrix* h0, double* out);
qsl_status qsl_passive_state(const qsl_matrix* rho, const qsl_matrix* h0, qsl_matrix** out);
/* spectrum and energies are arrays of d level weights/energies. */
qsl_status qsl_wmax_per_copy(const double* spectrum, const double* energies, int d, int n_copies,
                             double* out);
qsl_status qsl_advantage_ladder(int n_cells, double e_max, double* tau_parallel,
                                double* tau_collective, double* gamma);
/* Returns k (m - 1) + 1, or -1 on bad arguments. */
int qsl_trotter_overhead(int k, int m);

/* ------------------------------------------------------------------ */
/* Experiment driver: runs a full subcommand from a JSON configuration */
/* and writes its outputs under out_dir.                               */

qsl_status qsl_experiment_run(const char* config_json, const char* out_dir);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QSL_CAPI_H */
