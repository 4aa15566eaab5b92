#include "qsl/capi.h"

#include "qsl/batteries.hpp"
#include "qsl/bounds.hpp"
#include "qsl/brachistochrone.hpp"
#include "qsl/experiments.hpp"

#include <cstring>
#include <string>

using namespace qsl;

struct qsl_matrix {
  Matrix m;
};

struct qsl_stream {
  SampleStream s;
};

struct qsl_brach_run {
  BrachRun run;
};

namespace {

thread_local std::string g_last_error;

qsl_status status_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return QSL_ERR_INVALID_ARGUMENT;
    case ErrorCode::DimensionMismatch: return QSL_ERR_DIMENSION;
    case ErrorCode::NotAState: return QSL_ERR_NOT_A_STATE;
    case ErrorCode::NotPsd: return QSL_ERR_NOT_PSD;
    case ErrorCode::SpectrumMismatch: return QSL_ERR_SPECTRUM_MISMATCH;
    case ErrorCode::UndefinedAngle: return QSL_ERR_UNDEFINED_ANGLE;
    case ErrorCode::ResourceLimit: return QSL_ERR_RESOURCE;
    case ErrorCode::Numerical: return QSL_ERR_NUMERICAL;
    case ErrorCode::Io: return QSL_ERR_IO;
  }
  return QSL_ERR_INTERNAL;
}

template <typename Body>
qsl_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return QSL_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return QSL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return QSL_ERR_INTERNAL;
  }
}

qsl_status require_handles(std::initializer_list<const void*> handles) {
  for (const void* h : handles)
    if (h == nullptr) {
      g_last_error = "null handle";
      return QSL_ERR_INVALID_ARGUMENT;
    }
  return QSL_OK;
}

DensityMatrix as_state(const qsl_matrix* m) { return DensityMatrix(m->m); }

qsl_status metric_call(const qsl_matrix* rho, const qsl_matrix* sigma, double* out,
                       double (*fn)(const DensityMatrix&, const DensityMatrix&)) {
  if (qsl_status s = require_handles({rho, sigma, out}); s != QSL_OK) return s;
  return guarded([&] { *out = fn(as_state(rho), as_state(sigma)); });
}

qsl_matrix* wrap(Matrix m) { return new qsl_matrix{std::move(m)}; }

}  // namespace

extern "C" {

const char* qsl_version(void) { return kToolVersion; }

const char* qsl_last_error(void) { return g_last_error.c_str(); }

qsl_matrix* qsl_matrix_create(int dim, const double* re, const double* im) {
  if (dim < 1 || re == nullptr) {
    g_last_error = "qsl_matrix_create: need dim >= 1 and a real part";
    return nullptr;
  }
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double imag = im ? im[i * dim + j] : 0.0;
      m(i, j) = Complex(re[i * dim + j], imag);
    }
  if (!m.allFinite()) {
    g_last_error = "qsl_matrix_create: non-finite entries";
    return nullptr;
  }
  return wrap(std::move(m));
}

void qsl_matrix_destroy(qsl_matrix* m) { delete m; }

int qsl_matrix_dim(const qsl_matrix* m) { return m ? static_cast<int>(m->m.rows()) : 0; }

qsl_status qsl_matrix_get(const qsl_matrix* m, double* re, double* im) {
  if (qsl_status s = require_handles({m, re}); s != QSL_OK) return s;
  const int d = static_cast<int>(m->m.rows());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      re[i * d + j] = m->m(i, j).real();
      if (im) im[i * d + j] = m->m(i, j).imag();
    }
  return QSL_OK;
}

qsl_status qsl_density_check(const qsl_matrix* rho) {
  if (qsl_status s = require_handles({rho}); s != QSL_OK) return s;
  return guarded([&] { as_state(rho); });
}

qsl_status qsl_purity(const qsl_matrix* rho, double* out) {
  if (qsl_status s = require_handles({rho, out}); s != QSL_OK) return s;
  return guarded([&] { *out = as_state(rho).purity(); });
}

qsl_status qsl_vn_entropy(const qsl_matrix* rho, double* out) {
  if (qsl_status s = require_handles({rho, out}); s != QSL_OK) return s;
  return guarded([&] { *out = vn_entropy(as_state(rho)); });
}

qsl_status qsl_bloch_vector(const qsl_matrix* rho, double* out) {
  if (qsl_status s = require_handles({rho, out}); s != QSL_OK) return s;
  return guarded([&] {
    DensityMatrix state = as_state(rho);
    BlochVector r = to_bloch(state, gell_mann_basis(state.dim()));
    for (Eigen::Index i = 0; i < r.r.size(); ++i) out[i] = r.r(i);
  });
}

qsl_status qsl_gibbs_state(const qsl_matrix* h0, double beta, qsl_matrix** out) {
  if (qsl_status s = require_handles({h0, out}); s != QSL_OK) return s;
  return guarded([&] { *out = wrap(gibbs_state(h0->m, beta).matrix()); });
}

qsl_status qsl_fidelity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &fidelity);
}

qsl_status qsl_bures_angle(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &bures_angle);
}

qsl_status qsl_gba_theta(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &gba_theta);
}

qsl_status qsl_phi_angle(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &phi_angle);
}

qsl_status qsl_hs_distance(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  if (qsl_status s = require_handles({rho, sigma, out}); s != QSL_OK) return s;
  return guarded([&] { *out = (rho->m - sigma->m).norm(); });
}

qsl_status qsl_sub_fidelity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &sub_fidelity);
}

qsl_status qsl_affinity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &affinity);
}

qsl_status qsl_relative_purity(const qsl_matrix* rho, const qsl_matrix* sigma, double* out) {
  return metric_call(rho, sigma, out, &relative_purity);
}

qsl_stream* qsl_stream_create(uint64_t seed, uint64_t stream_id) {
  return new qsl_stream{SampleStream(seed, stream_id)};
}

void qsl_stream_destroy(qsl_stream* s) { delete s; }

qsl_status qsl_sample_ginibre(int d, qsl_stream* s, qsl_matrix** out) {
  if (qsl_status st = require_handles({s, out}); st != QSL_OK) return st;
  return guarded([&] { *out = wrap(ginibre(d, s->s)); });
}

qsl_status qsl_sample_haar_unitary(int d, qsl_stream* s, qsl_matrix** out) {
  if (qsl_status st = require_handles({s, out}); st != QSL_OK) return st;
  return guarded([&] { *out = wrap(haar_unitary(d, s->s)); });
}

qsl_status qsl_sample_bures_state(int d, qsl_stream* s, qsl_matrix** out) {
  if (qsl_status st = require_handles({s, out}); st != QSL_OK) return st;
  return guarded([&] { *out = wrap(bures_state(d, s->s).matrix()); });
}

qsl_status qsl_sample_hamiltonian(int d, qsl_stream* s, qsl_matrix** out) {
  if (qsl_status st = require_handles({s, out}); st != QSL_OK) return st;
  return guarded([&] { *out = wrap(random_hamiltonian(d, s->s)); });
}

qsl_status qsl_bounds_constant_h(const qsl_matrix* rho, const qsl_matrix* hamiltonian, double tau,
                                 qsl_bound_set* out) {
  if (qsl_status st = require_handles({rho, hamiltonian, out}); st != QSL_OK) return st;
  return guarded([&] {
    DensityMatrix state = as_state(rho);
    Orbit orbit = unitary_orbit(state, hamiltonian->m, tau, 2);
    const DensityMatrix& sigma = orbit.final_state();
    out->t_l = bound_tl(state, sigma, orbit).value;
    out->t_theta = bound_theta(state, sigma, orbit).value;
    out->t_phi = bound_phi(state, sigma, orbit).value;
    out->t_unified = std::max({out->t_l, out->t_theta, out->t_phi});
    QslReport td = bound_td(state, sigma, orbit);
    out->t_d = td.value;
    out->t_sun = bound_sun(state, sigma, orbit).value;
    out->t_delcampo = bound_delcampo(state, sigma, orbit).value;
    out->t_deffner = bound_deffner(state, sigma, orbit).value;
    out->t_sun_star = bound_sun_star(state, sigma, orbit).value;
    out->t_deffner_star = bound_deffner_star(state, sigma, orbit).value;
    out->tau = tau;
    out->deffner_valid = td.deffner_valid ? 1 : 0;
  });
}

qsl_status qsl_brach_solve(const qsl_matrix* rho, const qsl_matrix* sigma, const double* phases0,
                           double epsilon, int variant, int max_iterations, qsl_brach_run** out) {
  if (qsl_status st = require_handles({rho, sigma, out}); st != QSL_OK) return st;
  if (variant < QSL_BRACH_FORWARD || variant > QSL_BRACH_TWO_SIDED) {
    g_last_error = "qsl_brach_solve: unknown variant";
    return QSL_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    DensityMatrix a = as_state(rho), b = as_state(sigma);
    RealVector phases = RealVector::Zero(a.dim());
    if (phases0)
      for (int k = 0; k < a.dim(); ++k) phases(k) = phases0[k];
    BrachOptions options;
    options.max_iterations = max_iterations;
    BrachRun run = solve(a, b, phases, epsilon, static_cast<BrachVariant>(variant), options);
    *out = new qsl_brach_run{std::move(run)};
  });
}

void qsl_brach_destroy(qsl_brach_run* run) { delete run; }

int qsl_brach_iterations(const qsl_brach_run* run) { return run ? run->run.iterations : -1; }

int qsl_brach_converged(const qsl_brach_run* run) {
  return run && run->run.converged ? 1 : 0;
}

double qsl_brach_endpoint_error(const qsl_brach_run* run) {
  return run ? run->run.endpoint_error : -1.0;
}

double qsl_brach_ratio_to_qsl(const qsl_brach_run* run) {
  return run ? run->run.ratio_to_qsl : -1.0;
}

double qsl_brach_eta(const qsl_brach_run* run) { return run ? run->run.eta : -1.0; }

double qsl_brach_eta_star(const qsl_brach_run* run) { return run ? run->run.eta_star : -1.0; }

qsl_status qsl_brach_hamiltonian(const qsl_brach_run* run, qsl_matrix** out) {
  if (qsl_status st = require_handles({run, out}); st != QSL_OK) return st;
  *out = wrap(run->run.final_hamiltonian);
  return QSL_OK;
}

qsl_status qsl_ergotropy(const qsl_matrix* rho, const qsl_matrix* h0, double* out) {
  if (qsl_status st = require_handles({rho, h0, out}); st != QSL_OK) return st;
  return guarded([&] { *out = ergotropy(as_state(rho), h0->m); });
}

qsl_status qsl_passive_state(const qsl_matrix* rho, const qsl_matrix* h0, qsl_matrix** out) {
  if (qsl_status st = require_handles({rho, h0, out}); st != QSL_OK) return st;
  return guarded([&] { *out = wrap(passive_state(as_state(rho), h0->m).state.matrix()); });
}

qsl_status qsl_wmax_per_copy(const double* spectrum, const double* energies, int d, int n_copies,
                             double* out) {
  if (qsl_status st = require_handles({spectrum, energies, out}); st != QSL_OK) return st;
  return guarded([&] {
    RealVector p(d), e(d);
    for (int i = 0; i < d; ++i) {
      p(i) = spectrum[i];
      e(i) = energies[i];
    }
    *out = wmax_per_copy(p, e, n_copies);
  });
}

qsl_status qsl_advantage_ladder(int n_cells, double e_max, double* tau_parallel,
                                double* tau_collective, double* gamma) {
  if (qsl_status st = require_handles({tau_parallel, tau_collective, gamma}); st != QSL_OK)
    return st;
  return guarded([&] {
    LadderAdvantage adv = advantage_ladder(n_cells, e_max);
    *tau_parallel = adv.tau_parallel;
    *tau_collective = adv.tau_collective;
    *gamma = adv.gamma;
  });
}

int qsl_trotter_overhead(int k, int m) {
  if (k < 1 || m < 1) return -1;
  return trotter_overhead(k, m);
}

qsl_status qsl_experiment_run(const char* config_json, const char* out_dir) {
  if (qsl_status st = require_handles({config_json, out_dir}); st != QSL_OK) return st;
  return guarded([&] {
    ExperimentConfig config = ExperimentConfig::from_json(config_json);
    run_experiment(config, out_dir);
  });
}

}  // extern "C"
