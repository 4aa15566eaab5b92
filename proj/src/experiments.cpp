#include "qsl/experiments.hpp"

#include "qsl/batteries.hpp"
#include "qsl/bounds.hpp"
#include "qsl/brachistochrone.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <thread>

namespace qsl {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<int> default_sweep_dims() { return {4, 8, 16, 32}; }

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<double> ranks(const std::vector<double>& values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), size_t{0});
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> rank(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    double mean_rank = 0.5 * (i + j) + 1.0;
    for (size_t t = i; t <= j; ++t) rank[order[t]] = mean_rank;
    i = j + 1;
  }
  return rank;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> ra = ranks(a), rb = ranks(b);
  double ma = 0, mb = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= ra.size();
  mb /= rb.size();
  double cov = 0, va = 0, vb = 0;
  for (size_t i = 0; i < ra.size(); ++i) {
    cov += (ra[i] - ma) * (rb[i] - mb);
    va += (ra[i] - ma) * (ra[i] - ma);
    vb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (va <= 0 || vb <= 0) return 0.0;
  return cov / std::sqrt(va * vb);
}

// Writes a tidy table in the requested format; returns the file path.
std::string emit_table(const std::string& out_dir, const std::string& stem,
                       const ExperimentConfig& config, const std::vector<std::string>& columns,
                       const std::vector<std::vector<double>>& rows) {
  OutputMeta meta = config.meta();
  if (config.format == "json") {
    nlohmann::json data = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json obj;
      for (size_t c = 0; c < columns.size(); ++c) obj[columns[c]] = r[c];
      data.push_back(obj);
    }
    nlohmann::json doc{{"meta", meta_json(meta)}, {"rows", data}};
    std::string path = out_dir + "/" + stem + ".json";
    write_text_file(path, json_dump(doc));
    return path;
  }
  CsvBuilder csv(meta, columns);
  for (const auto& r : rows) csv.row_values(r);
  std::string path = out_dir + "/" + stem + ".csv";
  write_text_file(path, csv.text());
  return path;
}

std::string emit_json(const std::string& out_dir, const std::string& stem,
                      const ExperimentConfig& config, nlohmann::json body) {
  body["meta"] = meta_json(config.meta());
  std::string path = out_dir + "/" + stem + ".json";
  write_text_file(path, json_dump(body));
  return path;
}

RealVector random_phases(int d, SampleStream& s) {
  RealVector phases(d);
  for (int k = 0; k < d; ++k) phases(k) = kTwoPi * s.uniform();
  return phases;
}

// ---------------------------------------------------------------------- //

ExperimentResult run_bounds_sweep(const ExperimentConfig& config, const std::string& out_dir) {
  struct Row {
    double purity_rho, purity_sigma;
    double t_l, t_theta, t_phi, t_unified, t_d, t_sun, t_delcampo, t_deffner, t_sun_star,
        t_deffner_star, tau;
  };
  std::vector<Row> rows(config.samples);
  SampleStream stream(config.seed);
  parallel_samples(config.samples, config.threads, [&](int i) {
    SampleStream s = stream.substream(i);
    DensityMatrix rho = bures_state(config.d, s);
    Matrix h = random_hamiltonian(config.d, s);
    Orbit orbit = unitary_orbit(rho, h, 1.0, 2);
    const DensityMatrix& sigma = orbit.final_state();
    Row& r = rows[i];
    r.purity_rho = rho.purity();
    r.purity_sigma = sigma.purity();
    r.t_l = bound_tl(rho, sigma, orbit).value;
    r.t_theta = bound_theta(rho, sigma, orbit).value;
    r.t_phi = bound_phi(rho, sigma, orbit).value;
    r.t_unified = std::max({r.t_l, r.t_theta, r.t_phi});
    r.t_d = bound_td(rho, sigma, orbit).value;
    r.t_sun = bound_sun(rho, sigma, orbit).value;
    r.t_delcampo = bound_delcampo(rho, sigma, orbit).value;
    r.t_deffner = bound_deffner(rho, sigma, orbit).value;
    r.t_sun_star = bound_sun_star(rho, sigma, orbit).value;
    r.t_deffner_star = bound_deffner_star(rho, sigma, orbit).value;
    r.tau = orbit.duration();
  });

  std::vector<std::vector<double>> table;
  table.reserve(rows.size());
  int wins = 0;
  double max_excess = 0.0;
  std::vector<double> tightness;
  tightness.reserve(rows.size());
  for (int i = 0; i < config.samples; ++i) {
    const Row& r = rows[i];
    table.push_back({static_cast<double>(i), static_cast<double>(config.seed),
                     static_cast<double>(config.d), r.purity_rho, r.purity_sigma, r.t_l, r.t_theta,
                     r.t_phi, r.t_unified, r.t_d, r.t_sun, r.t_delcampo, r.t_deffner, r.t_sun_star,
                     r.t_deffner_star, r.tau});
    double best = std::max(r.t_theta, r.t_phi);
    double x = best > 0.0 ? 1.0 - r.t_l / best : 0.0;
    tightness.push_back(x);
    if (r.t_l > best) {
      ++wins;
      if (best > 0.0) max_excess = std::max(max_excess, r.t_l / best - 1.0);
    }
  }

  ExperimentResult result;
  result.files.push_back(emit_table(
      out_dir, "bounds_sweep", config,
      {"sample", "seed", "d", "purity_rho", "purity_sigma", "t_l", "t_theta", "t_phi", "t_unified",
       "t_d", "t_sun", "t_delcampo", "t_deffner", "t_sun_star", "t_deffner_star", "tau"},
      table));

  std::sort(tightness.begin(), tightness.end());
  auto percentile = [&](double q) {
    if (tightness.empty()) return 0.0;
    size_t idx = static_cast<size_t>(q * (tightness.size() - 1));
    return tightness[idx];
  };
  nlohmann::json summary{{"samples", config.samples},
                         {"l_wins", wins},
                         {"win_fraction", config.samples ? double(wins) / config.samples : 0.0},
                         {"max_relative_excess", max_excess},
                         {"tightness_p10", percentile(0.10)},
                         {"tightness_p50", percentile(0.50)},
                         {"tightness_p90", percentile(0.90)}};
  result.files.push_back(emit_json(out_dir, "bounds_sweep_summary", config, {{"summary", summary}}));
  return result;
}

ExperimentResult run_deffner_region(const ExperimentConfig& config, const std::string& out_dir) {
  int grid = config.samples >= 5 && config.samples <= 201 ? config.samples : 21;
  double lo = 1.0 / config.d;
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < grid; ++i) {
    double x = lo + (1.0 - lo) * i / (grid - 1);
    for (int j = 0; j < grid; ++j) {
      double y = lo + (1.0 - lo) * j / (grid - 1);
      rows.push_back({x, y, deffner_region_probability(x, y, 400)});
    }
  }
  ExperimentResult result;
  result.files.push_back(
      emit_table(out_dir, "deffner_region", config, {"purity_rho", "purity_sigma", "probability"},
                 rows));
  return result;
}

BrachVariant parse_variant(const std::string& name) {
  if (name == "forward") return BrachVariant::Forward;
  if (name == "backward") return BrachVariant::Backward;
  if (name == "two-sided") return BrachVariant::TwoSided;
  throw Error(ErrorCode::InvalidArgument, "unknown variant: " + name);
}

IsospectralPair sample_pair(const ExperimentConfig& config, int d, SampleStream& s) {
  if (config.ensemble == "pure") return isospectral_pair_pure(d, s);
  if (config.ensemble == "mixed") return isospectral_pair(d, s);
  throw Error(ErrorCode::InvalidArgument, "unknown ensemble: " + config.ensemble);
}

double effective_epsilon(const ExperimentConfig& config) {
  if (config.epsilon > 0.0) return config.epsilon;
  return config.ensemble == "pure" ? kPureEpsilonDefault : kMixedEpsilonDefault;
}

ExperimentResult run_brach(const ExperimentConfig& config, const std::string& out_dir) {
  SampleStream s(config.seed);
  IsospectralPair pair = sample_pair(config, config.d, s);
  double epsilon = effective_epsilon(config);
  BrachOptions options;
  options.max_iterations = config.max_iterations;
  BrachRun run =
      solve(pair.rho, pair.sigma, random_phases(config.d, s), epsilon, parse_variant(config.variant),
            options);

  nlohmann::json iterations = nlohmann::json::array();
  for (const BrachIterate& it : run.history) {
    iterations.push_back({{"h_par_over_h", it.h_norm > 0 ? it.h_par_norm / it.h_norm : 0.0},
                          {"eta_star", it.eta_star},
                          {"tau_action", it.tau_action}});
  }
  nlohmann::json body{{"inputs",
                       {{"rho", density_to_json(pair.rho)},
                        {"sigma", density_to_json(pair.sigma)},
                        {"ensemble", config.ensemble}}},
                      {"seed", config.seed},
                      {"variant", config.variant},
                      {"epsilon", epsilon},
                      {"iterations", iterations},
                      {"converged", run.converged},
                      {"iteration_count", run.iterations},
                      {"endpoint_error", run.endpoint_error},
                      {"ratio_to_qsl", run.ratio_to_qsl},
                      {"eta", run.eta},
                      {"eta_star", run.eta_star},
                      {"final_hamiltonian", matrix_to_json(run.final_hamiltonian)}};
  ExperimentResult result;
  result.files.push_back(emit_json(out_dir, "brach_run", config, std::move(body)));
  return result;
}

ExperimentResult run_brach_sweep(const ExperimentConfig& config, const std::string& out_dir) {
  std::vector<int> dims = config.d_list.empty() ? default_sweep_dims() : config.d_list;
  double epsilon = effective_epsilon(config);
  BrachVariant variant = parse_variant(config.variant);

  struct Row {
    int d, sample, iterations;
    bool converged;
    double ratio, eta, eta_star, endpoint_error;
  };
  std::vector<std::vector<Row>> per_dim(dims.size());

  for (size_t di = 0; di < dims.size(); ++di) {
    int d = dims[di];
    per_dim[di].resize(config.samples);
    SampleStream stream(config.seed, static_cast<std::uint64_t>(d));
    BrachOptions options;
    options.max_iterations = config.max_iterations;
    parallel_samples(config.samples, config.threads, [&](int i) {
      SampleStream s = stream.substream(i);
      IsospectralPair pair = sample_pair(config, d, s);
      BrachRun run = solve(pair.rho, pair.sigma, random_phases(d, s), epsilon, variant, options);
      per_dim[di][i] = {d,       i,       run.iterations,       run.converged,
                        run.ratio_to_qsl, run.eta, run.eta_star, run.endpoint_error};
    });
  }

  std::vector<std::vector<double>> table;
  for (const auto& rows : per_dim)
    for (const Row& r : rows)
      table.push_back({static_cast<double>(r.d), static_cast<double>(r.sample),
                       static_cast<double>(r.iterations), r.converged ? 1.0 : 0.0, r.ratio, r.eta,
                       r.eta_star, r.endpoint_error});

  ExperimentResult result;
  result.files.push_back(emit_table(
      out_dir, "brach_sweep", config,
      {"d", "sample", "iterations", "converged", "ratio_to_qsl", "eta", "eta_star",
       "endpoint_error"},
      table));

  // Per-dimension medians and the logarithmic fit of the iteration counts.
  std::vector<double> log_d, med;
  nlohmann::json per_d = nlohmann::json::array();
  for (size_t di = 0; di < dims.size(); ++di) {
    std::vector<double> iters;
    int converged = 0;
    for (const Row& r : per_dim[di]) {
      if (r.converged) {
        iters.push_back(r.iterations);
        ++converged;
      }
    }
    double m = median(iters);
    log_d.push_back(std::log(static_cast<double>(dims[di])));
    med.push_back(m);
    per_d.push_back({{"d", dims[di]},
                     {"median_iterations", m},
                     {"convergence_rate",
                      config.samples ? static_cast<double>(converged) / config.samples : 0.0}});
  }
  double a = 0.0, b = 0.0;
  if (log_d.size() >= 2) {
    double mx = 0, my = 0;
    for (size_t i = 0; i < log_d.size(); ++i) {
      mx += log_d[i];
      my += med[i];
    }
    mx /= log_d.size();
    my /= med.size();
    double sxx = 0, sxy = 0;
    for (size_t i = 0; i < log_d.size(); ++i) {
      sxx += (log_d[i] - mx) * (log_d[i] - mx);
      sxy += (log_d[i] - mx) * (med[i] - my);
    }
    b = sxx > 0 ? sxy / sxx : 0.0;
    a = my - b * mx;
  }
  nlohmann::json summary{{"per_dimension", per_d},
                         {"log_fit_intercept", a},
                         {"log_fit_slope", b},
                         {"spearman_median_vs_log_d", spearman(med, log_d)},
                         {"epsilon", epsilon}};
  result.files.push_back(emit_json(out_dir, "brach_sweep_summary", config, {{"summary", summary}}));
  return result;
}

ExperimentResult run_perturb(const ExperimentConfig& config, const std::string& out_dir) {
  std::vector<double> deltas =
      config.delta > 0.0 ? std::vector<double>{config.delta}
                         : std::vector<double>{1e-4, 1e-3, 1e-2, 1e-1};
  PerturbKind kind;
  if (config.kind == "convex")
    kind = PerturbKind::Convex;
  else if (config.kind == "unitary")
    kind = PerturbKind::Unitary;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown perturbation kind: " + config.kind);

  double epsilon = effective_epsilon(config);
  BrachOptions options;
  options.max_iterations = config.max_iterations;
  std::vector<std::vector<double>> table(deltas.size() * config.samples);
  SampleStream stream(config.seed);
  parallel_samples(static_cast<int>(table.size()), config.threads, [&](int idx) {
    int di = idx / config.samples;
    int i = idx % config.samples;
    SampleStream s = stream.substream(idx);
    IsospectralPair pair = sample_pair(config, config.d, s);
    RealVector phases = random_phases(config.d, s);
    double dev = perturbation_study(pair.rho, pair.sigma, deltas[di], kind, s, epsilon, phases,
                                    options);
    table[idx] = {deltas[di], static_cast<double>(i), dev};
  });

  ExperimentResult result;
  result.files.push_back(
      emit_table(out_dir, "perturb", config, {"delta", "sample", "deviation"}, table));
  return result;
}

ExperimentResult run_battery(const ExperimentConfig& config, const std::string& out_dir) {
  ExperimentResult result;

  // Multi-copy work for the canonical three-level instance.
  RealVector populations(3);
  populations << 0.538, 0.237, 0.224;
  populations /= populations.sum();
  RealVector levels(3);
  levels << 0.0, 0.579, 1.0;
  Matrix h0 = Matrix::Zero(3, 3);
  for (int i = 0; i < 3; ++i) h0(i, i) = levels(i);
  DensityMatrix cell(populations.asDiagonal().toDenseMatrix().cast<Complex>());
  double limit = wmax_gibbs_limit(cell, h0);
  std::vector<std::vector<double>> wmax_rows;
  for (int n = 1; n <= config.n_cells; ++n)
    wmax_rows.push_back(
        {static_cast<double>(n), wmax_per_copy(populations, levels, n), limit});
  result.files.push_back(
      emit_table(out_dir, "battery_wmax", config, {"n", "wmax_per_copy", "gibbs_limit"},
                 wmax_rows));

  // Collective-advantage table for the two-level ladder.
  std::vector<std::vector<double>> adv_rows;
  for (int n = 1; n <= config.n_cells; ++n) {
    LadderAdvantage adv = advantage_ladder(n, config.e_max);
    adv_rows.push_back({static_cast<double>(n), adv.tau_parallel, adv.tau_collective, adv.gamma});
  }
  result.files.push_back(emit_table(out_dir, "battery_advantage", config,
                                    {"n", "tau_parallel", "tau_collective", "gamma"}, adv_rows));

  // Constraint-dependent summary for the thermal qubit pair.
  ChargingConstraint constraint;
  if (config.constraint == "c0")
    constraint = ChargingConstraint::C0;
  else if (config.constraint == "c1")
    constraint = ChargingConstraint::C1;
  else if (config.constraint == "c2")
    constraint = ChargingConstraint::C2;
  else if (config.constraint == "opnorm")
    constraint = ChargingConstraint::OpNorm;
  else
    throw Error(ErrorCode::InvalidArgument, "unknown constraint: " + config.constraint);

  Matrix cell_h = Matrix::Zero(2, 2);
  cell_h(1, 1) = 1.0;
  DensityMatrix rho = gibbs_state(cell_h, 1.0);
  DensityMatrix sigma = gibbs_state(cell_h, -1.0);
  AdvantageBoundInput input;
  input.n_cells = config.n_cells;
  input.k = config.k;
  input.m = config.m;
  double bound = advantage_upper_bound(constraint, input, rho, sigma);
  auto ball = advantage_separable_ball(config.n_cells, 1.0);

  nlohmann::json summary{{"constraint", config.constraint},
                         {"advantage_upper_bound", bound},
                         {"trotter_overhead", trotter_overhead(config.k, config.m)},
                         {"separable_ball_gamma_c1", ball.first},
                         {"separable_ball_gamma_c2", ball.second},
                         {"wmax_gibbs_limit", limit}};
  if (config.k >= 2 && config.n_cells >= config.k && config.n_cells <= 6) {
    int quick = std::min(config.samples, 200);
    ConjectureResult conj =
        conjecture_check(config.n_cells, config.k, quick, SampleStream(config.seed));
    summary["conjecture_max_p"] = conj.max_p;
    summary["conjecture_samples"] = conj.samples;
    summary["conjecture_violations"] = conj.violations;
  }
  result.files.push_back(emit_json(out_dir, "battery_summary", config, {{"summary", summary}}));
  return result;
}

ExperimentResult run_conjecture(const ExperimentConfig& config, const std::string& out_dir) {
  std::vector<double> p_values;
  ConjectureResult conj =
      conjecture_check(config.n_cells, config.k, config.samples, SampleStream(config.seed),
                       &p_values);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < p_values.size(); ++i)
    rows.push_back({static_cast<double>(i), p_values[i]});
  ExperimentResult result;
  result.files.push_back(emit_table(out_dir, "conjecture", config, {"sample", "p"}, rows));
  nlohmann::json summary{{"n_cells", config.n_cells},
                         {"k", config.k},
                         {"samples", conj.samples},
                         {"max_p", conj.max_p},
                         {"violations", conj.violations},
                         {"worst_violation", conj.worst_violation}};
  result.files.push_back(emit_json(out_dir, "conjecture_summary", config, {{"summary", summary}}));
  return result;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config JSON: ") + e.what());
  }
  ExperimentConfig config;
  try {
    config.command = j.at("command").get<std::string>();
    config.d = j.value("d", config.d);
    config.d_list = j.value("d_list", config.d_list);
    config.n_cells = j.value("n_cells", config.n_cells);
    config.k = j.value("k", config.k);
    config.m = j.value("m", config.m);
    config.samples = j.value("samples", config.samples);
    config.seed = j.value("seed", config.seed);
    config.epsilon = j.value("epsilon", config.epsilon);
    config.constraint = j.value("constraint", config.constraint);
    config.variant = j.value("variant", config.variant);
    config.ensemble = j.value("ensemble", config.ensemble);
    config.format = j.value("format", config.format);
    config.threads = j.value("threads", config.threads);
    config.delta = j.value("delta", config.delta);
    config.kind = j.value("kind", config.kind);
    config.e_max = j.value("e_max", config.e_max);
    config.max_iterations = j.value("max_iterations", config.max_iterations);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("bad config field: ") + e.what());
  }
  return config;
}

nlohmann::json ExperimentConfig::to_json() const {
  return nlohmann::json{{"command", command},
                        {"d", d},
                        {"d_list", d_list},
                        {"n_cells", n_cells},
                        {"k", k},
                        {"m", m},
                        {"samples", samples},
                        {"seed", seed},
                        {"epsilon", epsilon},
                        {"constraint", constraint},
                        {"variant", variant},
                        {"ensemble", ensemble},
                        {"format", format},
                        {"threads", threads},
                        {"delta", delta},
                        {"kind", kind},
                        {"e_max", e_max},
                        {"max_iterations", max_iterations}};
}

std::string ExperimentConfig::canonical_json() const { return to_json().dump(); }

OutputMeta ExperimentConfig::meta() const {
  OutputMeta meta;
  meta.command = command;
  meta.config_json = canonical_json();
  meta.config_hash = fnv1a64(meta.config_json);
  meta.seed = seed;
  return meta;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> commands{
      "bounds-sweep", "deffner-region", "brach", "brach-sweep", "perturb", "battery", "conjecture"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end())
    throw Error(ErrorCode::InvalidArgument, "unknown command: " + command);
  if (d < 2) throw Error(ErrorCode::InvalidArgument, "d must be >= 2");
  for (int dim : d_list)
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dimensions must be >= 2");
  if (samples < 0) throw Error(ErrorCode::InvalidArgument, "samples must be >= 0");
  if (threads < 1) throw Error(ErrorCode::InvalidArgument, "threads must be >= 1");
  if (n_cells < 1) throw Error(ErrorCode::InvalidArgument, "n_cells must be >= 1");
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be >= 1");
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "m must be >= 1");
  if (epsilon < 0.0 || epsilon >= 1.0)
    throw Error(ErrorCode::InvalidArgument, "epsilon must lie in [0, 1)");
  if (format != "csv" && format != "json")
    throw Error(ErrorCode::InvalidArgument, "format must be csv or json");
  if (!(e_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "e_max must be > 0");
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
}

void parallel_samples(int samples, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, samples));
  if (threads == 1) {
    for (int i = 0; i < samples; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < samples; i += threads) body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot create output directory: " + out_dir);

  if (config.command == "bounds-sweep") return run_bounds_sweep(config, out_dir);
  if (config.command == "deffner-region") return run_deffner_region(config, out_dir);
  if (config.command == "brach") return run_brach(config, out_dir);
  if (config.command == "brach-sweep") return run_brach_sweep(config, out_dir);
  if (config.command == "perturb") return run_perturb(config, out_dir);
  if (config.command == "battery") return run_battery(config, out_dir);
  if (config.command == "conjecture") return run_conjecture(config, out_dir);
  throw Error(ErrorCode::InvalidArgument, "unknown command: " + config.command);
}

}  // namespace qsl
