#pragma once

#include <string>
#include <vector>

#include "qsl/io.hpp"

namespace qsl {

// ---------------------------------------------------------------------------
// Reproducible experiment drivers behind the CLI subcommands. A configuration
// plus the binary version reproduces every output byte for byte: sampling is
// keyed by per-sample substreams, rows are emitted in sample order regardless
// of the thread count, and no output embeds timestamps or paths.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string command;           // bounds-sweep, deffner-region, brach,
                                 // brach-sweep, perturb, battery, conjecture
  int d = 3;
  std::vector<int> d_list;       // brach-sweep dimensions; falls back to {d}
  int n_cells = 4;
  int k = 2;
  int m = 1;
  int samples = 1000;
  std::uint64_t seed = 1;
  double epsilon = 0.0;          // 0 selects the per-ensemble default
  std::string constraint = "c0";  // c0 | c1 | c2 | opnorm
  std::string variant = "forward";
  std::string ensemble = "mixed";  // brach runs: pure | mixed
  std::string format = "csv";      // csv | json
  int threads = 1;
  double delta = 0.0;            // perturb strength; 0 selects a default grid
  std::string kind = "unitary";  // perturb: convex | unitary
  double e_max = 1.0;            // battery energy budget
  int max_iterations = 1000;

  static ExperimentConfig from_json(const std::string& text);
  nlohmann::json to_json() const;
  std::string canonical_json() const;
  OutputMeta meta() const;
  void validate() const;
};

struct ExperimentResult {
  std::vector<std::string> files;  // paths written, in emission order
};

/// Runs one experiment, writing its outputs under out_dir (created if absent).
ExperimentResult run_experiment(const ExperimentConfig& config, const std::string& out_dir);

/// Deterministic sample-indexed parallel map: worker w handles samples
/// { w, w + threads, ... }; results land in a pre-sized vector, so the output
/// is independent of scheduling.
void parallel_samples(int samples, int threads, const std::function<void(int)>& body);

}  // namespace qsl
