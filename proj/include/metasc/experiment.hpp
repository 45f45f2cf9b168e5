#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace metasc {

/// Sweep over p/q ratios and eigenvector counts on meta-graph SBM instances.
/// JSON form (`schema` must be 1):
///   {"schema":1, "template":"cycle:10", "n_per_cluster":200, "p":0.05,
///    "ratios":[2,3,5], "l_values":[3,10], "trials":10, "seed":1,
///    "restarts":10, "drop_trivial":false, "output":"results.csv"}
/// `restarts`, `drop_trivial` and `output` are optional.
struct ExperimentConfig {
  std::string template_spec;
  std::size_t n_per_cluster = 0;
  double p = 0.0;
  std::vector<double> ratios;
  std::vector<std::size_t> l_values;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  bool drop_trivial = false;
  std::optional<std::string> output;
};

/// Parses and validates; throws Parse for malformed JSON or unknown keys,
/// BadParams for values outside their ranges.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig read_experiment_config(const std::string& path);

struct TrialRow {
  double ratio;
  std::size_t l;
  std::size_t trial;
  std::uint64_t seed;  // graph seed; clustering uses derive_seed(seed, l)
  double accuracy;
  double rand;
  double ari;
  double nmi;
  double symdiff_volume;
};

struct SummaryRow {
  double ratio;
  std::size_t l;
  double accuracy;
  double rand;
  double ari;
  double nmi;
  double symdiff_volume;
};

struct SweepResult {
  std::vector<TrialRow> trials;     // ordered by (ratio, l, trial)
  std::vector<SummaryRow> summary;  // ordered by (ratio, l)
};

/// Graph seed of one (trial, ratio) cell. Derived by counter from the master
/// seed, so adding trials or ratios never changes earlier cells.
std::uint64_t sweep_graph_seed(std::uint64_t master, std::size_t trial, std::size_t ratio_index);

/// Runs every (ratio, trial) cell on a pool of `threads` workers (0 = all
/// cores). Output is independent of the thread count.
SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t threads = 0);

/// CSV with a leading `# generated ...` comment line, the header
/// `kind,ratio,l,trial,seed,accuracy,rand,ari,nmi,symdiff_volume`, one `trial`
/// row per cell and one `mean` row per (ratio, l).
void write_sweep_csv(std::ostream& out, const SweepResult& r, const std::string& generated_note);

}  // namespace metasc
