#include "metasc/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "metasc/error.hpp"
#include "metasc/ext_real.hpp"
#include "metasc/generators.hpp"
#include "metasc/metrics.hpp"
#include "metasc/pipeline.hpp"
#include "metasc/rng.hpp"

namespace metasc {

namespace {

using nlohmann::json;

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::Parse, std::string("config is missing \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("config field \"") + key + "\": " + e.what());
  }
}

template <class T>
T field_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? field<T>(j, key) : fallback;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::Parse, "config must be a JSON object");
  static const std::vector<std::string> known{"schema", "template", "n_per_cluster", "p",        "ratios",      "l_values",
                                              "trials", "seed",     "restarts",      "drop_trivial", "output"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::Parse, "unknown config key \"" + key + "\"");
    }
  }
  if (field<int>(j, "schema") != 1) throw Error(ErrorCode::Parse, "unsupported config schema (expected 1)");

  ExperimentConfig c;
  c.template_spec = field<std::string>(j, "template");
  c.n_per_cluster = field<std::size_t>(j, "n_per_cluster");
  c.p = field<double>(j, "p");
  c.ratios = field<std::vector<double>>(j, "ratios");
  c.l_values = field<std::vector<std::size_t>>(j, "l_values");
  c.trials = field<std::size_t>(j, "trials");
  c.seed = field<std::uint64_t>(j, "seed");
  c.restarts = field_or<std::size_t>(j, "restarts", 10);
  c.drop_trivial = field_or<bool>(j, "drop_trivial", false);
  if (j.contains("output")) c.output = field<std::string>(j, "output");

  const MetaTemplate t = parse_template(c.template_spec);
  if (c.trials < 1) throw Error(ErrorCode::BadParams, "trials must be >= 1");
  if (c.restarts < 1) throw Error(ErrorCode::BadParams, "restarts must be >= 1");
  if (c.ratios.empty() || c.l_values.empty()) throw Error(ErrorCode::BadParams, "ratios and l_values must be non-empty");
  for (double r : c.ratios) {
    if (!(r >= 1.0)) throw Error(ErrorCode::BadParams, "every p/q ratio must be >= 1, got " + format_real(r));
  }
  for (std::size_t l : c.l_values) {
    if (l < 1 || l > t.k) {
      throw Error(ErrorCode::BadParams, "l=" + std::to_string(l) + " outside 1.." + std::to_string(t.k));
    }
    if (c.drop_trivial && l < 2) throw Error(ErrorCode::BadParams, "drop_trivial needs every l >= 2");
  }
  if (!(c.p > 0.0 && c.p <= 1.0)) throw Error(ErrorCode::BadParams, "p must lie in (0, 1]");
  return c;
}

ExperimentConfig read_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_experiment_config(ss.str());
}

std::uint64_t sweep_graph_seed(std::uint64_t master, std::size_t trial, std::size_t ratio_index) {
  return derive_seed(derive_seed(master, trial), ratio_index);
}

SweepResult run_sweep(const ExperimentConfig& cfg, std::size_t threads) {
  const MetaTemplate tmpl = parse_template(cfg.template_spec);
  const std::size_t nr = cfg.ratios.size();
  const std::size_t nl = cfg.l_values.size();
  const std::size_t cells = nr * cfg.trials;
  // rows[(ratio * nl + l) * trials + trial]
  std::vector<TrialRow> rows(nr * nl * cfg.trials);

  auto run_cell = [&](std::size_t cell) {
    const std::size_t ri = cell / cfg.trials;
    const std::size_t trial = cell % cfg.trials;
    const double q = cfg.p / cfg.ratios[ri];
    const std::uint64_t gseed = sweep_graph_seed(cfg.seed, trial, ri);
    const SbmInstance inst = sbm_meta(tmpl, cfg.n_per_cluster, cfg.p, q, gseed);
    for (std::size_t li = 0; li < nl; ++li) {
      const std::size_t l = cfg.l_values[li];
      ClusterOptions co;
      co.kmeans.restarts = cfg.restarts;
      co.kmeans.threads = 1;
      co.embed.drop_trivial = cfg.drop_trivial;
      const Clustering out = spectral_cluster(inst.graph, tmpl.k, l, co, derive_seed(gseed, l));
      const PairIndices pi = pair_indices(out, inst.truth);
      rows[(ri * nl + li) * cfg.trials + trial] = TrialRow{cfg.ratios[ri],
                                                           l,
                                                           trial,
                                                           gseed,
                                                           accuracy(out, inst.truth).accuracy,
                                                           pi.rand,
                                                           pi.ari,
                                                           pi.nmi,
                                                           symdiff_volume(out, inst.truth, inst.graph)};
    }
  };

  const std::size_t workers =
      std::min(cells, threads ? threads : static_cast<std::size_t>(std::max(1u, std::thread::hardware_concurrency())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells && !failed; c = next++) {
          try {
            run_cell(c);
          } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult r;
  r.trials = std::move(rows);
  for (std::size_t ri = 0; ri < nr; ++ri) {
    for (std::size_t li = 0; li < nl; ++li) {
      SummaryRow s{cfg.ratios[ri], cfg.l_values[li], 0, 0, 0, 0, 0};
      for (std::size_t t = 0; t < cfg.trials; ++t) {
        const TrialRow& row = r.trials[(ri * nl + li) * cfg.trials + t];
        s.accuracy += row.accuracy;
        s.rand += row.rand;
        s.ari += row.ari;
        s.nmi += row.nmi;
        s.symdiff_volume += row.symdiff_volume;
      }
      const auto tn = static_cast<double>(cfg.trials);
      s.accuracy /= tn;
      s.rand /= tn;
      s.ari /= tn;
      s.nmi /= tn;
      s.symdiff_volume /= tn;
      r.summary.push_back(s);
    }
  }
  return r;
}

void write_sweep_csv(std::ostream& out, const SweepResult& r, const std::string& generated_note) {
  out << "# generated " << generated_note << '\n';
  out << "kind,ratio,l,trial,seed,accuracy,rand,ari,nmi,symdiff_volume\n";
  for (const TrialRow& t : r.trials) {
    out << "trial," << format_real(t.ratio) << ',' << t.l << ',' << t.trial << ',' << t.seed << ','
        << format_real(t.accuracy) << ',' << format_real(t.rand) << ',' << format_real(t.ari) << ','
        << format_real(t.nmi) << ',' << format_real(t.symdiff_volume) << '\n';
  }
  for (const SummaryRow& s : r.summary) {
    out << "mean," << format_real(s.ratio) << ',' << s.l << ",,," << format_real(s.accuracy) << ','
        << format_real(s.rand) << ',' << format_real(s.ari) << ',' << format_real(s.nmi) << ','
        << format_real(s.symdiff_volume) << '\n';
  }
}

}  // namespace metasc
