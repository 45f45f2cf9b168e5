// metasc: generate instances, cluster, evaluate, verify theory, sweep.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "metasc/error.hpp"
#include "metasc/experiment.hpp"
#include "metasc/ext_real.hpp"
#include "metasc/generators.hpp"
#include "metasc/io.hpp"
#include "metasc/metagraph.hpp"
#include "metasc/metrics.hpp"
#include "metasc/pipeline.hpp"
#include "metasc/rng.hpp"
#include "metasc/similarity.hpp"
#include "metasc/theory.hpp"

namespace {

using namespace metasc;

constexpr int kExitError = 1;
constexpr int kExitUsage = 2;
constexpr int kExitViolated = 3;
constexpr int kExitIo = 4;

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void finish(const std::string& path) {
    stream().flush();
    if (!stream()) throw Error(ErrorCode::Io, "write to '" + (path.empty() ? std::string("stdout") : path) + "' failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream ss;
  ss << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return ss.str();
}

struct Common {
  std::string graph;
  std::string labels;
  std::string out;
  std::size_t k = 0;
  std::size_t l = 0;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  bool drop_trivial = false;
  bool unweighted = false;
};

ClusterOptions cluster_options(const Common& c) {
  ClusterOptions o;
  o.kmeans.restarts = c.restarts;
  o.embed.drop_trivial = c.drop_trivial;
  o.degree_weighted = !c.unweighted;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral clustering with fewer than k eigenvectors, meta-graph analysis and theory checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "metasc 1.0");

  Common c;

  // generate
  std::string tmpl_spec;
  std::size_t n_per = 0;
  double p = 0.0, q = 0.0;
  auto* gen = app.add_subcommand("generate", "Sample a meta-graph SBM instance (edge list + ground-truth labels)");
  gen->add_option("--template", tmpl_spec, "cycle:K, grid:RxC, complete:K or path:K")->required();
  gen->add_option("--n", n_per, "Vertices per cluster")->required();
  gen->add_option("--p", p, "Intra-cluster edge probability")->required();
  gen->add_option("--q", q, "Edge probability between adjacent template clusters")->required();
  gen->add_option("--seed", c.seed, "Random seed");
  gen->add_option("--graph", c.graph, "Edge list to write")->required();
  gen->add_option("--labels", c.labels, "Ground-truth labels to write")->required();

  // cluster
  auto* clu = app.add_subcommand("cluster", "Spectral clustering into k groups with l eigenvectors");
  clu->add_option("--graph", c.graph, "Edge list")->required();
  clu->add_option("--k", c.k, "Number of clusters")->required();
  clu->add_option("--l", c.l, "Number of eigenvectors (default k)");
  clu->add_option("--seed", c.seed, "Random seed");
  clu->add_option("--restarts", c.restarts, "k-means restarts")->check(CLI::PositiveNumber);
  clu->add_flag("--drop-trivial-eigenvector", c.drop_trivial, "Leave f_1 out of the embedding");
  clu->add_flag("--unweighted", c.unweighted, "Unit k-means weights instead of degrees");
  clu->add_option("--out", c.out, "Labels file to write (default stdout)");

  // eval
  std::string truth;
  auto* ev = app.add_subcommand("eval", "Compare a clustering against ground truth (one CSV row)");
  ev->add_option("--labels", c.labels, "Output labels")->required();
  ev->add_option("--truth", truth, "Ground-truth labels")->required();
  ev->add_option("--graph", c.graph, "Edge list (for volumes)")->required();
  ev->add_option("--seed", c.seed, "Seed recorded in the row");
  ev->add_option("--l", c.l, "l recorded in the row");
  ev->add_option("--out", c.out, "CSV file to write (default stdout)");
  bool max_nmi = false;
  ev->add_flag("--nmi-max", max_nmi, "Normalize NMI by the larger entropy");

  // verify
  std::string output_labels;
  std::size_t apt_restarts = 50;
  auto* ver = app.add_subcommand("verify", "Check the structure theorems and separation bounds (JSON report)");
  ver->add_option("--graph", c.graph, "Edge list")->required();
  ver->add_option("--labels", c.labels, "Ground-truth labels")->required();
  ver->add_option("--l", c.l, "Number of eigenvectors")->required();
  ver->add_option("--clustering", output_labels, "Clustering to judge (default: run spectral clustering)");
  ver->add_option("--seed", c.seed, "Random seed");
  ver->add_option("--restarts", c.restarts, "k-means restarts for the default clustering")->check(CLI::PositiveNumber);
  std::optional<double> apt;
  ver->add_option("--apt", apt, "Asserted k-means approximation ratio of the clustering (default: measured)")
      ->check(CLI::Range(1.0, 1e300));
  ver->add_option("--apt-restarts", apt_restarts, "Restarts for the measured approximation ratio");
  ver->add_flag("--drop-trivial-eigenvector", c.drop_trivial, "Cluster without f_1 (report still uses f_1..f_l)");
  ver->add_option("--out", c.out, "JSON file to write (default stdout)");

  // sweep
  std::string config_path;
  std::size_t threads = 0;
  std::optional<std::uint64_t> sweep_seed;
  auto* sw = app.add_subcommand("sweep", "Run a ratio x l grid of trials (CSV)");
  sw->add_option("--config", config_path, "Experiment config (JSON, schema 1)")->required();
  sw->add_option("--seed", sweep_seed, "Master seed (overrides the config)");
  sw->add_option("--restarts", c.restarts, "k-means restarts (overrides the config)")->check(CLI::PositiveNumber);
  sw->add_option("--threads", threads, "Worker threads (default: all cores)");
  sw->add_option("--out", c.out, "CSV file to write (default: config output, else stdout)");

  // embed
  auto* em = app.add_subcommand("embed", "Dump the spectral embedding as CSV");
  em->add_option("--graph", c.graph, "Edge list")->required();
  em->add_option("--l", c.l, "Number of eigenvectors")->required();
  em->add_option("--seed", c.seed, "Random seed");
  em->add_flag("--drop-trivial-eigenvector", c.drop_trivial, "Leave f_1 out of the coordinates");
  em->add_option("--out", c.out, "CSV file to write (default stdout)");

  // metagraph
  auto* mg = app.add_subcommand("metagraph", "Dump the meta-graph of a partition, with its spectrum");
  mg->add_option("--graph", c.graph, "Edge list")->required();
  mg->add_option("--labels", c.labels, "Partition labels")->required();
  mg->add_option("--l", c.l, "Also report gamma_1..gamma_l and theta on stderr");
  mg->add_option("--out", c.out, "Dump file to write (default stdout)");

  // similarity
  std::string features;
  std::size_t knn = 0;
  double sigma = 20.0;
  double floor = 0.0;
  bool knn_gauss = false;
  auto* sim = app.add_subcommand("similarity", "Build a similarity graph from a feature CSV");
  sim->add_option("--features", features, "Feature CSV (f1,...,fd[,label])")->required();
  sim->add_option("--knn", knn, "k nearest neighbours (default: full Gaussian graph)");
  sim->add_option("--sigma", sigma, "Gaussian kernel width");
  sim->add_option("--floor", floor, "Drop Gaussian weights at or below this value");
  sim->add_flag("--knn-gaussian", knn_gauss, "Gaussian instead of unit kNN weights");
  sim->add_option("--graph", c.graph, "Edge list to write")->required();
  sim->add_option("--labels", c.labels, "Write the CSV label column here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const SbmInstance inst = sbm_meta(parse_template(tmpl_spec), n_per, p, q, c.seed);
      io::write_edge_list_file(c.graph, inst.graph);
      io::write_labels_file(c.labels, inst.truth);
      std::cerr << "generated " << inst.graph.num_vertices() << " vertices, " << inst.graph.num_edges() << " edges";
      if (inst.repaired_vertices > 0) std::cerr << ", " << inst.repaired_vertices << " isolated vertices repaired";
      std::cerr << '\n';
    } else if (*clu) {
      const WeightedGraph g = io::read_edge_list_file(c.graph);
      const std::size_t l = c.l ? c.l : c.k;
      const Clustering out = spectral_cluster(g, c.k, l, cluster_options(c), c.seed);
      Output o(c.out);
      io::write_labels(o.stream(), out);
      o.finish(c.out);
    } else if (*ev) {
      const WeightedGraph g = io::read_edge_list_file(c.graph);
      const Clustering out = io::read_labels_file(c.labels);
      const Clustering tr = io::read_labels_file(truth);
      const PairIndices pi = pair_indices(out, tr, max_nmi ? NmiNormalization::Max : NmiNormalization::Arithmetic);
      const AccuracyResult acc = accuracy(out, tr);
      if (acc.unequal_sizes) std::cerr << "note: ground-truth clusters differ in size; accuracy is normalized by n\n";
      Output o(c.out);
      o.stream() << "seed,k,l,accuracy,rand,ari,nmi,symdiff_volume\n"
                 << c.seed << ',' << tr.k() << ',' << (c.l ? c.l : tr.k()) << ',' << format_real(acc.accuracy) << ','
                 << format_real(pi.rand) << ',' << format_real(pi.ari) << ',' << format_real(pi.nmi) << ','
                 << format_real(symdiff_volume(out, tr, g)) << '\n';
      o.finish(c.out);
    } else if (*ver) {
      const WeightedGraph g = io::read_edge_list_file(c.graph);
      const Clustering tr = io::read_labels_file(c.labels);
      const std::size_t pairs = std::min(g.num_vertices(), std::max(tr.k(), c.l) + 1);
      EigenOptions eo;
      eo.seed = derive_seed(c.seed, 0);
      const TheoryContext ctx(g, tr, pairs, eo);
      const Clustering out = output_labels.empty()
                                 ? spectral_cluster(g, tr.k(), c.l, cluster_options(c), c.seed)
                                 : io::read_labels_file(output_labels);
      MisclassificationOptions mo;
      mo.apt = apt;
      mo.apt_restarts = apt_restarts;
      mo.seed = c.seed;
      const TheoryReport rep = full_report(ctx, out, c.l, mo);
      Output o(c.out);
      o.stream() << io::report_to_json(rep) << '\n';
      o.finish(c.out);
      std::cerr << rep.count(CheckStatus::Satisfied) << " satisfied, " << rep.count(CheckStatus::Surrogate)
                << " surrogate, " << rep.count(CheckStatus::NotApplicable) << " not-applicable, "
                << rep.count(CheckStatus::Violated) << " violated\n";
      if (rep.any_violated()) return kExitViolated;
    } else if (*sw) {
      ExperimentConfig cfg = read_experiment_config(config_path);
      if (sweep_seed) cfg.seed = *sweep_seed;
      if (sw->count("--restarts") > 0) cfg.restarts = c.restarts;
      const std::string path = !c.out.empty() ? c.out : cfg.output.value_or("");
      const SweepResult r = run_sweep(cfg, threads);
      Output o(path);
      write_sweep_csv(o.stream(), r, utc_timestamp() + " by metasc sweep (schema 1, seed " + std::to_string(cfg.seed) + ")");
      o.finish(path);
    } else if (*em) {
      const WeightedGraph g = io::read_edge_list_file(c.graph);
      EmbedOptions eo;
      eo.drop_trivial = c.drop_trivial;
      eo.eigen.seed = derive_seed(c.seed, 0);
      const SpectralEmbedding emb = spectral_embed(g, c.l, eo);
      Output o(c.out);
      io::write_embedding_csv(o.stream(), emb.points);
      o.finish(c.out);
    } else if (*mg) {
      const WeightedGraph g = io::read_edge_list_file(c.graph);
      const MetaGraph m = build_meta_graph(g, io::read_labels_file(c.labels));
      Output o(c.out);
      io::write_meta_graph(o.stream(), m);
      o.finish(c.out);
      if (c.l > 0) {
        const MetaEmbedding me = meta_embedding(m, c.l);
        std::cerr << "gamma:";
        for (Eigen::Index i = 0; i < me.gamma.size(); ++i) std::cerr << ' ' << format_real(me.gamma(i));
        std::cerr << '\n';
        if (m.k() >= 2) {
          const Distinguishability d = distinguishability_theta(me);
          std::cerr << "min_norm_sq " << format_real(d.min_norm_sq) << ", min_normalized_sep_sq "
                    << format_real(d.min_normalized_sep_sq) << ", theta " << format_real(d.theta) << '\n';
        }
      }
    } else if (*sim) {
      const FeatureTable ft = io::read_feature_csv_file(features);
      WeightedGraph g = knn > 0 ? knn_graph(ft, knn,
                                            KnnOptions{knn_gauss ? KnnWeighting::Gaussian : KnnWeighting::Unit, sigma})
                                : gaussian_graph(ft, GaussianOptions{sigma, floor});
      io::write_edge_list_file(c.graph, g);
      if (!c.labels.empty()) {
        if (!ft.labels) throw Error(ErrorCode::InvalidArgument, "feature file has no label column");
        io::write_labels_file(c.labels, Clustering::from_labels(*ft.labels));
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::Io || e.code() == ErrorCode::Parse ? kExitIo : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
