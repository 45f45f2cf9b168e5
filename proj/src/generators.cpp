#include "metasc/generators.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "metasc/error.hpp"
#include "metasc/ext_real.hpp"
#include "metasc/rng.hpp"

namespace metasc {

bool MetaTemplate::adjacent(std::size_t i, std::size_t j) const {
  const auto key = std::minmax(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::pair<std::size_t, std::size_t>(key.first, key.second));
}

std::vector<std::size_t> MetaTemplate::meta_degrees() const {
  std::vector<std::size_t> deg(k, 0);
  for (const auto& [i, j] : edges) {
    ++deg[i];
    ++deg[j];
  }
  return deg;
}

namespace {

bool connected(std::size_t k, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<std::size_t> parent(k);
  for (std::size_t i = 0; i < k; ++i) parent[i] = i;
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t parts = k;
  for (const auto& [a, b] : edges) {
    const std::size_t ra = find(a);
    const std::size_t rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --parts;
    }
  }
  return parts == 1;
}

MetaTemplate make(TemplateKind kind, std::size_t k, std::vector<std::pair<std::size_t, std::size_t>> edges,
                  std::string name) {
  if (k < 2) throw Error(ErrorCode::BadParams, name + ": a template needs k >= 2");
  for (auto& [a, b] : edges) {
    if (a >= k || b >= k) throw Error(ErrorCode::BadParams, name + ": edge endpoint outside 0..k-1");
    if (a == b) throw Error(ErrorCode::BadParams, name + ": self-loop at " + std::to_string(a));
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw Error(ErrorCode::BadParams, name + ": repeated edge");
  }
  if (!connected(k, edges)) throw Error(ErrorCode::BadParams, name + ": template is not connected");
  return MetaTemplate{kind, k, std::move(edges), std::move(name)};
}

std::size_t parse_count(const std::string& text, const std::string& spec) {
  std::size_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw Error(ErrorCode::BadParams, "bad number '" + text + "' in template '" + spec + "'");
  }
  return v;
}

}  // namespace

MetaTemplate cycle_template(std::size_t k) {
  if (k < 3) throw Error(ErrorCode::BadParams, "cycle needs k >= 3, got " + std::to_string(k));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < k; ++i) edges.emplace_back(i, (i + 1) % k);
  return make(TemplateKind::Cycle, k, std::move(edges), "cycle(" + std::to_string(k) + ")");
}

MetaTemplate grid_template(std::size_t rows, std::size_t cols) {
  if (rows < 1 || cols < 1 || rows * cols < 2) {
    throw Error(ErrorCode::BadParams, "grid needs at least 2 cells, got " + std::to_string(rows) + "x" +
                                          std::to_string(cols));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const std::size_t v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return make(TemplateKind::Grid, rows * cols, std::move(edges),
              "grid(" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
}

MetaTemplate complete_template(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(i, j);
  }
  return make(TemplateKind::Complete, k, std::move(edges), "complete(" + std::to_string(k) + ")");
}

MetaTemplate path_template(std::size_t k) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i + 1 < k; ++i) edges.emplace_back(i, i + 1);
  return make(TemplateKind::Path, k, std::move(edges), "path(" + std::to_string(k) + ")");
}

MetaTemplate custom_template(std::size_t k, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  return make(TemplateKind::Custom, k, std::move(edges), "custom(" + std::to_string(k) + ")");
}

MetaTemplate parse_template(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::BadParams, "template '" + spec + "' is not kind:params");
  const std::string kind = spec.substr(0, colon);
  const std::string args = spec.substr(colon + 1);
  if (kind == "cycle") return cycle_template(parse_count(args, spec));
  if (kind == "complete") return complete_template(parse_count(args, spec));
  if (kind == "path") return path_template(parse_count(args, spec));
  if (kind == "grid") {
    const auto x = args.find('x');
    if (x == std::string::npos) throw Error(ErrorCode::BadParams, "grid template wants RxC, got '" + args + "'");
    return grid_template(parse_count(args.substr(0, x), spec), parse_count(args.substr(x + 1), spec));
  }
  throw Error(ErrorCode::BadParams, "unknown template kind '" + kind + "'");
}

SbmInstance sbm_meta(const MetaTemplate& tmpl, std::size_t n_per_cluster, double p, double q, std::uint64_t seed) {
  if (n_per_cluster < 2) throw Error(ErrorCode::BadParams, "n_per_cluster must be >= 2");
  if (!(p >= 0.0 && p <= 1.0 && q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorCode::BadParams, "probabilities must lie in [0, 1]");
  }
  if (q > p) throw Error(ErrorCode::BadParams, "need q <= p, got p=" + format_real(p) + " q=" + format_real(q));
  const std::size_t k = tmpl.k;
  const std::size_t n = n_per_cluster;
  const auto nd = static_cast<double>(n);
  const std::vector<std::size_t> mdeg = tmpl.meta_degrees();
  for (std::size_t i = 0; i < k; ++i) {
    const double expected = p * (nd - 1.0) + q * nd * static_cast<double>(mdeg[i]);
    if (expected < 1.0) {
      throw Error(ErrorCode::DegenerateProbabilities,
                  "expected degree " + format_real(expected) + " < 1 in cluster " + std::to_string(i));
    }
  }

  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<std::size_t> deg(k * n, 0);
  auto add = [&](std::size_t u, std::size_t v) {
    edges.push_back({u, v, 1.0});
    ++deg[u];
    ++deg[v];
  };
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t base = c * n;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        if (rng.bernoulli(p)) add(base + a, base + b);
      }
    }
  }
  if (q > 0.0) {
    for (const auto& [i, j] : tmpl.edges) {
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          if (rng.bernoulli(q)) add(i * n + a, j * n + b);
        }
      }
    }
  }

  std::size_t repaired = 0;
  // A vertex left without neighbours gets one uniform intra-cluster edge.
  for (std::size_t u = 0; u < k * n; ++u) {
    if (deg[u] > 0) continue;
    const std::size_t base = (u / n) * n;
    std::size_t v = base + rng.below(n - 1);
    if (v >= u) ++v;
    add(std::min(u, v), std::max(u, v));
    ++repaired;
  }

  std::vector<std::size_t> labels(k * n);
  for (std::size_t u = 0; u < k * n; ++u) labels[u] = u / n;
  return SbmInstance{WeightedGraph(k * n, edges), Clustering(k, std::move(labels)), repaired};
}

}  // namespace metasc
