#include "metasc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "metasc/error.hpp"
#include "metasc/ext_real.hpp"

namespace metasc::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, std::string_view seps) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find_first_of(seps, pos);
    const auto end = next == std::string_view::npos ? s.size() : next;
    out.push_back(trim(s.substr(pos, end - pos)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return out;
}

// Fields separated by runs of whitespace.
std::vector<std::string_view> fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const auto b = s.find_first_not_of(" \t\r", pos);
    if (b == std::string_view::npos) break;
    const auto e = s.find_first_of(" \t\r", b);
    out.push_back(s.substr(b, (e == std::string_view::npos ? s.size() : e) - b));
    if (e == std::string_view::npos) break;
    pos = e;
  }
  return out;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (text.empty() || ec != std::errc() || ptr != end) {
    parse_error(line, std::string("bad ") + what + " '" + std::string(text) + "'");
  }
  return v;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

WeightedGraph read_edge_list(std::istream& in) {
  std::vector<Edge> edges;
  std::optional<std::size_t> n;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s.starts_with("n=")) {
      if (n || !edges.empty()) parse_error(lineno, "the n= header must come first and only once");
      n = parse_number<std::size_t>(s.substr(2), lineno, "vertex count");
      continue;
    }
    const auto f = fields(s);
    if (f.size() != 2 && f.size() != 3) parse_error(lineno, "expected 'u v w', got " + std::to_string(f.size()) + " fields");
    const auto u = parse_number<std::size_t>(f[0], lineno, "vertex id");
    const auto v = parse_number<std::size_t>(f[1], lineno, "vertex id");
    const double w = f.size() == 3 ? parse_number<double>(f[2], lineno, "weight") : 1.0;
    edges.push_back({u, v, w});
  }
  return n ? WeightedGraph(*n, edges) : build_graph(edges);
}

WeightedGraph read_edge_list_file(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
  out << "n=" << g.num_vertices() << '\n';
  for (const Edge& e : g.edges()) out << e.u << '\t' << e.v << '\t' << format_real(e.w) << '\n';
}

void write_edge_list_file(const std::string& path, const WeightedGraph& g) {
  auto out = open_out(path);
  write_edge_list(out, g);
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

std::vector<std::size_t> read_labels(std::istream& in) {
  std::vector<std::size_t> labels;
  std::string line;
  std::size_t lineno = 0;
  std::size_t blank_run = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) {
      ++blank_run;
      continue;
    }
    if (blank_run > 0) parse_error(lineno, "blank line inside the label list");
    labels.push_back(parse_number<std::size_t>(s, lineno, "label"));
  }
  return labels;
}

Clustering read_labels_file(const std::string& path) {
  auto in = open_in(path);
  return Clustering::from_labels(read_labels(in));
}

void write_labels(std::ostream& out, const Clustering& c) {
  for (std::size_t l : c.labels()) out << l << '\n';
}

void write_labels_file(const std::string& path, const Clustering& c) {
  auto out = open_out(path);
  write_labels(out, c);
  if (!out) throw Error(ErrorCode::Io, "write to '" + path + "' failed");
}

void write_meta_graph(std::ostream& out, const MetaGraph& m) {
  const Eigen::MatrixXd& a = m.adjacency();
  out << m.k() << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out << (j ? "\t" : "") << format_real(a(i, j));
    out << '\n';
  }
}

MetaGraph read_meta_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::optional<std::size_t> k;
  Eigen::MatrixXd a;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    if (!k) {
      k = parse_number<std::size_t>(s, lineno, "k");
      a.resize(static_cast<Eigen::Index>(*k), static_cast<Eigen::Index>(*k));
      continue;
    }
    if (row >= a.rows()) parse_error(lineno, "more than k matrix rows");
    const auto f = fields(s);
    if (f.size() != *k) parse_error(lineno, "expected " + std::to_string(*k) + " entries");
    for (std::size_t j = 0; j < f.size(); ++j) a(row, static_cast<Eigen::Index>(j)) = parse_number<double>(f[j], lineno, "entry");
    ++row;
  }
  if (!k || row != a.rows()) parse_error(lineno, "incomplete meta-graph matrix");
  return MetaGraph(std::move(a));
}

FeatureTable read_feature_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "empty feature file");
  ++lineno;
  const auto header = split(trim(line), ",");
  const bool has_label = !header.empty() && header.back() == "label";
  const std::size_t d = header.size() - (has_label ? 1 : 0);
  for (std::size_t j = 0; j < d; ++j) {
    if (header[j] != "f" + std::to_string(j + 1)) {
      parse_error(lineno, "header column " + std::to_string(j + 1) + " should be f" + std::to_string(j + 1));
    }
  }
  if (d == 0) parse_error(lineno, "no feature columns");

  std::vector<double> values;
  std::vector<std::size_t> labels;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view s = trim(line);
    if (s.empty()) continue;
    const auto f = split(s, ",");
    if (f.size() != header.size()) {
      parse_error(lineno, "expected " + std::to_string(header.size()) + " columns, got " + std::to_string(f.size()));
    }
    for (std::size_t j = 0; j < d; ++j) values.push_back(parse_number<double>(f[j], lineno, "feature"));
    if (has_label) labels.push_back(parse_number<std::size_t>(f[d], lineno, "label"));
    ++n;
  }
  FeatureTable ft;
  ft.rows = Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  if (has_label) ft.labels = std::move(labels);
  return ft;
}

FeatureTable read_feature_csv_file(const std::string& path) {
  auto in = open_in(path);
  return read_feature_csv(in);
}

void write_embedding_csv(std::ostream& out, const Eigen::MatrixXd& points) {
  out << 'u';
  for (Eigen::Index j = 0; j < points.cols(); ++j) out << ",x" << (j + 1);
  out << '\n';
  for (Eigen::Index u = 0; u < points.rows(); ++u) {
    out << u;
    for (Eigen::Index j = 0; j < points.cols(); ++j) out << ',' << format_real(points(u, j));
    out << '\n';
  }
}

namespace {

nlohmann::ordered_json ext_json(const ExtReal& x) {
  if (x.is_infinite()) return "inf";
  const double v = x.value();
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string report_to_json(const TheoryReport& report, int indent) {
  nlohmann::ordered_json j;
  j["n"] = report.n;
  j["k"] = report.k;
  j["l"] = report.l;
  j["seed"] = report.seed;
  auto& list = j["statements"] = nlohmann::ordered_json::array();
  for (const TheoryRecord& r : report.records) {
    list.push_back({{"id", r.id},
                    {"lhs", ext_json(r.lhs)},
                    {"bound", ext_json(r.bound)},
                    {"slack", ext_json(r.slack)},
                    {"status", std::string(to_string(r.status))}});
  }
  return j.dump(indent);
}

}  // namespace metasc::io
