#pragma once

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gburn/graph.hpp"

namespace gburn {

enum class GraphFormat { edge_list, matrix_market };

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r' || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == '\r' || s[j] == ',')) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view tok, T& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

inline bool is_number(std::string_view tok) {
  double d = 0;
  std::istringstream in{std::string(tok)};
  in >> d;
  return in && in.peek() == std::char_traits<char>::eof();
}

class LabelMap {
 public:
  Vertex intern(Label l) {
    auto [it, inserted] = index_.emplace(l, static_cast<Vertex>(labels_.size()));
    if (inserted) labels_.push_back(l);
    return it->second;
  }
  std::vector<Label>& labels() { return labels_; }

 private:
  std::unordered_map<Label, Vertex> index_;
  std::vector<Label> labels_;
};

}  // namespace detail

/// Whitespace-separated label pairs, one edge per line. Lines starting with
/// '#' or '%' are comments; a third numeric column (weight) is ignored.
/// A `# vertices: l1 l2 ...` comment pre-registers labels in that order, which
/// is how isolated vertices survive a write/read cycle.
inline Graph read_edge_list(std::istream& in) {
  detail::LabelMap labels;
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  constexpr std::string_view kVertexDirective = "# vertices:";
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    auto toks = detail::split_ws(sv);
    if (toks.empty()) continue;
    if (sv.substr(0, kVertexDirective.size()) == kVertexDirective) {
      for (auto tok : detail::split_ws(sv.substr(kVertexDirective.size()))) {
        Label l = 0;
        if (!detail::parse_number(tok, l) || l < 0)
          throw ParseError("bad vertex label '" + std::string(tok) + "'", lineno);
        labels.intern(l);
      }
      continue;
    }
    if (toks[0][0] == '#' || toks[0][0] == '%') continue;
    if (toks.size() < 2 || toks.size() > 3)
      throw ParseError("expected 'u v' edge, got " + std::to_string(toks.size()) + " fields", lineno);
    Label a = 0, b = 0;
    if (!detail::parse_number(toks[0], a) || !detail::parse_number(toks[1], b) || a < 0 || b < 0)
      throw ParseError("vertex labels must be non-negative integers", lineno);
    if (toks.size() == 3 && !detail::is_number(toks[2]))
      throw ParseError("third column must be numeric", lineno);
    Vertex u = labels.intern(a);
    Vertex v = labels.intern(b);
    edges.emplace_back(u, v);
  }
  if (labels.labels().empty()) throw EmptyGraphError();
  auto n = labels.labels().size();
  return Graph::from_edges(n, edges, std::move(labels.labels()));
}

/// `%%MatrixMarket matrix coordinate pattern {symmetric|general}` only.
/// Vertex labels are the 1-based matrix indices; diagonal entries are dropped.
inline Graph read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw ParseError("missing MatrixMarket header", 1);
  ++lineno;
  {
    auto toks = detail::split_ws(line);
    auto lower = [](std::string_view s) {
      std::string r(s);
      for (auto& c : r) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return r;
    };
    if (toks.size() != 5 || lower(toks[0]) != "%%matrixmarket" || lower(toks[1]) != "matrix" ||
        lower(toks[2]) != "coordinate" || lower(toks[3]) != "pattern" ||
        (lower(toks[4]) != "symmetric" && lower(toks[4]) != "general"))
      throw ParseError("unsupported header; expected 'matrix coordinate pattern symmetric|general'",
                       lineno);
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<Edge> edges;
  std::size_t entries = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0][0] == '%') continue;
    if (!have_size) {
      if (toks.size() != 3 || !detail::parse_number(toks[0], rows) ||
          !detail::parse_number(toks[1], cols) || !detail::parse_number(toks[2], nnz))
        throw ParseError("bad size line", lineno);
      have_size = true;
      continue;
    }
    std::size_t i = 0, j = 0;
    if (toks.size() != 2 || !detail::parse_number(toks[0], i) || !detail::parse_number(toks[1], j))
      throw ParseError("expected 'i j' pattern entry", lineno);
    if (i < 1 || j < 1 || i > rows || j > cols) throw ParseError("entry index out of range", lineno);
    edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(j - 1));
    ++entries;
  }
  if (!have_size) throw ParseError("missing size line", lineno);
  if (entries != nnz)
    throw ParseError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(entries),
                     lineno);
  std::size_t n = std::max(rows, cols);
  if (n == 0) throw EmptyGraphError();
  return Graph::from_edges(n, edges);
}

inline Graph load_graph(const std::filesystem::path& path, GraphFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return format == GraphFormat::edge_list ? read_edge_list(in) : read_matrix_market(in);
}

/// Picks the reader from the extension: .mtx is MatrixMarket, anything else
/// is an edge list.
inline Graph load_graph(const std::filesystem::path& path) {
  return load_graph(path, path.extension() == ".mtx" ? GraphFormat::matrix_market
                                                     : GraphFormat::edge_list);
}

/// Canonical edge list: a `# vertices:` directive with every label in
/// internal order, then one "u v" label pair per edge in internal order.
inline void write_edge_list(std::ostream& out, const Graph& g) {
  out << "# vertices:";
  for (Label l : g.labels()) out << ' ' << l;
  out << '\n';
  for (auto [u, v] : g.edges()) out << g.label(u) << ' ' << g.label(v) << '\n';
}

inline void save_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace gburn
