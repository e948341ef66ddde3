#pragma once

#include <algorithm>
#include <boost/integer/common_factor_rt.hpp>
#include <boost/rational.hpp>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gburn/burning.hpp"
#include "gburn/graph.hpp"

namespace gburn {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

/// Exact decimal when the denominator is 2^a 5^b, otherwise 17 significant digits.
inline std::string to_decimal(const Rational& r) {
  std::int64_t den = r.denominator();
  int twos = 0, fives = 0;
  while (den % 2 == 0) { den /= 2; ++twos; }
  while (den % 5 == 0) { den /= 5; ++fives; }
  if (den != 1) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", to_double(r));
    return buf;
  }
  if (r.denominator() == 1) return std::to_string(r.numerator());
  int digits = std::max(twos, fives);
  // r = num / den_total; scale to num * 10^digits / den_total, which is integral.
  __int128 scaled = r.numerator();
  for (int k = 0; k < digits; ++k) scaled *= 10;
  scaled /= r.denominator();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s;
  while (scaled > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(scaled % 10)));
    scaled /= 10;
  }
  while (static_cast<int>(s.size()) <= digits) s.push_back('0');
  std::reverse(s.begin(), s.end());
  s.insert(s.end() - digits, '.');
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return neg ? "-" + s : s;
}

enum class QuboKind { squbo, uqubo };
enum class PenaltyMode { uniform, guided };

inline const char* to_string(QuboKind k) { return k == QuboKind::squbo ? "squbo" : "uqubo"; }
inline const char* to_string(PenaltyMode m) { return m == PenaltyMode::uniform ? "uniform" : "guided"; }

struct QuboVar {
  enum class Kind { x, slack } kind = Kind::x;
  std::uint32_t vertex = 0;  // 0-based
  std::uint32_t index = 0;   // column j (1-based) or slack bit l (1-based)

  std::string name() const {
    return std::string(kind == Kind::x ? "x_" : "s_") + std::to_string(vertex + 1) + "_" + std::to_string(index);
  }
};

/// Unbalanced-penalization weights: P on the one-per-column blocks, lambda1
/// and per-vertex lambda2 on f(h) = lambda1 h + lambda2 h^2, h = 1 - coverage.
struct PenaltyConfig {
  Rational P{0};
  Rational lambda1{1};
  std::vector<Rational> lambda2;
  PenaltyMode mode = PenaltyMode::uniform;

  Rational min_lambda2() const { return *std::min_element(lambda2.begin(), lambda2.end()); }
};

/// Upper-triangular QUBO: energy(x) = offset + sum_{i<=j} q_ij x_i x_j.
struct QuboModel {
  QuboKind kind = QuboKind::squbo;
  std::size_t n = 0;
  std::size_t g = 0;
  std::size_t slack_bits = 0;  // per vertex, sQUBO only
  std::vector<Label> labels;
  std::vector<QuboVar> vars;
  std::map<std::pair<std::size_t, std::size_t>, Rational> q;
  Rational offset{0};
  std::optional<PenaltyConfig> penalties;  // uQUBO only
  /// Per vertex, the x ids in its coverage sum.
  std::vector<std::vector<std::size_t>> coverage;

  std::size_t dim() const { return vars.size(); }
  std::size_t x_id(std::size_t i, std::size_t j) const { return i * g + (j - 1); }
  std::size_t slack_id(std::size_t i, std::size_t l) const { return n * g + i * slack_bits + (l - 1); }
  std::size_t num_diagonal() const {
    return static_cast<std::size_t>(
        std::count_if(q.begin(), q.end(), [](const auto& e) { return e.first.first == e.first.second; }));
  }
  std::size_t num_off_diagonal() const { return q.size() - num_diagonal(); }
};

inline std::size_t ceil_log2(std::size_t g) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < g) ++bits;
  return bits;
}

namespace detail {

class QuboAccumulator {
 public:
  explicit QuboAccumulator(QuboModel& m) : m_(m) {}

  void add(std::size_t i, std::size_t j, const Rational& c) {
    if (c == Rational(0)) return;
    if (i > j) std::swap(i, j);
    m_.q[{i, j}] += c;
  }
  void add_constant(const Rational& c) { m_.offset += c; }

  /// weight * (c0 + sum a_k y_k)^2 with binary y (y^2 = y).
  void add_square(const Rational& weight, const Rational& c0, const std::vector<std::pair<std::size_t, Rational>>& lin) {
    std::map<std::size_t, Rational> merged;
    for (const auto& [k, a] : lin) merged[k] += a;
    std::vector<std::pair<std::size_t, Rational>> terms(merged.begin(), merged.end());
    add_constant(weight * c0 * c0);
    for (std::size_t s = 0; s < terms.size(); ++s) {
      const auto& [k, a] = terms[s];
      add(k, k, weight * (Rational(2) * c0 * a + a * a));
      for (std::size_t t = s + 1; t < terms.size(); ++t) add(k, terms[t].first, weight * Rational(2) * a * terms[t].second);
    }
  }

  /// weight * (1 - sum y + 2 sum_{i<k} y_i y_k): zero iff exactly one y is set.
  void add_one_hot(const Rational& weight, const std::vector<std::size_t>& ys) {
    add_constant(weight);
    for (std::size_t s = 0; s < ys.size(); ++s) {
      add(ys[s], ys[s], -weight);
      for (std::size_t t = s + 1; t < ys.size(); ++t) add(ys[s], ys[t], Rational(2) * weight);
    }
  }

  void finish() {
    for (auto it = m_.q.begin(); it != m_.q.end();) it = it->second == Rational(0) ? m_.q.erase(it) : std::next(it);
  }

 private:
  QuboModel& m_;
};

inline QuboModel qubo_skeleton(const Graph& graph, QuboKind kind, std::size_t g, std::size_t slack_bits) {
  QuboModel m;
  m.kind = kind;
  m.n = graph.num_vertices();
  m.g = g;
  m.slack_bits = slack_bits;
  m.labels = graph.labels();
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 1; j <= g; ++j)
      m.vars.push_back({QuboVar::Kind::x, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t l = 1; l <= slack_bits; ++l)
      m.vars.push_back({QuboVar::Kind::slack, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(l)});
  m.coverage.resize(m.n);
  for (Vertex i = 0; i < m.n; ++i) {
    auto dist = bfs_distances(graph, i, static_cast<std::uint32_t>(g - 1));
    for (Vertex k = 0; k < m.n; ++k) {
      if (dist[k] == kUnreachable) continue;
      for (std::size_t j = dist[k] + 1; j <= g; ++j) m.coverage[i].push_back(m.x_id(k, j));
    }
    std::sort(m.coverage[i].begin(), m.coverage[i].end());
  }
  return m;
}

inline std::vector<std::size_t> column_vars(const QuboModel& m, std::size_t j) {
  std::vector<std::size_t> ys;
  for (std::size_t i = 0; i < m.n; ++i) ys.push_back(m.x_id(i, j));
  return ys;
}

}  // namespace detail

/// Slack-variable QUBO for guess g; minimum 0 iff g >= b(G).
inline QuboModel build_squbo(const Graph& graph, std::size_t g) {
  if (g < 1) throw ParameterError("g must be at least 1");
  auto m = detail::qubo_skeleton(graph, QuboKind::squbo, g, ceil_log2(g));
  detail::QuboAccumulator acc(m);
  for (std::size_t j = 1; j <= g; ++j) acc.add_one_hot(Rational(1), detail::column_vars(m, j));
  for (std::size_t i = 0; i < m.n; ++i) {
    std::vector<std::pair<std::size_t, Rational>> lin;
    for (auto id : m.coverage[i]) lin.emplace_back(id, Rational(-1));
    for (std::size_t l = 1; l <= m.slack_bits; ++l)
      lin.emplace_back(m.slack_id(i, l), Rational(std::int64_t{1} << (l - 1)));
    acc.add_square(Rational(1), Rational(1), lin);
  }
  acc.finish();
  return m;
}

/// lambda1 = 1; uniform: lambda2_i = lambda1 / (g - 1); guided: lambda2_i =
/// lambda1 / (l_i - 1) for l_i >= 2, lambda1 for l_i = 1.
/// P = n lambda1^2 / (4 min_i lambda2_i) + 1.
inline PenaltyConfig default_penalties(const Graph& graph, std::size_t g, PenaltyMode mode,
                                       const FireSourceCounts* guide = nullptr,
                                       const Rational& lambda1 = Rational(1)) {
  const std::size_t n = graph.num_vertices();
  PenaltyConfig pc;
  pc.mode = mode;
  pc.lambda1 = lambda1;
  if (lambda1 <= Rational(0)) throw ParameterError("lambda1 must be positive");
  if (mode == PenaltyMode::uniform) {
    if (g < 2) throw ParameterError("uniform penalties need g >= 2 (lambda2 = lambda1 / (g - 1))");
    pc.lambda2.assign(n, lambda1 / static_cast<std::int64_t>(g - 1));
  } else {
    if (guide == nullptr) throw ParameterError("guided penalties need fire-source counts from a burning sequence");
    if (guide->counts.size() != n) throw ParameterError("guide does not match the graph");
    pc.lambda2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto l = guide->counts[i];
      if (l == 0) throw ParameterError("guide sequence leaves a vertex unburned");
      pc.lambda2[i] = l >= 2 ? lambda1 / static_cast<std::int64_t>(l - 1) : lambda1;
    }
  }
  if (n == 0) {
    pc.P = 1;
    return pc;
  }
  pc.P = static_cast<std::int64_t>(n) * lambda1 * lambda1 / (Rational(4) * pc.min_lambda2()) + Rational(1);
  return pc;
}

/// f(h) = lambda1 h + lambda2 h^2.
inline Rational penalty_curve(const Rational& lambda1, const Rational& lambda2, const Rational& h) {
  return lambda1 * h + lambda2 * h * h;
}

/// Unbalanced-penalization QUBO (no slack variables).
inline QuboModel build_uqubo(const Graph& graph, std::size_t g, const PenaltyConfig& pc) {
  if (g < 1) throw ParameterError("g must be at least 1");
  const std::size_t n = graph.num_vertices();
  if (pc.lambda2.size() != n) throw ParameterError("lambda2 vector does not match the graph");
  for (const auto& l2 : pc.lambda2)
    if (l2 <= Rational(0)) throw ParameterError("lambda2 entries must be positive");
  if (n > 0 && !(pc.P * Rational(4) * pc.min_lambda2() > static_cast<std::int64_t>(n) * pc.lambda1 * pc.lambda1))
    throw ParameterError("P must exceed n * lambda1^2 / (4 min lambda2)");

  auto m = detail::qubo_skeleton(graph, QuboKind::uqubo, g, 0);
  m.penalties = pc;
  detail::QuboAccumulator acc(m);
  for (std::size_t j = 1; j <= g; ++j) acc.add_one_hot(pc.P, detail::column_vars(m, j));
  for (std::size_t i = 0; i < n; ++i) {
    // lambda1 (1 - cov)
    acc.add_constant(pc.lambda1);
    for (auto id : m.coverage[i]) acc.add(id, id, -pc.lambda1);
    // lambda2_i (1 - cov)^2
    std::vector<std::pair<std::size_t, Rational>> lin;
    for (auto id : m.coverage[i]) lin.emplace_back(id, Rational(-1));
    acc.add_square(pc.lambda2[i], Rational(1), lin);
  }
  acc.finish();
  return m;
}

// ---------------------------------------------------------------------------
// Energy

using BitVector = std::vector<std::uint8_t>;

inline Rational energy(const QuboModel& m, const BitVector& a) {
  if (a.size() != m.dim())
    throw ParameterError("assignment has " + std::to_string(a.size()) + " bits, model has " + std::to_string(m.dim()));
  Rational e = m.offset;
  for (const auto& [ij, c] : m.q)
    if (a[ij.first] && a[ij.second]) e += c;
  return e;
}

/// Integer image of a model: every coefficient times the common denominator.
struct ScaledQubo {
  std::size_t dim = 0;
  std::int64_t scale = 1;
  std::int64_t offset = 0;
  std::vector<std::int64_t> diag;
  /// Symmetric adjacency of off-diagonal couplings.
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adj;

  Rational to_rational(std::int64_t scaled) const { return Rational(scaled, scale); }

  std::int64_t energy(const BitVector& a) const {
    std::int64_t e = offset;
    for (std::size_t i = 0; i < dim; ++i) {
      if (!a[i]) continue;
      e += diag[i];
      for (auto [j, c] : adj[i])
        if (j > i && a[j]) e += c;
    }
    return e;
  }

  /// Energy change from flipping bit i.
  std::int64_t flip_delta(const BitVector& a, std::size_t i) const {
    std::int64_t field = diag[i];
    for (auto [j, c] : adj[i])
      if (a[j]) field += c;
    return a[i] ? -field : field;
  }
};

inline ScaledQubo scale(const QuboModel& m) {
  ScaledQubo s;
  s.dim = m.dim();
  std::int64_t L = m.offset.denominator();
  for (const auto& [ij, c] : m.q) L = boost::integer::lcm(L, c.denominator());
  s.scale = L;
  auto lift = [&](const Rational& r) { return r.numerator() * (L / r.denominator()); };
  s.offset = lift(m.offset);
  s.diag.assign(s.dim, 0);
  s.adj.assign(s.dim, {});
  for (const auto& [ij, c] : m.q) {
    auto [i, j] = ij;
    if (i == j) {
      s.diag[i] = lift(c);
    } else {
      s.adj[i].emplace_back(static_cast<std::uint32_t>(j), lift(c));
      s.adj[j].emplace_back(static_cast<std::uint32_t>(i), lift(c));
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Decoding

struct QuboDecode {
  std::optional<BurningSequence> sequence;
  bool valid = false;
  std::vector<std::size_t> bad_columns;  // 1-based columns with != 1 selections
  std::string report;
};

inline QuboDecode decode_qubo(const Graph& graph, const QuboModel& m, const BitVector& a) {
  if (a.size() != m.dim()) throw ParameterError("assignment length does not match the model dimension");
  QuboDecode d;
  BurningSequence s;
  s.vertices.resize(m.g);
  for (std::size_t j = 1; j <= m.g; ++j) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < m.n; ++i)
      if (a[m.x_id(i, j)]) {
        ++count;
        s.vertices[m.g - j] = static_cast<Vertex>(i);
      }
    if (count != 1) d.bad_columns.push_back(j);
  }
  if (!d.bad_columns.empty()) {
    d.report = "column multiplicity violated in column(s)";
    for (auto j : d.bad_columns) d.report += " " + std::to_string(j);
    return d;
  }
  d.valid = validate(graph, s);
  d.report = d.valid ? "valid burning sequence" : "one vertex per column, but some vertices stay unburned";
  d.sequence = std::move(s);
  return d;
}

// ---------------------------------------------------------------------------
// QUBO file (qbsolv-style)

/// Comment header (formulation, offset as exact rational, common scale,
/// variable legend), then `p qubo 0 <dim> <nDiagonals> <nElements>`,
/// diagonal lines, then off-diagonal lines, each in ascending (i, j) order.
inline void write_qubo(std::ostream& out, const QuboModel& m) {
  auto sq = scale(m);
  out << "c gburn " << to_string(m.kind) << " n=" << m.n << " g=" << m.g << " dim=" << m.dim() << '\n';
  if (m.penalties) {
    const auto& pc = *m.penalties;
    out << "c penalties mode=" << to_string(pc.mode) << " P=" << to_string(pc.P)
        << " lambda1=" << to_string(pc.lambda1) << '\n';
  }
  out << "c offset " << to_string(m.offset) << '\n';
  out << "c scale " << sq.scale << '\n';
  for (std::size_t k = 0; k < m.dim(); ++k) out << "c var " << k << ' ' << m.vars[k].name() << '\n';
  out << "p qubo 0 " << m.dim() << ' ' << m.num_diagonal() << ' ' << m.num_off_diagonal() << '\n';
  for (const auto& [ij, c] : m.q)
    if (ij.first == ij.second) out << ij.first << ' ' << ij.second << ' ' << to_decimal(c) << '\n';
  for (const auto& [ij, c] : m.q)
    if (ij.first != ij.second) out << ij.first << ' ' << ij.second << ' ' << to_decimal(c) << '\n';
}

inline void write_qubo_file(const QuboModel& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_qubo(out, m);
  if (!out) throw Error("write failed: " + path.string());
}

struct QuboFileContents {
  std::size_t dim = 0;
  std::map<std::pair<std::size_t, std::size_t>, Rational> q;
  Rational offset{0};
};

/// Reads back a file written by write_qubo. Values are recovered exactly via
/// the `c scale` comment (value * scale is an integer).
inline QuboFileContents read_qubo(std::istream& in) {
  QuboFileContents f;
  std::int64_t sc = 0;
  std::size_t n_diag = 0, n_elem = 0, seen_diag = 0, seen_elem = 0;
  bool have_header = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      std::string key;
      if (ls >> key) {
        if (key == "scale") ls >> sc;
        if (key == "offset") {
          std::string r;
          ls >> r;
          auto slash = r.find('/');
          f.offset = slash == std::string::npos ? Rational(std::stoll(r))
                                                : Rational(std::stoll(r.substr(0, slash)), std::stoll(r.substr(slash + 1)));
        }
      }
      continue;
    }
    if (tok == "p") {
      std::string kind, topo;
      if (!(ls >> kind >> topo >> f.dim >> n_diag >> n_elem) || kind != "qubo")
        throw ParseError("bad problem line", lineno);
      have_header = true;
      continue;
    }
    if (!have_header) throw ParseError("entry before problem line", lineno);
    std::size_t i = std::stoull(tok), j = 0;
    double v = 0;
    if (!(ls >> j >> v)) throw ParseError("bad entry", lineno);
    if (i > j || j >= f.dim) throw ParseError("entry outside the upper triangle", lineno);
    if (sc <= 0) throw ParseError("missing 'c scale' comment", lineno);
    f.q[{i, j}] = Rational(static_cast<std::int64_t>(std::llround(v * static_cast<double>(sc))), sc);
    (i == j ? seen_diag : seen_elem)++;
  }
  if (!have_header) throw ParseError("missing problem line", lineno);
  if (seen_diag != n_diag || seen_elem != n_elem) throw ParseError("entry counts do not match the header", lineno);
  return f;
}

}  // namespace gburn
