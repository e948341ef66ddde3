#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gburn/bench.hpp"
#include "gburn/burning.hpp"
#include "gburn/formulations.hpp"
#include "gburn/generators.hpp"
#include "gburn/graph_io.hpp"
#include "gburn/qubo.hpp"
#include "gburn/solvers/binary_search.hpp"
#include "gburn/solvers/row_generation.hpp"

namespace gburn::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalid = 1,  // invalid sequence, infeasible model, or upper-bound-only result
  kUsage = 2,    // bad arguments or unreadable input data
  kCapacity = 3,
  kBackend = 4,
};

// ---------------------------------------------------------------------------
// Graph sources

struct GeneratedGraph {
  Graph graph;
  std::string family;
  Json parameters = Json::object();
  std::optional<std::uint64_t> seed;
};

inline std::map<std::string, std::string> parse_key_values(const std::string& s) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParameterError("expected key=value in '" + item + "'");
    kv[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return kv;
}

inline std::size_t to_size(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size() || v < 0) throw 0;
    return static_cast<std::size_t>(v);
  } catch (...) {
    throw ParameterError("bad value '" + s + "' for " + what);
  }
}

inline double to_real(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw 0;
    return v;
  } catch (...) {
    throw ParameterError("bad value '" + s + "' for " + what);
  }
}

/// Families: path, cycle, complete (n); star (leaves); grid (rows, cols);
/// er (n, p, seed); geo (n, r, seed).
inline GeneratedGraph generate(const std::string& family, const std::map<std::string, std::string>& kv) {
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw ParameterError("generator '" + family + "' needs " + k);
    return it->second;
  };
  auto seed_of = [&]() -> std::uint64_t {
    auto it = kv.find("seed");
    return it == kv.end() ? 1 : static_cast<std::uint64_t>(to_size(it->second, "seed"));
  };
  std::vector<std::string> allowed;
  GeneratedGraph out;
  out.family = family;
  if (family == "path" || family == "cycle" || family == "complete") {
    allowed = {"n"};
    auto n = to_size(need("n"), "n");
    out.parameters["n"] = n;
    out.graph = family == "path" ? gen_path(n) : family == "cycle" ? gen_cycle(n) : gen_complete(n);
  } else if (family == "star") {
    allowed = {"leaves"};
    auto k = to_size(need("leaves"), "leaves");
    out.parameters["leaves"] = k;
    out.graph = gen_star(k);
  } else if (family == "grid") {
    allowed = {"rows", "cols"};
    auto r = to_size(need("rows"), "rows"), c = to_size(need("cols"), "cols");
    out.parameters["rows"] = r;
    out.parameters["cols"] = c;
    out.graph = gen_grid(r, c);
  } else if (family == "er") {
    allowed = {"n", "p", "seed"};
    auto n = to_size(need("n"), "n");
    double p = parse_family_parameter(need("p"), n);
    out.seed = seed_of();
    out.parameters["n"] = n;
    out.parameters["p"] = p;
    out.graph = gen_erdos_renyi(n, p, *out.seed);
  } else if (family == "geo") {
    allowed = {"n", "r", "seed"};
    auto n = to_size(need("n"), "n");
    double r = to_real(need("r"), "r");
    out.seed = seed_of();
    out.parameters["n"] = n;
    out.parameters["r"] = r;
    out.graph = gen_geometric(n, r, *out.seed);
  } else {
    throw ParameterError("unknown generator family '" + family + "' (known: path, cycle, complete, star, grid, er, geo)");
  }
  for (const auto& [k, v] : kv)
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
      throw ParameterError("generator '" + family + "' takes no parameter '" + k + "'");
  return out;
}

/// "family:key=value,key=value", e.g. "er:n=9,p=2/n,seed=7".
inline GeneratedGraph generate_from_spec(const std::string& spec) {
  auto colon = spec.find(':');
  std::string family = spec.substr(0, colon);
  auto kv = colon == std::string::npos ? std::map<std::string, std::string>{} : parse_key_values(spec.substr(colon + 1));
  return generate(family, kv);
}

struct GraphSource {
  std::string path;
  std::string format = "auto";
  std::string spec;

  void add_options(CLI::App* app) {
    auto* g = app->add_option("--graph", path, "Graph file (edge list or Matrix Market)");
    auto* s = app->add_option("--gen", spec, "Generator spec, e.g. er:n=9,p=2/n,seed=7 or path:n=9");
    g->excludes(s);
    app->add_option("--format", format, "Graph file format: auto, edges, mtx")
        ->check(CLI::IsMember({"auto", "edges", "mtx"}));
  }

  Graph load() const {
    if (path.empty() == spec.empty()) throw ParameterError("give exactly one graph source: --graph or --gen");
    if (!spec.empty()) return generate_from_spec(spec).graph;
    if (format == "edges") return load_graph(path, GraphFormat::edge_list);
    if (format == "mtx") return load_graph(path, GraphFormat::matrix_market);
    return load_graph(path);
  }
};

// ---------------------------------------------------------------------------
// Shared helpers

inline void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("write failed: " + path);
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw ParameterError("bad rational '" + s + "'");
  }
}

inline PenaltyMode parse_penalty_mode(const std::string& s) {
  if (s == "guided") return PenaltyMode::guided;
  if (s == "uniform") return PenaltyMode::uniform;
  throw ParameterError("penalties must be guided or uniform");
}

inline UpperBoundMode parse_upper_bound_mode(const std::string& s) {
  for (auto m : {UpperBoundMode::incumbent, UpperBoundMode::greedy, UpperBoundMode::literal})
    if (s == to_string(m)) return m;
  throw ParameterError("upper bound mode must be incumbent, greedy or literal");
}

inline PenaltyConfig penalties_for(const Graph& G, std::size_t g, PenaltyMode mode, const Rational& lambda1) {
  if (mode == PenaltyMode::guided) {
    auto fs = fire_sources(G, greedy_heuristic(G));
    return default_penalties(G, g, mode, &fs, lambda1);
  }
  return default_penalties(G, g, mode, nullptr, lambda1);
}

struct BackendOptions {
  std::string kind = "internal";
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::size_t ilp_binary_limit = 40;
  std::size_t dim_limit = kDefaultExhaustiveDimLimit;
  SaParams sa;
  std::string profile = "plain";
  std::string command;
  std::optional<std::string> marker;

  void add_options(CLI::App* app, bool with_external) {
    std::vector<std::string> kinds{"internal", "sa"};
    if (with_external) kinds.push_back("external");
    app->add_option("--backend", kind, "Backend: internal, sa" + std::string(with_external ? ", external" : ""))
        ->check(CLI::IsMember(kinds));
    app->add_option("--node-budget", node_budget, "Search node budget for exact backends");
    app->add_option("--ilp-binary-limit", ilp_binary_limit, "Binary-variable cap for generic branch and bound");
    app->add_option("--dim-limit", dim_limit, "Largest QUBO dim swept exhaustively");
    app->add_option("--sa-t0", sa.initial_temperature, "SA initial temperature");
    app->add_option("--sa-tf", sa.final_temperature, "SA final temperature");
    app->add_option("--sa-cooling", sa.cooling, "SA geometric cooling factor in (0,1)");
    app->add_option("--sa-steps", sa.steps_per_temperature, "SA proposals per temperature (0: 10 * dim)");
    app->add_option("--sa-restarts", sa.restarts, "SA restarts");
    app->add_option("--seed", sa.seed, "SA seed");
    if (with_external) {
      app->add_option("--external-profile", profile, "External solver preset: plain, cbc")
          ->check(CLI::IsMember({"plain", "cbc"}));
      app->add_option("--external-cmd", command, "External command template with {in} and {out}");
      app->add_option("--infeasible-marker", marker, "Solution-file line marking infeasibility");
    }
  }

  Backend build() const {
    Backend b;
    b.node_budget = node_budget;
    b.ilp_binary_limit = ilp_binary_limit;
    b.exhaustive_dim_limit = dim_limit;
    b.sa = sa;
    if (kind == "sa") {
      b.kind = BackendKind::simulated_annealing;
      sa.check();
    } else if (kind == "external") {
      b.kind = BackendKind::external_command;
      std::vector<std::string> argv;
      std::istringstream ss(command);
      for (std::string t; ss >> t;) argv.push_back(t);
      b.external = external_preset(profile, argv);
      if (marker) b.external.infeasible_marker = *marker;
      b.external.check();
    }
    return b;
  }
};

// ---------------------------------------------------------------------------
// gen

inline int cmd_gen(const std::string& family, const std::map<std::string, std::string>& kv, std::string out,
                   std::ostream& os) {
  auto gg = generate(family, kv);
  if (out.empty()) {
    out = family;
    for (const auto& [k, v] : kv) out += "-" + k + v;
    for (auto& ch : out)
      if (ch == '/') ch = '_';
    out += ".edges";
  }
  save_edge_list(out, gg.graph);
  Json side;
  side["family"] = gg.family;
  side["parameters"] = gg.parameters;
  side["seed"] = gg.seed ? Json(*gg.seed) : Json(nullptr);
  side["n"] = gg.graph.num_vertices();
  side["m"] = gg.graph.num_edges();
  side["components"] = connected_components(gg.graph).count;
  side["file"] = out;
  write_text(out + ".json", side.dump(2) + "\n", os);
  os << "wrote " << out << " and " << out << ".json (n=" << gg.graph.num_vertices() << ", m=" << gg.graph.num_edges()
     << ")\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// emit

/// Variable and constraint counts predicted by the closed-form table.
inline Json expected_counts(const std::string& formulation, std::size_t n, std::size_t k) {
  Json e;
  if (formulation == "prop-milp") {
    e["variables"] = 2 * k * n;
    e["constraints"] = k * n + k + n;
  } else if (formulation == "cov-csp") {
    e["variables"] = k * n;
    e["constraints"] = k + n;
  } else if (formulation == "cov-ilp") {
    e["variables"] = k * n;
    e["constraints"] = k + n - 1;
  } else if (formulation == "gbp-ilp") {
    e["variables"] = k * n;
    e["constraints"] = 2 * k + n - 1;
  } else if (formulation == "squbo") {
    e["dim"] = k * n + n * ceil_log2(k);
  } else if (formulation == "uqubo") {
    e["dim"] = k * n;
  }
  return e;
}

inline bool is_qubo_formulation(const std::string& f) { return f == "squbo" || f == "uqubo"; }

inline std::optional<Formulation> linear_formulation(const std::string& f) {
  if (f == "prop-milp") return Formulation::prop_milp;
  if (f == "cov-csp") return Formulation::cov_csp;
  if (f == "cov-ilp") return Formulation::cov_ilp;
  if (f == "gbp-ilp") return Formulation::gbp_ilp;
  return std::nullopt;
}

/// Columns parameter for a formulation: U for PROP-MILP / GBP-ILP, g otherwise.
inline std::size_t columns_for(const std::string& f, std::optional<std::size_t> g, std::optional<std::string> U,
                               const Graph& G) {
  bool wants_u = f == "prop-milp" || f == "gbp-ilp";
  if (wants_u) {
    if (!U) throw ParameterError(f + " needs --U");
    if (*U == "auto") return std::max<std::size_t>(1, greedy_heuristic(G).length());
    return to_size(*U, "U");
  }
  if (!g) throw ParameterError(f + " needs --g");
  return *g;
}

inline LinearModel build_linear(Formulation f, const Graph& G, std::size_t k) {
  switch (f) {
    case Formulation::prop_milp: return build_prop_milp(G, k);
    case Formulation::cov_csp: return build_cov_csp(G, k);
    case Formulation::cov_ilp: return build_cov_ilp(G, k);
    case Formulation::gbp_ilp: return build_gbp_ilp(G, k);
  }
  throw ParameterError("unknown formulation");
}

struct EmitArgs {
  std::string formulation;
  std::optional<std::size_t> g;
  std::optional<std::string> U;
  std::string penalties = "guided";
  std::string lambda1 = "1";
  std::string out;
  std::string manifest;
};

inline int cmd_emit(const Graph& G, const EmitArgs& a, std::ostream& os) {
  const auto k = columns_for(a.formulation, a.g, a.U, G);
  Json man;
  man["formulation"] = a.formulation;
  man["n"] = G.num_vertices();
  man[(a.formulation == "prop-milp" || a.formulation == "gbp-ilp") ? "U" : "g"] = k;
  std::string out = a.out;
  if (auto lf = linear_formulation(a.formulation)) {
    auto m = build_linear(*lf, G, k);
    if (out.empty()) out = a.formulation + ".lp";
    write_lp(m, out);
    std::size_t bins = m.num_binaries();
    man["file"] = out;
    man["variables"] = bins;
    man["continuous_variables"] = m.variables.size() - bins;
    man["constraints"] = m.constraints.size();
  } else if (is_qubo_formulation(a.formulation)) {
    QuboModel m;
    if (a.formulation == "squbo") {
      m = build_squbo(G, k);
    } else {
      auto pc = penalties_for(G, k, parse_penalty_mode(a.penalties), parse_rational(a.lambda1));
      m = build_uqubo(G, k, pc);
      man["penalties"] = {{"mode", a.penalties}, {"P", to_string(pc.P)}, {"lambda1", to_string(pc.lambda1)}};
      Json l2 = Json::array();
      for (const auto& v : pc.lambda2) l2.push_back(to_string(v));
      man["penalties"]["lambda2"] = l2;
    }
    if (out.empty()) out = a.formulation + ".qubo";
    write_qubo_file(m, out);
    man["file"] = out;
    man["dim"] = m.dim();
    man["diagonal_terms"] = m.num_diagonal();
    man["quadratic_terms"] = m.num_off_diagonal();
    man["offset"] = to_string(m.offset);
  } else {
    throw ParameterError("unknown formulation '" + a.formulation +
                         "' (known: prop-milp, cov-csp, cov-ilp, gbp-ilp, squbo, uqubo)");
  }
  auto expected = expected_counts(a.formulation, G.num_vertices(), k);
  bool match = true;
  for (const auto& [key, v] : expected.items()) match = match && man[key] == v;
  man["expected"] = expected;
  man["counts_match"] = match;
  std::string mpath = a.manifest.empty() ? out + ".json" : a.manifest;
  write_text(mpath, man.dump(2) + "\n", os);
  os << "wrote " << out << " and " << mpath << "\n";
  return match ? kOk : kInvalid;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string method = "binary-search:cmcp";
  std::optional<std::size_t> g;
  std::optional<std::string> U;
  std::string penalties = "guided";
  std::string upper_bound = "incumbent";
  std::size_t oracle_limit = kDefaultOracleLimit;
  std::string out;
};

inline SolveReport solve_oracle(const Graph& G, std::size_t limit) {
  Stopwatch sw;
  SolveReport r;
  r.method = "oracle";
  r.backend = Json{{"kind", "brute-force"}, {"limit", limit}};
  auto o = brute_force_burning_number(G, limit);
  r.burning_number = o.burning_number;
  r.witness = o.witness;
  r.status = SolveStatus::optimal;
  r.total_seconds = sw.seconds();
  return r;
}

inline SolveReport solve_direct(const Graph& G, const std::string& formulation, std::size_t k, const Backend& b,
                                PenaltyMode mode) {
  Stopwatch sw;
  SolveReport r;
  r.method = "direct:" + formulation;
  r.backend = b.to_json();
  IterationRecord it;
  it.guess = k;
  it.backend = to_string(b.kind);
  std::optional<BurningSequence> seq;
  if (auto lf = linear_formulation(formulation)) {
    auto m = build_linear(*lf, G, k);
    it.sizes = {{"variables", m.variables.size()}, {"constraints", m.constraints.size()}};
    auto s = solve_linear(m, b);
    if (s.infeasible) {
      r.status = SolveStatus::infeasible;
      it.detail = "infeasible";
    } else {
      r.status = SolveStatus::optimal;
      r.objective = std::llround(s.assignment.objective);
      it.objective = r.objective;
      it.detail = s.path;
      auto d = decode(m, s.assignment);
      if (d.sequence && validate(G, *d.sequence)) seq = d.sequence;
      if (!d.note.empty()) it.detail += "; " + d.note;
    }
  } else if (is_qubo_formulation(formulation)) {
    QuboModel m = formulation == "squbo" ? build_squbo(G, k) : build_uqubo(G, k, penalties_for(G, k, mode, Rational(1)));
    if (formulation == "uqubo") r.backend["penalties"] = to_string(mode);
    it.sizes = {{"dim", m.dim()}, {"quadratic_terms", m.num_off_diagonal()}};
    BitVector a;
    Rational e;
    r.status = SolveStatus::optimal;
    if (b.kind == BackendKind::simulated_annealing) {
      auto s = simulated_annealing(m, b.sa);
      a = s.assignment;
      e = s.energy;
      r.status = SolveStatus::upper_bound_only;
    } else if (b.kind == BackendKind::internal_exhaustive) {
      auto s = formulation == "squbo" ? exhaustive_minimize(m, b.exhaustive_dim_limit) : minimize_uqubo(m, b.uqubo_options());
      a = s.assignment;
      e = s.energy;
      if (!s.certified) r.status = SolveStatus::upper_bound_only;
      it.detail = s.path;
    } else {
      throw ParameterError("QUBO models need the internal or sa backend");
    }
    it.detail += (it.detail.empty() ? "" : "; ") + std::string("energy ") + to_string(e);
    auto d = decode_qubo(G, m, a);
    if (d.valid) seq = d.sequence;
    if (!d.valid) it.detail += "; " + d.report;
  } else {
    throw ParameterError("unknown formulation '" + formulation + "'");
  }
  if (seq) {
    r.witness = *seq;
    r.burning_number = seq->length();
  } else {
    r.witness_from_embedding = false;
  }
  it.success = seq.has_value();
  it.seconds = sw.seconds();
  r.iterations.push_back(it);
  r.total_seconds = sw.seconds();
  return r;
}

inline int status_exit(const Graph& G, const SolveReport& r) {
  if (r.status != SolveStatus::optimal) return kInvalid;
  if (r.method.rfind("direct:", 0) == 0 && !r.witness_from_embedding) return kInvalid;
  if (G.num_vertices() > 0 && !validate(G, r.witness)) return kInvalid;
  return kOk;
}

inline int cmd_solve(const Graph& G, const SolveArgs& a, const Backend& b, std::ostream& os) {
  SolveReport r;
  const std::string& m = a.method;
  if (m == "oracle") {
    r = solve_oracle(G, a.oracle_limit);
  } else if (m.rfind("binary-search:", 0) == 0) {
    BinarySearchOptions opt;
    opt.penalty_mode = parse_penalty_mode(a.penalties);
    opt.upper_bound = parse_upper_bound_mode(a.upper_bound);
    r = binary_search_burning(G, parse_embedding(m.substr(14)), b, opt);
  } else if (m == "row-generation") {
    std::string U = a.U.value_or("auto");
    std::size_t k = U == "auto" ? std::max<std::size_t>(1, greedy_heuristic(G).length()) : to_size(U, "U");
    r = row_generation_solve(G, k, b);
    r.objective = static_cast<std::int64_t>(r.burning_number);
  } else if (m.rfind("direct:", 0) == 0) {
    std::string f = m.substr(7);
    r = solve_direct(G, f, columns_for(f, a.g, a.U, G), b, parse_penalty_mode(a.penalties));
  } else {
    throw ParameterError("unknown method '" + m + "' (oracle, binary-search:<embedding>, row-generation, direct:<formulation>)");
  }
  write_text(a.out, to_json(G, r).dump(2) + "\n", os);
  return status_exit(G, r);
}

// ---------------------------------------------------------------------------
// validate

/// A JSON array of labels, or labels separated by whitespace or commas.
inline std::vector<Label> parse_label_list(const std::string& text) {
  std::vector<Label> out;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '[') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad JSON sequence: ") + e.what(), 1);
    }
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw ParseError("sequence entries must be integer labels", 1);
      out.push_back(v.get<Label>());
    }
    return out;
  }
  std::string t = text;
  for (auto& c : t)
    if (c == ',') c = ' ';
  std::istringstream ss(t);
  for (std::string tok; ss >> tok;) {
    try {
      std::size_t used = 0;
      long long v = std::stoll(tok, &used);
      if (used != tok.size()) throw 0;
      out.push_back(v);
    } catch (...) {
      throw ParseError("bad label '" + tok + "'", 1);
    }
  }
  return out;
}

inline BurningSequence sequence_from_labels(const Graph& G, const std::vector<Label>& labels) {
  BurningSequence s;
  for (auto l : labels) {
    auto v = G.find_label(l);
    if (!v) throw ParseError("unknown vertex label " + std::to_string(l), 1);
    s.vertices.push_back(*v);
  }
  return s;
}

inline int cmd_validate(const Graph& G, const BurningSequence& s, bool as_json, std::ostream& os) {
  bool ok = validate(G, s);
  auto unc = uncovered_vertices(G, s);
  auto fs = fire_sources(G, s);
  if (as_json) {
    Json j;
    j["valid"] = ok;
    j["length"] = s.length();
    j["uncovered"] = labels_of(G, unc);
    Json counts = Json::object();
    for (Vertex v = 0; v < G.num_vertices(); ++v) counts[std::to_string(G.label(v))] = fs.counts[v];
    j["fire_sources"] = counts;
    os << j.dump(2) << "\n";
  } else {
    os << (ok ? "valid" : "invalid") << "\n";
    os << "uncovered:";
    for (auto v : unc) os << ' ' << G.label(v);
    os << "\nfire_sources:";
    for (Vertex v = 0; v < G.num_vertices(); ++v) os << ' ' << G.label(v) << '=' << fs.counts[v];
    os << "\n";
  }
  return ok ? kOk : kInvalid;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& os = std::cout, std::ostream& es = std::cerr) {
  CLI::App app{"gburn: graph burning numbers via mathematical programs"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph: edge list plus JSON sidecar");
  std::string gen_family, gen_out;
  std::optional<std::string> gen_n, gen_p, gen_r, gen_rows, gen_cols, gen_leaves, gen_seed;
  gen->add_option("family", gen_family, "path, cycle, complete, star, grid, er, geo")->required();
  gen->add_option("--n", gen_n, "Vertex count");
  gen->add_option("--p", gen_p, "Edge probability (er); accepts forms like 2/n or 1/2n");
  gen->add_option("--r", gen_r, "Connection radius (geo)");
  gen->add_option("--rows", gen_rows, "Grid rows");
  gen->add_option("--cols", gen_cols, "Grid columns");
  gen->add_option("--leaves", gen_leaves, "Star leaves");
  gen->add_option("--seed", gen_seed, "Seed (er, geo)");
  gen->add_option("-o,--out", gen_out, "Output edge list (sidecar is <out>.json)");

  // emit
  auto* emit = app.add_subcommand("emit", "Write a model as .lp or .qubo plus a JSON manifest");
  GraphSource emit_src;
  EmitArgs ea;
  emit->add_option("formulation", ea.formulation, "prop-milp, cov-csp, cov-ilp, gbp-ilp, squbo, uqubo")->required();
  emit_src.add_options(emit);
  emit->add_option("--g", ea.g, "Guess g (cov-csp, cov-ilp, squbo, uqubo)");
  emit->add_option("--U", ea.U, "Upper bound U or 'auto' (prop-milp, gbp-ilp)");
  emit->add_option("--penalties", ea.penalties, "uQUBO penalties: guided or uniform");
  emit->add_option("--lambda1", ea.lambda1, "uQUBO lambda1 (integer or p/q)");
  emit->add_option("-o,--out", ea.out, "Model file");
  emit->add_option("--manifest", ea.manifest, "Manifest path (default <out>.json)");

  // solve
  auto* solve = app.add_subcommand("solve", "Compute a burning number and witness; prints a JSON report");
  GraphSource solve_src;
  SolveArgs sa;
  BackendOptions solve_backend;
  solve_src.add_options(solve);
  solve->add_option("--method", sa.method,
                    "oracle | binary-search:{cmcp,cov-csp,cov-ilp,squbo,uqubo} | row-generation | direct:<formulation>");
  solve->add_option("--g", sa.g, "Guess g (direct cov-*, squbo, uqubo)");
  solve->add_option("--U", sa.U, "U or 'auto' (row-generation, direct prop-milp / gbp-ilp)");
  solve->add_option("--penalties", sa.penalties, "uQUBO penalties: guided or uniform");
  solve->add_option("--upper-bound", sa.upper_bound, "Binary-search start: incumbent, greedy, literal");
  solve->add_option("--oracle-limit", sa.oracle_limit, "Largest n for the brute-force oracle");
  solve->add_option("-o,--out", sa.out, "Report path (default stdout)");
  solve_backend.add_options(solve, true);

  // validate
  auto* val = app.add_subcommand("validate", "Check a burning sequence against a graph");
  GraphSource val_src;
  std::string seq_file, seq_inline;
  bool val_json = false;
  val_src.add_options(val);
  auto* sf = val->add_option("--sequence", seq_file, "File with a JSON array of labels (or whitespace-separated labels)");
  auto* si = val->add_option("--seq", seq_inline, "Inline labels, e.g. 1,5,3");
  sf->excludes(si);
  val->add_flag("--json", val_json, "Print the verdict as JSON");

  // bench
  auto* bench = app.add_subcommand("bench", "Success rates of binary-search methods on random graph families");
  std::string bench_family = "er", bench_params, bench_methods = "uqubo-uniform,uqubo-guided", bench_format = "tsv",
              bench_out, bench_ub = "greedy";
  BenchConfig bc;
  BackendOptions bench_backend;
  bench->add_option("--family", bench_family, "er or geo")->check(CLI::IsMember({"er", "geo"}));
  bench->add_option("--n", bc.n, "Vertices per graph");
  bench->add_option("--params", bench_params, "Comma-separated p (er, e.g. 1/2n,2/n) or r (geo) values");
  bench->add_option("--reps", bc.replications, "Graphs per parameter value");
  bench->add_option("--methods", bench_methods,
                    "Comma-separated: uqubo-guided, uqubo-uniform, cmcp, cov-csp, cov-ilp, squbo");
  bench->add_option("--root-seed", bc.root_seed, "Root seed; instance seeds are split from it");
  bench->add_option("--jobs", bc.jobs, "Worker threads");
  bench->add_option("--oracle-limit", bc.oracle_limit, "Largest n for the brute-force oracle");
  bench->add_option("--upper-bound", bench_ub, "Binary-search start: greedy (default), incumbent, literal");
  bench->add_option("--format", bench_format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
  bench->add_option("-o,--out", bench_out, "Output path (default stdout)");
  bench_backend.add_options(bench, false);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, os, es);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) {
      std::map<std::string, std::string> kv;
      auto put = [&](const char* k, const std::optional<std::string>& v) {
        if (v) kv[k] = *v;
      };
      put("n", gen_n);
      put("p", gen_p);
      put("r", gen_r);
      put("rows", gen_rows);
      put("cols", gen_cols);
      put("leaves", gen_leaves);
      put("seed", gen_seed);
      return cmd_gen(gen_family, kv, gen_out, os);
    }
    if (emit->parsed()) return cmd_emit(emit_src.load(), ea, os);
    if (solve->parsed()) return cmd_solve(solve_src.load(), sa, solve_backend.build(), os);
    if (val->parsed()) {
      auto G = val_src.load();
      std::string text = seq_inline;
      if (!seq_file.empty()) {
        std::ifstream f(seq_file);
        if (!f) throw ParameterError("cannot read " + seq_file);
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
      } else if (seq_inline.empty() && val->count("--seq") == 0) {
        throw ParameterError("give --sequence FILE or --seq LABELS");
      }
      return cmd_validate(G, sequence_from_labels(G, parse_label_list(text)), val_json, os);
    }
    if (bench->parsed()) {
      bc.family = bench_family == "er" ? BenchFamily::erdos_renyi : BenchFamily::geometric;
      bc.backend = bench_backend.build();
      bc.upper_bound = parse_upper_bound_mode(bench_ub);
      if (!bench_params.empty()) {
        bc.parameters.clear();
        std::stringstream ss(bench_params);
        for (std::string p; std::getline(ss, p, ',');)
          if (!p.empty()) bc.parameters.push_back(p);
      } else if (bc.family == BenchFamily::geometric) {
        throw ParameterError("geo bench needs --params with radius values");
      }
      bc.methods.clear();
      std::stringstream ms(bench_methods);
      for (std::string m; std::getline(ms, m, ',');)
        if (!m.empty()) bc.methods.push_back(parse_bench_method(m));
      auto table = run_bench(bc);
      std::ostringstream text;
      if (bench_format == "json")
        text << bench_to_json(table).dump(2) << "\n";
      else
        write_bench_tsv(text, table);
      write_text(bench_out, text.str(), os);
      return kOk;
    }
  } catch (const CapacityError& e) {
    es << "capacity: " << e.what() << "\n";
    return kCapacity;
  } catch (const BackendError& e) {
    es << "backend: " << e.what() << "\n";
    return kBackend;
  } catch (const FormatError& e) {
    es << "backend output: " << e.what() << "\n";
    return kBackend;
  } catch (const ParameterError& e) {
    es << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    es << "data: " << e.what() << "\n";
    return kUsage;
  } catch (const EmptyGraphError& e) {
    es << "data: " << e.what() << "\n";
    return kUsage;
  } catch (const DecodeError& e) {
    es << "decode: " << e.what() << "\n";
    return kBackend;
  } catch (const std::exception& e) {
    es << "error: " << e.what() << "\n";
    return kBackend;
  }
  return kUsage;
}

inline int run(int argc, char** argv, std::ostream& os = std::cout, std::ostream& es = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, os, es);
}

}  // namespace gburn::cli
