#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "gburn/burning.hpp"
#include "gburn/generators.hpp"
#include "gburn/random.hpp"
#include "gburn/solvers/binary_search.hpp"

namespace gburn {

struct BenchMethod {
  std::string name;
  Embedding embedding = Embedding::cmcp;
  PenaltyMode penalties = PenaltyMode::guided;
};

inline BenchMethod parse_bench_method(const std::string& s) {
  if (s == "uqubo-guided") return {s, Embedding::uqubo, PenaltyMode::guided};
  if (s == "uqubo-uniform") return {s, Embedding::uqubo, PenaltyMode::uniform};
  if (s == "uqubo") return {s, Embedding::uqubo, PenaltyMode::guided};
  return {s, parse_embedding(s), PenaltyMode::guided};
}

enum class BenchFamily { erdos_renyi, geometric };

/// "0.3", "2/n", "1/2n" (= 1 / (2n)), "a/bn".
inline double parse_family_parameter(const std::string& text, std::size_t n) {
  auto fail = [&] { return ParameterError("cannot parse parameter '" + text + "'"); };
  auto slash = text.find('/');
  auto to_double = [&](const std::string& t) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(t, &used);
    } catch (...) {
      throw fail();
    }
    if (used != t.size()) throw fail();
    return v;
  };
  if (slash == std::string::npos) return to_double(text);
  double num = to_double(text.substr(0, slash));
  std::string den = text.substr(slash + 1);
  double mult = 1;
  if (!den.empty() && den.back() == 'n') {
    mult = static_cast<double>(n);
    den.pop_back();
  }
  double d = den.empty() ? 1.0 : to_double(den);
  if (d * mult == 0) throw fail();
  return num / (d * mult);
}

struct BenchConfig {
  BenchFamily family = BenchFamily::erdos_renyi;
  std::size_t n = 9;
  std::vector<std::string> parameters{"1/2n", "2/n", "3/n", "5/n"};  // p (ER) or r (geometric)
  std::size_t replications = 100;
  std::vector<BenchMethod> methods{parse_bench_method("uqubo-uniform"), parse_bench_method("uqubo-guided")};
  std::uint64_t root_seed = 1;
  Backend backend;
  std::size_t oracle_limit = kDefaultOracleLimit;
  std::size_t jobs = 1;
  UpperBoundMode upper_bound = UpperBoundMode::greedy;
};

struct BenchInstance {
  std::uint64_t seed = 0;
  std::size_t components = 0;
  std::size_t oracle = 0;
  std::vector<std::size_t> found;   // per method, 0 on error
  std::vector<bool> success;        // per method
  std::vector<std::string> errors;  // per method, empty when fine
  std::vector<bool> exact;          // per method: every QUBO verdict rested on a proven minimum
};

struct BenchCell {
  std::string parameter;
  double value = 0;
  std::vector<BenchInstance> instances;

  double success_rate(std::size_t method) const {
    if (instances.empty()) return 0;
    std::size_t ok = 0;
    for (const auto& in : instances) ok += in.success[method] ? 1 : 0;
    return 100.0 * static_cast<double>(ok) / static_cast<double>(instances.size());
  }
  double mean_components() const {
    if (instances.empty()) return 0;
    double s = 0;
    for (const auto& in : instances) s += static_cast<double>(in.components);
    return s / static_cast<double>(instances.size());
  }
};

struct BenchTable {
  BenchConfig config;
  std::vector<BenchCell> cells;
};

/// Instance (cell c, replication r) uses seed split_seed(split_seed(root, c), r).
inline std::uint64_t bench_instance_seed(std::uint64_t root, std::size_t cell, std::size_t rep) {
  return split_seed(split_seed(root, cell), rep);
}

inline Graph bench_graph(const BenchConfig& cfg, double value, std::uint64_t seed) {
  return cfg.family == BenchFamily::erdos_renyi ? gen_erdos_renyi(cfg.n, value, seed)
                                                : gen_geometric(cfg.n, value, seed);
}

inline BenchInstance run_bench_instance(const BenchConfig& cfg, double value, std::uint64_t seed) {
  BenchInstance in;
  in.seed = seed;
  auto G = bench_graph(cfg, value, seed);
  in.components = connected_components(G).count;
  in.oracle = brute_force_burning_number(G, cfg.oracle_limit).burning_number;
  for (const auto& m : cfg.methods) {
    // u starts at the greedy length and only sequences produced by the
    // embedding count, so the greedy incumbent is never credited to it.
    BinarySearchOptions opt;
    opt.penalty_mode = m.penalties;
    opt.upper_bound = cfg.upper_bound;
    std::size_t found = 0;
    bool ok = false;
    std::string err;
    bool exact = true;
    try {
      auto rep = binary_search_burning(G, m.embedding, cfg.backend, opt);
      found = rep.burning_number;
      exact = rep.exact_verdicts;
      ok = rep.witness_from_embedding && validate(G, rep.witness) && found == in.oracle;
    } catch (const Error& e) {
      err = e.what();
    }
    in.found.push_back(found);
    in.success.push_back(ok);
    in.errors.push_back(err);
    in.exact.push_back(exact);
  }
  return in;
}

/// Runs every (parameter, replication) instance; workers pull tasks from a
/// shared counter and write into fixed slots, so the table does not depend
/// on scheduling.
inline BenchTable run_bench(const BenchConfig& cfg) {
  if (cfg.replications < 1) throw ParameterError("replication count must be at least 1");
  if (cfg.methods.empty()) throw ParameterError("bench needs at least one method");
  if (cfg.n > cfg.oracle_limit)
    throw ParameterError("bench graphs must stay within the oracle limit of " + std::to_string(cfg.oracle_limit) +
                         " vertices");
  BenchTable t;
  t.config = cfg;
  for (const auto& p : cfg.parameters) {
    BenchCell c;
    c.parameter = p;
    c.value = parse_family_parameter(p, cfg.n);
    c.instances.resize(cfg.replications);
    t.cells.push_back(std::move(c));
  }
  const std::size_t total = t.cells.size() * cfg.replications;
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < total;) {
      std::size_t c = k / cfg.replications, r = k % cfg.replications;
      try {
        t.cells[c].instances[r] =
            run_bench_instance(cfg, t.cells[c].value, bench_instance_seed(cfg.root_seed, c, r));
      } catch (...) {
        std::lock_guard lk(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::size_t jobs = std::max<std::size_t>(1, std::min(cfg.jobs, total));
  std::vector<std::thread> pool;
  for (std::size_t j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return t;
}

inline std::string format_fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

/// parameter, one success % column per method, <c>.
inline void write_bench_tsv(std::ostream& out, const BenchTable& t) {
  out << "# family=" << (t.config.family == BenchFamily::erdos_renyi ? "er" : "geo") << " n=" << t.config.n
      << " reps=" << t.config.replications << " root_seed=" << t.config.root_seed
      << " backend=" << to_string(t.config.backend.kind) << "\n";
  out << (t.config.family == BenchFamily::erdos_renyi ? "p" : "r");
  for (const auto& m : t.config.methods) out << "\t" << m.name << "_%";
  out << "\tmean_components\n";
  for (const auto& c : t.cells) {
    out << c.parameter;
    for (std::size_t k = 0; k < t.config.methods.size(); ++k) out << "\t" << format_fixed(c.success_rate(k), 0);
    out << "\t" << format_fixed(c.mean_components(), 2) << "\n";
  }
}

inline Json bench_to_json(const BenchTable& t) {
  Json j;
  j["family"] = t.config.family == BenchFamily::erdos_renyi ? "er" : "geo";
  j["n"] = t.config.n;
  j["replications"] = t.config.replications;
  j["root_seed"] = t.config.root_seed;
  j["backend"] = t.config.backend.to_json();
  Json methods = Json::array();
  for (const auto& m : t.config.methods) methods.push_back(m.name);
  j["methods"] = methods;
  Json cells = Json::array();
  for (const auto& c : t.cells) {
    Json cj;
    cj["parameter"] = c.parameter;
    cj["value"] = c.value;
    Json rates = Json::object();
    for (std::size_t k = 0; k < t.config.methods.size(); ++k) rates[t.config.methods[k].name] = c.success_rate(k);
    cj["success_percent"] = rates;
    cj["mean_components"] = c.mean_components();
    Json inst = Json::array();
    for (const auto& in : c.instances) {
      Json ij;
      ij["seed"] = in.seed;
      ij["components"] = in.components;
      ij["oracle"] = in.oracle;
      ij["found"] = in.found;
      ij["success"] = in.success;
      ij["exact"] = in.exact;
      bool any_err = std::any_of(in.errors.begin(), in.errors.end(), [](const auto& e) { return !e.empty(); });
      if (any_err) ij["errors"] = in.errors;
      inst.push_back(std::move(ij));
    }
    cj["instances"] = std::move(inst);
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  return j;
}

}  // namespace gburn
