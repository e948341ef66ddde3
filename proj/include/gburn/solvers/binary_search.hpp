#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>

#include "gburn/burning.hpp"
#include "gburn/formulations.hpp"
#include "gburn/qubo.hpp"
#include "gburn/solvers/backend.hpp"
#include "gburn/solvers/cmcp.hpp"

namespace gburn {

enum class Embedding { cmcp, cov_csp, cov_ilp, squbo, uqubo };

inline const char* to_string(Embedding e) {
  switch (e) {
    case Embedding::cmcp: return "cmcp";
    case Embedding::cov_csp: return "cov-csp";
    case Embedding::cov_ilp: return "cov-ilp";
    case Embedding::squbo: return "squbo";
    case Embedding::uqubo: return "uqubo";
  }
  return "?";
}

inline Embedding parse_embedding(const std::string& s) {
  for (auto e : {Embedding::cmcp, Embedding::cov_csp, Embedding::cov_ilp, Embedding::squbo, Embedding::uqubo})
    if (s == to_string(e)) return e;
  throw ParameterError("unknown embedding '" + s + "' (known: cmcp, cov-csp, cov-ilp, squbo, uqubo)");
}

/// Initial u of the search.
///  incumbent: min(|greedy| - 1, closed-form bound); the greedy sequence is
///             the answer if every guess fails.
///  greedy:    min(|greedy|, closed-form bound); the embedding itself must
///             produce the witness whenever it can.
///  literal:   |V|, as in the textbook loop.
enum class UpperBoundMode { incumbent, greedy, literal };

inline const char* to_string(UpperBoundMode m) {
  switch (m) {
    case UpperBoundMode::incumbent: return "incumbent";
    case UpperBoundMode::greedy: return "greedy";
    case UpperBoundMode::literal: return "literal";
  }
  return "?";
}

struct BinarySearchOptions {
  UpperBoundMode upper_bound = UpperBoundMode::incumbent;
  PenaltyMode penalty_mode = PenaltyMode::guided;
};

/// Result of one guess inside the search.
struct GuessOutcome {
  bool success = false;
  std::optional<BurningSequence> sequence;
  bool certified = true;      // a failure really proves g < b(G)
  bool exact_minimum = true;  // QUBO verdict rests on a proven minimum
  std::string detail;
  std::map<std::string, std::size_t> sizes;
};

namespace detail {

inline void require_backend(Embedding e, const Backend& b) {
  bool ok = false;
  switch (e) {
    case Embedding::cmcp: ok = b.kind == BackendKind::internal_exhaustive; break;
    case Embedding::cov_csp:
    case Embedding::cov_ilp: ok = b.kind != BackendKind::simulated_annealing; break;
    case Embedding::squbo:
    case Embedding::uqubo: ok = b.kind != BackendKind::external_command; break;
  }
  if (!ok)
    throw ParameterError(std::string("embedding ") + to_string(e) + " cannot run on the " + to_string(b.kind) +
                         " backend");
}

inline void require_valid(const Graph& G, const BurningSequence& s, const char* what) {
  if (!validate(G, s)) throw BackendError(std::string(what) + " produced a sequence that does not burn the graph");
}

inline GuessOutcome linear_guess(const Graph& G, const LinearModel& m, const Backend& b) {
  GuessOutcome o;
  o.sizes = {{"variables", m.variables.size()}, {"constraints", m.constraints.size()}};
  auto s = solve_linear(m, b);
  if (s.infeasible) {
    o.detail = "infeasible";
    return o;
  }
  auto d = decode(m, s.assignment);
  if (!d.sequence) {
    o.detail = d.note;
    return o;
  }
  require_valid(G, *d.sequence, to_string(m.formulation));
  o.success = true;
  o.sequence = std::move(d.sequence);
  o.detail = "objective " + std::to_string(static_cast<long long>(std::llround(s.assignment.objective)));
  return o;
}

inline GuessOutcome qubo_guess(const Graph& G, const QuboModel& m, const Backend& b) {
  GuessOutcome o;
  o.sizes = {{"dim", m.dim()}, {"quadratic_terms", m.num_off_diagonal()}};
  BitVector a;
  Rational e;
  bool uncertified_minimum = false;
  if (b.kind == BackendKind::simulated_annealing) {
    auto r = simulated_annealing(m, b.sa);
    a = std::move(r.assignment);
    e = r.energy;
    o.certified = false;
  } else if (m.kind == QuboKind::uqubo) {
    auto r = minimize_uqubo(m, b.uqubo_options());
    a = std::move(r.assignment);
    e = r.energy;
    // Even the exact minimum can decode to a non-burning sequence while a
    // shorter one exists, so a uQUBO failure never proves g < b(G).
    o.certified = false;
    // An invalid one-hot minimum settles the verdict anyway: anything lower
    // is not one-hot and so decodes to nothing. A valid one does not.
    uncertified_minimum = !r.certified;
  } else {
    auto r = exhaustive_minimize(m, b.exhaustive_dim_limit);
    a = std::move(r.assignment);
    e = r.energy;
  }
  o.detail += "energy " + to_string(e);
  auto d = decode_qubo(G, m, a);
  if (m.kind == QuboKind::squbo) {
    o.success = e == Rational(0);
    if (o.success) {
      if (!d.valid) throw BackendError("zero-energy sQUBO state does not decode to a burning sequence");
    }
  } else {
    o.success = d.valid;
    if (o.success && uncertified_minimum) {
      o.exact_minimum = false;
      o.detail += "; valid one-hot minimum not certified as the global minimum";
    }
  }
  if (o.success) o.sequence = d.sequence;
  return o;
}

template <class E>
[[noreturn]] void rethrow_with(const E& e, std::size_t g) {
  throw E("at g = " + std::to_string(g) + ": " + e.what());
}

}  // namespace detail

/// Decision step of the search: is there a burning sequence of length g,
/// asked through the chosen embedding?
inline GuessOutcome evaluate_guess(const Graph& G, std::size_t g, Embedding e, const Backend& b,
                                   const BurningSequence& guide, PenaltyMode mode) {
  switch (e) {
    case Embedding::cmcp: {
      CmcpOptions o;
      o.stop_when_full = true;
      o.node_budget = b.node_budget;
      auto r = solve_cmcp_exhaustive(G, g, o);
      GuessOutcome out;
      out.sizes = {{"vertices", G.num_vertices()}, {"radii", g}};
      out.detail = "covered " + std::to_string(r.covered) + "/" + std::to_string(G.num_vertices());
      if (r.covered == G.num_vertices()) {
        detail::require_valid(G, r.selection, "cmcp");
        out.success = true;
        out.sequence = r.selection;
      }
      return out;
    }
    case Embedding::cov_csp: return detail::linear_guess(G, build_cov_csp(G, g), b);
    case Embedding::cov_ilp: return detail::linear_guess(G, build_cov_ilp(G, g), b);
    case Embedding::squbo: return detail::qubo_guess(G, build_squbo(G, g), b);
    case Embedding::uqubo: {
      PenaltyConfig pc;
      if (mode == PenaltyMode::uniform && g == 1) {
        // lambda1 / (g - 1) is undefined at g = 1; use lambda2 = lambda1.
        FireSourceCounts fs;
        fs.counts.assign(G.num_vertices(), 1U);
        pc = default_penalties(G, g, PenaltyMode::guided, &fs);
        pc.mode = PenaltyMode::uniform;
      } else {
        auto fs = fire_sources(G, guide);
        pc = default_penalties(G, g, mode, mode == PenaltyMode::guided ? &fs : nullptr);
      }
      return detail::qubo_guess(G, build_uqubo(G, g, pc), b);
    }
  }
  throw ParameterError("unknown embedding");
}

/// l = 1, u = u0; g = floor((l + u) / 2); success -> u = g - 1, else
/// l = g + 1. If no guess succeeds the greedy sequence is returned.
inline SolveReport binary_search_burning(const Graph& G, Embedding e, const Backend& b,
                                         const BinarySearchOptions& opt = {}) {
  detail::require_backend(e, b);
  Stopwatch total;
  SolveReport rep;
  rep.method = std::string("binary-search:") + to_string(e);
  rep.backend = b.to_json();
  if (e == Embedding::uqubo) rep.backend["penalties"] = to_string(opt.penalty_mode);
  const std::size_t n = G.num_vertices();
  if (n == 0) return rep;

  auto ub = upper_bound(G);
  std::optional<BurningSequence> best;
  std::size_t l = 1;
  std::size_t u = n;
  if (opt.upper_bound == UpperBoundMode::incumbent) u = std::min(ub.witness.length() - 1, ub.value);
  if (opt.upper_bound == UpperBoundMode::greedy) u = ub.value;
  rep.initial_upper_bound = u;
  bool certified = true;
  while (l <= u) {
    std::size_t g = (l + u) / 2;
    Stopwatch sw;
    GuessOutcome o;
    try {
      o = evaluate_guess(G, g, e, b, ub.witness, opt.penalty_mode);
    } catch (const CapacityError& ex) {
      detail::rethrow_with(ex, g);
    } catch (const BackendError& ex) {
      detail::rethrow_with(ex, g);
    } catch (const FormatError& ex) {
      detail::rethrow_with(ex, g);
    }
    IterationRecord it;
    it.guess = g;
    it.backend = to_string(b.kind);
    it.seconds = sw.seconds();
    it.sizes = o.sizes;
    it.success = o.success;
    it.detail = o.detail;
    rep.iterations.push_back(std::move(it));
    rep.exact_verdicts = rep.exact_verdicts && o.exact_minimum;
    if (o.success) {
      if (!best || o.sequence->length() < best->length()) best = *o.sequence;
      u = g - 1;
    } else {
      certified = certified && o.certified;
      l = g + 1;
    }
  }
  // Every guess up to u0 failed: the greedy sequence is the answer.
  rep.witness_from_embedding = best.has_value();
  rep.witness = best ? *best : ub.witness;
  rep.burning_number = rep.witness.length();
  rep.status = certified ? SolveStatus::optimal : SolveStatus::upper_bound_only;
  rep.total_seconds = total.seconds();
  return rep;
}

}  // namespace gburn
