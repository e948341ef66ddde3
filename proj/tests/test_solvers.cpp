#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gburn/solvers/binary_search.hpp"
#include "gburn/solvers/row_generation.hpp"
#include "qubo_util.hpp"

using namespace gburn;
using namespace gburn::testing;

namespace {

Backend internal() { return Backend{}; }

Backend sa_backend(std::uint64_t seed = 1) {
  Backend b;
  b.kind = BackendKind::simulated_annealing;
  b.sa.seed = seed;
  return b;
}

Backend shell_backend(const std::string& script) {
  Backend b;
  b.kind = BackendKind::external_command;
  b.external = external_preset("plain", {"/bin/sh", "-c", script, "sh", "{in}", "{out}"});
  return b;
}

void expect_consistent(const Graph& G, const SolveReport& r) {
  EXPECT_TRUE(validate(G, r.witness));
  EXPECT_EQ(r.witness.length(), r.burning_number);
}

}  // namespace

TEST(Cmcp, Examples) {
  auto p4 = solve_cmcp_exhaustive(gen_path(4), 2);
  EXPECT_EQ(p4.covered, 4u);
  EXPECT_TRUE(validate(gen_path(4), p4.selection));
  EXPECT_EQ(solve_cmcp_exhaustive(gen_path(9), 3).covered, 9u);
  EXPECT_LT(solve_cmcp_exhaustive(gen_path(9), 2).covered, 9u);
}

TEST(Cmcp, NodeBudget) {
  CmcpOptions o;
  o.node_budget = 3;
  EXPECT_THROW(solve_cmcp_exhaustive(gen_grid(6, 6), 4, o), CapacityError);
}

TEST(InternalIlp, KnownOptima) {
  EXPECT_NEAR(internal_ilp_solve(build_gbp_ilp(gen_path(9), 5)).assignment.objective, 3.0, 1e-9);
  EXPECT_NEAR(internal_ilp_solve(build_prop_milp(gen_path(5), 5)).assignment.objective, 2.0, 1e-9);
}

TEST(InternalIlp, GenericLimit) {
  IlpOptions o;
  o.force_generic = true;
  o.binary_limit = 10;
  EXPECT_THROW(internal_ilp_solve(build_cov_csp(gen_path(9), 3), o), CapacityError);
}

TEST(BinarySearch, Examples) {
  auto r = binary_search_burning(gen_path(25), Embedding::cmcp, internal());
  EXPECT_EQ(r.burning_number, 5u);
  EXPECT_EQ(r.status, SolveStatus::optimal);
  auto p5 = binary_search_burning(gen_path(5), Embedding::cov_csp, internal(), {UpperBoundMode::literal});
  EXPECT_EQ(p5.burning_number, 3u);
  bool saw_fail_2 = false, saw_ok_3 = false;
  for (const auto& it : p5.iterations) {
    saw_fail_2 |= it.guess == 2 && !it.success;
    saw_ok_3 |= it.guess == 3 && it.success;
  }
  EXPECT_TRUE(saw_fail_2);
  EXPECT_TRUE(saw_ok_3);
  for (auto e : {Embedding::cmcp, Embedding::cov_csp, Embedding::cov_ilp, Embedding::squbo, Embedding::uqubo}) {
    // sQUBO on K10 at g = 2 has dim 30, past the exhaustive sweep
    auto K = gen_complete(e == Embedding::squbo ? 6 : 10);
    auto k = binary_search_burning(K, e, internal(), {UpperBoundMode::greedy});
    EXPECT_EQ(k.burning_number, 2u) << to_string(e);
    expect_consistent(K, k);
  }
}

TEST(BinarySearch, IterationCountBound) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    auto G = random_er(s, 1, 12);
    for (auto mode : {UpperBoundMode::incumbent, UpperBoundMode::greedy, UpperBoundMode::literal}) {
      auto r = binary_search_burning(G, Embedding::cmcp, internal(), {mode});
      std::size_t u0 = r.initial_upper_bound;
      std::size_t bound = u0 == 0 ? 1 : static_cast<std::size_t>(std::ceil(std::log2(static_cast<double>(u0)))) + 1;
      EXPECT_LE(r.iterations.size(), bound);
    }
  }
}

TEST(BinarySearch, BackendCompatibility) {
  EXPECT_THROW(binary_search_burning(gen_path(4), Embedding::cmcp, sa_backend()), ParameterError);
  EXPECT_THROW(binary_search_burning(gen_path(4), Embedding::cov_csp, sa_backend()), ParameterError);
  EXPECT_THROW(binary_search_burning(gen_path(4), Embedding::squbo, shell_backend("true {in} {out}")), ParameterError);
}

TEST(BinarySearch, SaIsUpperBoundOnly) {
  auto G = gen_path(9);
  auto r = binary_search_burning(G, Embedding::squbo, sa_backend(), {UpperBoundMode::literal});
  EXPECT_EQ(r.status, SolveStatus::upper_bound_only);
  expect_consistent(G, r);
  EXPECT_GE(r.burning_number, 3u);
}

TEST(BinarySearch, UquboNeverCertifiesFailures) {
  auto G = gen_path(9);
  auto r = binary_search_burning(G, Embedding::uqubo, internal(), {UpperBoundMode::greedy});
  EXPECT_EQ(r.burning_number, 3u);
  EXPECT_EQ(r.status, SolveStatus::upper_bound_only);
  EXPECT_TRUE(r.witness_from_embedding);
}

TEST(BinarySearch, IncumbentFallback) {
  // greedy on K_n is already optimal, so incumbent mode only asks g = 1
  auto G = gen_complete(6);
  auto r = binary_search_burning(G, Embedding::cmcp, internal());
  EXPECT_EQ(r.burning_number, 2u);
  EXPECT_FALSE(r.witness_from_embedding);
  EXPECT_EQ(r.status, SolveStatus::optimal);
}

TEST(BinarySearch, EmptyGraph) {
  auto r = binary_search_burning(Graph{}, Embedding::cmcp, internal());
  EXPECT_EQ(r.burning_number, 0u);
}

TEST(SolverProperties, ExactEmbeddingsMatchOracle) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto G = random_er(2000 + s, 1, 12);
    auto b = brute_force_burning_number(G).burning_number;
    for (auto e : {Embedding::cmcp, Embedding::cov_csp, Embedding::cov_ilp}) {
      auto r = binary_search_burning(G, e, internal());
      EXPECT_EQ(r.burning_number, b) << to_string(e) << " seed " << s;
      EXPECT_EQ(r.status, SolveStatus::optimal);
      expect_consistent(G, r);
    }
    auto U = upper_bound(G).witness.length();
    auto rg = row_generation_solve(G, U, internal());
    EXPECT_EQ(rg.burning_number, b) << "row generation seed " << s;
    expect_consistent(G, rg);
  }
}

TEST(RowGeneration, P9) {
  auto G = gen_path(9);
  auto r = row_generation_solve(G, 5, internal());
  EXPECT_EQ(r.burning_number, 3u);
  ASSERT_TRUE(r.coverage_rows);
  EXPECT_LE(*r.coverage_rows, 9u);
  expect_consistent(G, r);
  // cc grows strictly between rounds
  for (std::size_t k = 1; k < r.iterations.size(); ++k)
    EXPECT_GT(r.iterations[k].sizes.at("cc"), r.iterations[k - 1].sizes.at("cc"));
  EXPECT_TRUE(r.iterations.back().violated.empty());
}

TEST(RowGeneration, GridMatchesCmcp) {
  auto G = gen_grid(10, 10);
  auto bs = binary_search_burning(G, Embedding::cmcp, internal());
  auto rg = row_generation_solve(G, upper_bound(G).witness.length(), internal());
  EXPECT_EQ(rg.burning_number, bs.burning_number);
  EXPECT_LT(*rg.coverage_rows, G.num_vertices());
}

TEST(RowGeneration, TooSmallUIsParameterError) {
  EXPECT_THROW(row_generation_solve(gen_path(9), 2, internal()), ParameterError);
  EXPECT_THROW(row_generation_solve(gen_path(9), 3, sa_backend()), ParameterError);
}

TEST(QuboExact, UquboMatchesExhaustive) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto G = random_er(s + 600, 3, 7);
    std::size_t g = 2 + s % 2;
    auto fs = fire_sources(G, greedy_heuristic(G));
    for (auto mode : {PenaltyMode::uniform, PenaltyMode::guided}) {
      auto m = build_uqubo(G, g, default_penalties(G, g, mode, &fs));
      if (m.dim() > 21) continue;
      auto fast = minimize_uqubo(m);
      auto full = exhaustive_minimize(m);
      EXPECT_EQ(fast.energy, full.energy) << "seed " << s;
      EXPECT_TRUE(fast.certified);
    }
  }
}

TEST(QuboExact, DimLimit) {
  EXPECT_THROW(exhaustive_minimize(build_squbo(gen_path(9), 3)), CapacityError);
}

TEST(Annealing, DiagonalModel) {
  QuboModel m;
  m.vars.resize(6);
  for (std::size_t i = 0; i < 6; ++i) m.q[{i, i}] = Rational(1);
  auto r = simulated_annealing(m);
  EXPECT_EQ(r.energy, Rational(0));
  EXPECT_EQ(r.assignment, BitVector(6, 0));
}

TEST(Annealing, Deterministic) {
  auto m = build_squbo(gen_path(9), 3);
  SaParams p;
  p.seed = 42;
  auto a = simulated_annealing(m, p), b = simulated_annealing(m, p);
  EXPECT_EQ(a.assignment, b.assignment);
  EXPECT_EQ(a.energy, b.energy);
}

TEST(Annealing, ParameterChecks) {
  SaParams p;
  p.cooling = 1.0;
  EXPECT_THROW(p.check(), ParameterError);
  p = SaParams{};
  p.final_temperature = 5;
  EXPECT_THROW(p.check(), ParameterError);
  p = SaParams{};
  p.restarts = 0;
  EXPECT_THROW(p.check(), ParameterError);
}

TEST(Annealing, NeverBelowExhaustiveMinimum) {
  for (std::uint64_t s = 0; s < 15; ++s) {
    auto G = random_er(s + 800, 3, 6);
    auto m = build_squbo(G, 2);
    if (m.dim() > 20) continue;
    auto exact = exhaustive_minimize(m).energy;
    SaParams p;
    p.seed = s;
    p.restarts = 2;
    auto r = simulated_annealing(m, p);
    EXPECT_GE(r.energy, exact);
    EXPECT_EQ(r.energy, energy(m, r.assignment));
  }
}

TEST(Annealing, GuidedUquboP9) {
  auto G = gen_path(9);
  auto fs = fire_sources(G, greedy_heuristic(G));
  auto m = build_uqubo(G, 3, default_penalties(G, 3, PenaltyMode::guided, &fs));
  int ok = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    SaParams p;
    p.seed = s;
    auto d = decode_qubo(G, m, simulated_annealing(m, p).assignment);
    ok += d.valid && d.sequence->length() == 3;
  }
  EXPECT_GE(ok, 90);
}

TEST(External, CommandExpansion) {
  auto p = external_preset("plain", {"solve", "{in}", "-o", "{out}"});
  EXPECT_EQ(expand_command(p, "/a.lp", "/b.sol"), (std::vector<std::string>{"solve", "/a.lp", "-o", "/b.sol"}));
  EXPECT_THROW(external_preset("plain", {"solve", "{in}"}).check(), ParameterError);
  EXPECT_THROW(external_preset("nope"), ParameterError);
  EXPECT_EQ(external_preset("cbc").command.front(), "cbc");
}

TEST(External, SolutionParsingZeroFills) {
  auto m = build_cov_csp(gen_path(9), 3);
  std::istringstream in("# header\nx_3_3 1\n7 x_7_2 1\nx_9_1 1\n");
  auto s = parse_solution(in, m, "infeasible");
  EXPECT_FALSE(s.infeasible);
  ASSERT_EQ(s.assignment.values.size(), 27u);
  double total = 0;
  for (double v : s.assignment.values) total += v;
  EXPECT_EQ(total, 3.0);
  EXPECT_EQ(s.assignment.values[m.var_id(VarRole::x, 6, 2)], 1.0);

  std::istringstream inf("Infeasible - objective value 0\n");
  EXPECT_TRUE(parse_solution(inf, m, "Infeasible").infeasible);
  std::istringstream bad("x_3_3 banana\n");
  EXPECT_THROW(parse_solution(bad, m, "infeasible"), FormatError);
}

TEST(External, EndToEndWithShellSolver) {
  auto G = gen_path(9);
  auto ok = shell_backend("printf 'x_3_3 1\\nx_7_2 1\\nx_9_1 1\\n' > \"$2\"");
  auto s = solve_linear(build_cov_csp(G, 3), ok);
  ASSERT_FALSE(s.infeasible);
  auto d = decode(build_cov_csp(G, 3), s.assignment);
  ASSERT_TRUE(d.sequence);
  EXPECT_EQ(*d.sequence, seq({3, 7, 9}));

  auto inf = shell_backend("echo infeasible > \"$2\"");
  EXPECT_TRUE(solve_linear(build_cov_csp(G, 2), inf).infeasible);

  auto wrong = shell_backend("printf 'x_1_1 1\\n' > \"$2\"");
  EXPECT_THROW(solve_linear(build_cov_csp(G, 3), wrong), BackendError);

  auto fails = shell_backend("echo boom >&2; exit 3");
  EXPECT_THROW(solve_linear(build_cov_csp(G, 3), fails), BackendError);
}

TEST(Report, JsonShape) {
  auto G = gen_path(9);
  auto j = to_json(G, binary_search_burning(G, Embedding::cmcp, internal(), {UpperBoundMode::literal}));
  EXPECT_EQ(j["method"], "binary-search:cmcp");
  EXPECT_EQ(j["status"], "optimal");
  EXPECT_EQ(j["burning_number"], 3);
  EXPECT_EQ(j["witness"].size(), 3u);
  EXPECT_TRUE(j["witness_valid"].get<bool>());
  EXPECT_EQ(j["witness_source"], "embedding");
  EXPECT_EQ(j["graph"]["n"], 9);
  EXPECT_TRUE(j["iterations"].is_array());
  EXPECT_TRUE(j["iterations"][0].contains("g"));
  EXPECT_TRUE(j["iterations"][0].contains("outcome"));
  auto rg = to_json(G, row_generation_solve(G, 5, internal()));
  EXPECT_EQ(rg["cc"], 9);
  EXPECT_TRUE(rg["iterations"][0].contains("U"));
  EXPECT_TRUE(rg["iterations"][0].contains("round"));
}
