#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gburn/formulations.hpp"
#include "gburn/solvers/internal_ilp.hpp"
#include "test_util.hpp"

using namespace gburn;
using namespace gburn::testing;

namespace {

std::string lp_text(const LinearModel& m) {
  std::ostringstream os;
  write_lp(os, m);
  return os.str();
}

Assignment x_assignment(const LinearModel& m, std::initializer_list<std::pair<int, int>> ones) {
  Assignment a;
  a.values.assign(m.variables.size(), 0.0);
  for (auto [i, j] : ones) a.values[m.var_id(VarRole::x, static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j))] = 1.0;
  a.objective = evaluate_objective(m, a.values);
  return a;
}

}  // namespace

TEST(PropMilp, Counts) {
  auto m = build_prop_milp(gen_path(9), 5);
  EXPECT_EQ(m.num_binaries(), 90u);
  EXPECT_EQ(m.variables.size(), 91u);
  EXPECT_EQ(m.constraints.size(), 59u);
  EXPECT_EQ(m.sense, Sense::minimize);
  EXPECT_THROW(build_prop_milp(gen_path(3), 0), ParameterError);
}

TEST(PropMilp, OptimumOnP5) {
  auto m = build_prop_milp(gen_path(5), 5);
  auto r = internal_ilp_solve(m);
  ASSERT_EQ(r.status, IlpStatus::optimal);
  EXPECT_NEAR(r.assignment.objective, 2.0, 1e-9);
  auto d = decode(m, r.assignment);
  ASSERT_TRUE(d.sequence);
  EXPECT_EQ(d.sequence->length(), 3u);
  EXPECT_TRUE(validate(gen_path(5), *d.sequence));
  EXPECT_TRUE(violated_rows(m, r.assignment.values).empty());
}

TEST(PropMilp, SingleVertex) {
  auto r = internal_ilp_solve(build_prop_milp(gen_path(1), 1));
  ASSERT_EQ(r.status, IlpStatus::optimal);
  EXPECT_NEAR(r.assignment.objective, 0.0, 1e-9);
}

TEST(PropMilp, LpDeclaresBinariesAndFreeZ) {
  auto text = lp_text(build_prop_milp(gen_path(5), 5));
  auto bin = text.find("Binaries");
  ASSERT_NE(bin, std::string::npos);
  std::istringstream rest(text.substr(bin));
  std::string tok;
  std::size_t count = 0;
  rest >> tok;
  while (rest >> tok && tok != "End") ++count;
  EXPECT_EQ(count, 50u);  // 2 * U * n with U = n = 5
  EXPECT_NE(text.find("Minimize"), std::string::npos);
  EXPECT_NE(text.find(" z"), std::string::npos);
}

TEST(CovCsp, CountsAndKnownSolution) {
  auto g = gen_path(9);
  auto m = build_cov_csp(g, 3);
  EXPECT_EQ(m.variables.size(), 27u);
  EXPECT_EQ(m.constraints.size(), 12u);
  EXPECT_EQ(m.sense, Sense::none);
  auto a = x_assignment(m, {{3, 3}, {7, 2}, {9, 1}});
  EXPECT_TRUE(violated_rows(m, a.values).empty());
  auto d = decode(m, a);
  ASSERT_TRUE(d.sequence);
  EXPECT_EQ(*d.sequence, seq({3, 7, 9}));
}

TEST(CovCsp, InfeasibleBelowBurningNumber) {
  EXPECT_EQ(internal_ilp_solve(build_cov_csp(gen_path(5), 2)).status, IlpStatus::infeasible);
  EXPECT_EQ(internal_ilp_solve(build_cov_csp(gen_path(5), 3)).status, IlpStatus::optimal);
  // The generic branch and bound agrees (2^10 space).
  IlpOptions o;
  o.force_generic = true;
  EXPECT_EQ(internal_ilp_solve(build_cov_csp(gen_path(5), 2), o).status, IlpStatus::infeasible);
}

TEST(CovIlp, Counts) {
  auto m = build_cov_ilp(gen_path(9), 3);
  EXPECT_EQ(m.variables.size(), 27u);
  EXPECT_EQ(m.constraints.size(), 11u);
  EXPECT_EQ(m.sense, Sense::maximize);
  EXPECT_NE(lp_text(m).find("Maximize"), std::string::npos);
}

// Only x_{i,1} counts and column 1 needs a covering ball from columns 2..g,
// so on P9 with g = 3 the best is 8 = n - 1 and v9-style forcing decodes it.
TEST(CovIlp, OptimumOnP9) {
  auto g = gen_path(9);
  auto m = build_cov_ilp(g, 3);
  auto r = internal_ilp_solve(m);
  ASSERT_EQ(r.status, IlpStatus::optimal);
  EXPECT_NEAR(r.assignment.objective, 8.0, 1e-9);
  auto d = decode(m, r.assignment);
  ASSERT_TRUE(d.sequence);
  EXPECT_TRUE(validate(g, *d.sequence));

  auto r2 = internal_ilp_solve(build_cov_ilp(g, 2));
  EXPECT_LT(r2.assignment.objective, 8.0);
  EXPECT_FALSE(decode(build_cov_ilp(g, 2), r2.assignment).sequence);
}

TEST(CovIlp, ForcedLastVertex) {
  auto g = gen_path(9);
  auto m = build_cov_ilp(g, 3);
  // v3 radius 2, v7 radius 1; every x_{i,1} except v9 is coverable.
  auto a = x_assignment(m, {{3, 3}, {7, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}});
  EXPECT_NEAR(a.objective, 8.0, 1e-9);
  EXPECT_TRUE(violated_rows(m, a.values).empty());
  auto d = decode(m, a);
  ASSERT_TRUE(d.sequence);
  EXPECT_EQ(*d.sequence, seq({3, 7, 9}));
}

TEST(GbpIlp, CountsAndOptimum) {
  auto g = gen_path(9);
  auto m = build_gbp_ilp(g, 5);
  EXPECT_EQ(m.variables.size(), 45u);
  EXPECT_EQ(m.constraints.size(), 2u * 5u + 9u - 1u);
  auto r = internal_ilp_solve(m);
  ASSERT_EQ(r.status, IlpStatus::optimal);
  EXPECT_NEAR(r.assignment.objective, 3.0, 1e-9);
  auto d = decode(m, r.assignment);
  ASSERT_TRUE(d.sequence);
  EXPECT_EQ(d.sequence->length(), 3u);
  EXPECT_TRUE(validate(g, *d.sequence));
  auto k1 = internal_ilp_solve(build_gbp_ilp(gen_path(1), 1));
  EXPECT_NEAR(k1.assignment.objective, 1.0, 1e-9);
}

TEST(Decode, FractionalValueIsDecodeError) {
  auto m = build_cov_csp(gen_path(3), 2);
  Assignment a;
  a.values.assign(m.variables.size(), 0.0);
  a.values[0] = 0.5;
  EXPECT_THROW(decode(m, a), DecodeError);
}

TEST(LpWriter, DeterministicAndGolden) {
  auto m = build_cov_csp(gen_path(4), 2);
  EXPECT_EQ(lp_text(m), lp_text(build_cov_csp(gen_path(4), 2)));
  std::ifstream f(std::string(GBURN_TEST_DATA) + "/cov_csp_p4_g2.lp");
  ASSERT_TRUE(f) << "golden file missing";
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(lp_text(m), ss.str());
}

TEST(LpWriter, FileMatchesStream) {
  auto m = build_gbp_ilp(gen_grid(3, 3), 3);
  auto path = std::filesystem::temp_directory_path() / "gburn_gbp.lp";
  write_lp(m, path);
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  EXPECT_EQ(ss.str(), lp_text(m));
  std::filesystem::remove(path);
}

TEST(FormulationProperties, CountsOnRandomGraphs) {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    auto g = random_er(rng(), 1, 20);
    const std::size_t n = g.num_vertices();
    for (std::size_t k = 1; k <= 5; ++k) {
      auto p = build_prop_milp(g, k);
      EXPECT_EQ(p.num_binaries(), 2 * k * n);
      EXPECT_EQ(p.constraints.size(), k * n + k + n);
      auto c = build_cov_csp(g, k);
      EXPECT_EQ(c.variables.size(), k * n);
      EXPECT_EQ(c.constraints.size(), k + n);
      auto i = build_cov_ilp(g, k);
      EXPECT_EQ(i.variables.size(), k * n);
      EXPECT_EQ(i.constraints.size(), k + n - 1);
      auto b = build_gbp_ilp(g, k);
      EXPECT_EQ(b.variables.size(), k * n);
      EXPECT_EQ(b.constraints.size(), 2 * k + n - 1);
    }
  }
}

TEST(FormulationProperties, BuildersArePure) {
  auto g = gen_erdos_renyi(10, 0.3, 4);
  EXPECT_EQ(lp_text(build_prop_milp(g, 3)), lp_text(build_prop_milp(g, 3)));
  EXPECT_EQ(lp_text(build_cov_ilp(g, 3)), lp_text(build_cov_ilp(g, 3)));
  EXPECT_EQ(lp_text(build_gbp_ilp(g, 4)), lp_text(build_gbp_ilp(g, 4)));
}

TEST(FormulationProperties, OracleEquivalence) {
  for (std::uint64_t s = 0; s < 120; ++s) {
    auto g = random_er(1000 + s, 1, 12);
    const std::size_t n = g.num_vertices();
    const std::size_t b = brute_force_burning_number(g).burning_number;
    auto U = upper_bound(g).witness.length();

    auto gm = build_gbp_ilp(g, U);
    auto gr = internal_ilp_solve(gm);
    ASSERT_EQ(gr.status, IlpStatus::optimal);
    EXPECT_NEAR(gr.assignment.objective, static_cast<double>(b), 1e-9) << "seed " << s;
    auto gd = decode(gm, gr.assignment);
    ASSERT_TRUE(gd.sequence);
    EXPECT_TRUE(validate(g, *gd.sequence));
    EXPECT_EQ(gd.sequence->length(), b);

    for (std::size_t k = std::max<std::size_t>(1, b - 1); k <= b + 1; ++k) {
      auto cm = build_cov_csp(g, k);
      auto cr = internal_ilp_solve(cm);
      EXPECT_EQ(cr.status == IlpStatus::optimal, k >= b) << "seed " << s << " g " << k;
      if (cr.status == IlpStatus::optimal) {
        auto d = decode(cm, cr.assignment);
        ASSERT_TRUE(d.sequence);
        EXPECT_TRUE(validate(g, *d.sequence));
      }
      auto im = build_cov_ilp(g, k);
      auto ir = internal_ilp_solve(im);
      ASSERT_EQ(ir.status, IlpStatus::optimal);
      EXPECT_EQ(ir.assignment.objective >= static_cast<double>(n) - 1 - 1e-9, k >= b) << "seed " << s << " g " << k;
      auto d = decode(im, ir.assignment);
      EXPECT_EQ(d.sequence.has_value(), k >= b);
      if (d.sequence) {
        EXPECT_TRUE(validate(g, *d.sequence));
      }
    }
  }
}
