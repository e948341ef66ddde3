#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace gburn;
using namespace gburn::testing;

TEST(Validate, SmallPathExamples) {
  auto p5 = gen_path(5);
  EXPECT_TRUE(validate(p5, seq({1, 5, 3})));
  EXPECT_TRUE(validate(p5, seq({3, 2, 3})));
  EXPECT_FALSE(validate(p5, seq({1, 2})));
  EXPECT_FALSE(validate(p5, BurningSequence{}));
  EXPECT_EQ(uncovered_vertices(p5, seq({1, 2})), vs({3, 4, 5}));
}

TEST(Validate, OutOfRangeVertexIsParameterError) {
  EXPECT_THROW(validate(gen_path(3), seq({4})), ParameterError);
}

TEST(Simulate, BurnsInRounds) {
  auto t = simulate(gen_path(5), seq({1, 5, 3}));
  ASSERT_EQ(t.rounds.size(), 3u);
  EXPECT_EQ(t.rounds[0], vs({1}));
  EXPECT_EQ(t.rounds[1], vs({1, 2, 5}));
  EXPECT_EQ(t.rounds[2], vs({1, 2, 3, 4, 5}));

  auto k = simulate(gen_complete(5), seq({1, 1}));
  EXPECT_EQ(k.rounds[0], vs({1}));
  EXPECT_EQ(k.rounds[1].size(), 5u);

  EXPECT_EQ(simulate(gen_path(5), seq({3, 2, 3})).rounds.back().size(), 5u);
}

TEST(FireSources, Counts) {
  auto f = fire_sources(gen_path(9), seq({3, 7, 9}));
  EXPECT_EQ(f.counts[4], 1u);
  auto h = fire_sources(gen_path(5), seq({3, 2, 3}));
  EXPECT_EQ(h.counts[2], 3u);
  EXPECT_GE(h.min(), 1u);
}

TEST(Greedy, Examples) {
  for (std::size_t n = 2; n <= 10; ++n) EXPECT_EQ(greedy_heuristic(gen_complete(n)).length(), 2u);
  EXPECT_EQ(greedy_heuristic(gen_path(9)).length(), 3u);
  EXPECT_EQ(greedy_heuristic(gen_path(1)).length(), 1u);
  EXPECT_EQ(greedy_heuristic(Graph{}).length(), 0u);
}

TEST(UpperBound, Examples) {
  EXPECT_EQ(bonato_kamali_bound(25), 10u);
  EXPECT_EQ(upper_bound(gen_path(9)).value, 3u);
  EXPECT_EQ(upper_bound(Graph::from_edges(5, {})).value, 5u);
  // Long path: the closed form beats nothing, greedy is already optimal-ish,
  // but the bound must never be below b(G).
  auto ub = upper_bound(gen_path(16));
  EXPECT_GE(ub.value, 4u);
  EXPECT_TRUE(validate(gen_path(16), ub.witness));
}

TEST(Oracle, Examples) {
  EXPECT_EQ(brute_force_burning_number(gen_path(5)).burning_number, 3u);
  auto p4 = brute_force_burning_number(gen_path(4));
  EXPECT_EQ(p4.burning_number, 2u);
  EXPECT_TRUE(validate(gen_path(4), p4.witness));
  EXPECT_TRUE(validate(gen_path(4), seq({2, 4})));
  EXPECT_EQ(brute_force_burning_number(gen_path(9)).burning_number, 3u);
  EXPECT_EQ(brute_force_burning_number(Graph{}).burning_number, 0u);
}

TEST(Oracle, LimitIsCapacityError) {
  EXPECT_THROW(brute_force_burning_number(gen_path(17)), CapacityError);
  EXPECT_EQ(brute_force_burning_number(gen_path(17), 17).burning_number, 5u);
}

TEST(Oracle, PathsAndCyclesClosedForm) {
  for (std::size_t n = 1; n <= 49; ++n)
    EXPECT_EQ(brute_force_burning_number(gen_path(n), 49).burning_number, isqrt_ceil(n)) << "P" << n;
  for (std::size_t n = 3; n <= 49; ++n)
    EXPECT_EQ(brute_force_burning_number(gen_cycle(n), 49).burning_number, isqrt_ceil(n)) << "C" << n;
}

TEST(Oracle, CompleteAndStar) {
  for (std::size_t n = 2; n <= 16; ++n) {
    EXPECT_EQ(brute_force_burning_number(gen_complete(n)).burning_number, 2u);
    EXPECT_EQ(brute_force_burning_number(gen_star(n - 1)).burning_number, 2u);
  }
}

// Randomized sequences: the three readings of validity agree.
TEST(BurningProperties, ValidateSimulateFireSourcesAgree) {
  Rng rng(7);
  for (int t = 0; t < 1500; ++t) {
    auto g = random_er(rng(), 1, 12);
    const std::size_t n = g.num_vertices();
    BurningSequence s;
    std::size_t len = 1 + rng() % 4;
    for (std::size_t k = 0; k < len; ++k) s.vertices.push_back(static_cast<Vertex>(rng() % n));
    bool ok = validate(g, s);
    EXPECT_EQ(ok, simulate(g, s).rounds.back().size() == n);
    auto fs = fire_sources(g, s);
    EXPECT_EQ(ok, fs.min() >= 1);
    for (auto c : fs.counts) EXPECT_LE(c, len);
    EXPECT_EQ(ok, uncovered_vertices(g, s).empty());
    // cumulative rounds
    auto tr = simulate(g, s);
    for (std::size_t j = 1; j < tr.rounds.size(); ++j)
      EXPECT_TRUE(std::includes(tr.rounds[j].begin(), tr.rounds[j].end(), tr.rounds[j - 1].begin(),
                                tr.rounds[j - 1].end()));
  }
}

TEST(BurningProperties, GreedyIsValidUpperBound) {
  for (std::uint64_t s = 0; s < 150; ++s) {
    auto g = random_er(s, 1, 12);
    auto gr = greedy_heuristic(g);
    EXPECT_TRUE(validate(g, gr));
    auto o = brute_force_burning_number(g);
    EXPECT_GE(gr.length(), o.burning_number);
    EXPECT_TRUE(validate(g, o.witness));
    EXPECT_EQ(o.witness.length(), o.burning_number);
    EXPECT_GE(upper_bound(g).value, o.burning_number);
  }
}

TEST(BurningProperties, PrependingKeepsValidity) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    auto g = random_er(500 + s, 1, 12);
    auto w = brute_force_burning_number(g).witness;
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      BurningSequence longer = w;
      longer.vertices.insert(longer.vertices.begin(), v);
      ASSERT_TRUE(validate(g, longer));
    }
  }
}
