#pragma once

#include <algorithm>
#include <bit>
#include <boost/integer/common_factor_rt.hpp>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gburn/qubo.hpp"
#include "gburn/solvers/coverage_search.hpp"

namespace gburn {

inline constexpr std::size_t kDefaultExhaustiveDimLimit = 26;

struct QuboSolution {
  BitVector assignment;
  Rational energy{0};
  std::uint64_t evaluated = 0;
  /// False when the result is only the minimum over one-hot assignments and
  /// no bound rules out a lower-energy assignment elsewhere.
  bool certified = true;
  std::string path;
};

/// Gray-code sweep of all 2^dim assignments. Ties resolve to the
/// lexicographically smallest bit vector.
inline QuboSolution exhaustive_minimize(const QuboModel& m, std::size_t dim_limit = kDefaultExhaustiveDimLimit) {
  const std::size_t dim = m.dim();
  if (dim > dim_limit || dim > 40)
    throw CapacityError("exhaustive QUBO sweep limited to dim " + std::to_string(dim_limit) + " (model has " +
                        std::to_string(dim) + ")");
  auto sq = scale(m);
  // field[i] = diag_i + sum_j Q_ij a_j; flipping i changes energy by +-field[i].
  std::vector<std::int64_t> field = sq.diag;
  std::uint64_t mask = 0, best_mask = 0;
  std::int64_t e = sq.offset, best = e;
  // Lexicographic order on (a_0, a_1, ...): the lowest differing index decides.
  auto lex_less = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (!diff) return false;
    return ((a >> std::countr_zero(diff)) & 1U) == 0;
  };
  const std::uint64_t total = std::uint64_t{1} << dim;
  for (std::uint64_t t = 1; t < total; ++t) {
    auto k = static_cast<std::size_t>(std::countr_zero(t));
    bool on = (mask >> k) & 1U;
    e += on ? -field[k] : field[k];
    mask ^= std::uint64_t{1} << k;
    std::int64_t sgn = on ? -1 : 1;
    for (auto [j, c] : sq.adj[k]) field[j] += sgn * c;
    if (e < best || (e == best && lex_less(mask, best_mask))) {
      best = e;
      best_mask = mask;
    }
  }
  QuboSolution s;
  s.assignment.resize(dim);
  for (std::size_t i = 0; i < dim; ++i) s.assignment[i] = (best_mask >> i) & 1U;
  s.energy = energy(m, s.assignment);
  if (s.energy != sq.to_rational(best)) throw BackendError("exhaustive sweep energy mismatch");
  s.evaluated = total;
  s.path = "exhaustive";
  return s;
}

struct UquboSearchOptions {
  std::uint64_t node_budget = kDefaultNodeBudget;
  /// Fall back to the full sweep when the one-hot optimum is not certified.
  std::size_t exhaustive_dim_limit = 22;
};

namespace detail {

class UquboOneHotSearch {
 public:
  UquboOneHotSearch(const QuboModel& m, const UquboSearchOptions& opt) : m_(m), opt_(opt) {
    const auto& pc = *m.penalties;
    n_ = m.n;
    g_ = m.g;
    // Common denominator of lambda1 and every lambda2_i.
    scale_ = boost::integer::lcm(pc.lambda1.denominator(), pc.P.denominator());
    for (const auto& l2 : pc.lambda2) scale_ = boost::integer::lcm(scale_, l2.denominator());
    penalty_ = (pc.P * scale_).numerator();
    // f_i(c) = lambda1 (1 - c) + lambda2_i (1 - c)^2, tabulated for c = 0..g.
    f_.assign(n_, std::vector<std::int64_t>(g_ + 1, 0));
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t c = 0; c <= g_; ++c) {
        Rational h(1 - static_cast<std::int64_t>(c));
        Rational v = penalty_curve(pc.lambda1, pc.lambda2[i], h) * scale_;
        f_[i][c] = v.numerator();
      }
    // hits[j-1][k] = vertices whose coverage sum contains x_{k,j}
    hits_.assign(g_, std::vector<std::vector<std::uint32_t>>(n_));
    for (std::size_t i = 0; i < n_; ++i)
      for (auto id : m.coverage[i]) {
        std::size_t k = id / g_, j = id % g_ + 1;
        hits_[j - 1][k].push_back(static_cast<std::uint32_t>(i));
      }
    max_hits_.assign(g_, 0);
    for (std::size_t j = 0; j < g_; ++j)
      for (const auto& h : hits_[j]) max_hits_[j] = std::max(max_hits_[j], h.size());
    count_.assign(n_, 0);
    choice_.assign(g_, 0);
  }

  void run() {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < n_; ++i) e += f_[i][0];
    dfs(0, e);
  }

  /// Lower bound on the energy of any assignment that is not one-hot. With
  /// K bits set in total, the column blocks cost at least P * pen(K) (pen is
  /// the least sum of (k_j - 1)^2 over column counts summing to K, not all
  /// one) and coverage can rise by at most K * (largest ball) increments,
  /// at most K per vertex.
  std::int64_t violating_floor() const {
    std::int64_t base = 0;
    std::vector<std::vector<std::int64_t>> marg(n_);  // negative marginals per vertex, in order
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& pc = *m_.penalties;
      auto f = [&](std::int64_t c) {
        return (penalty_curve(pc.lambda1, pc.lambda2[i], Rational(1 - c)) * scale_).numerator();
      };
      base += f(0);
      for (std::int64_t c = 0;; ++c) {
        std::int64_t dm = f(c + 1) - f(c);
        if (dm >= 0) break;
        marg[i].push_back(dm);
      }
    }
    std::size_t hmax = 0;
    for (auto h : max_hits_) hmax = std::max(hmax, h);
    std::int64_t floor = std::numeric_limits<std::int64_t>::max();
    std::vector<std::int64_t> pool;
    for (std::size_t K = 0; K <= n_ * g_; ++K) {
      std::int64_t pen = 0;
      if (K < g_) {
        pen = static_cast<std::int64_t>(g_ - K);
      } else if (K == g_) {
        if (g_ < 2) continue;  // the only count vector is all ones
        pen = 2;
      } else {
        auto d = static_cast<std::int64_t>(K - g_), gg = static_cast<std::int64_t>(g_);
        std::int64_t q = d / gg, r = d % gg;
        pen = r * (q + 1) * (q + 1) + (gg - r) * q * q;
      }
      pool.clear();
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t t = 0; t < marg[i].size() && t < K; ++t) pool.push_back(marg[i][t]);
      std::size_t budget = K * hmax;
      if (pool.size() > budget) {
        std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(budget), pool.end());
        pool.resize(budget);
      }
      std::int64_t gain = 0;
      for (auto dm : pool) gain += dm;
      floor = std::min(floor, penalty_ * pen + base + gain);
    }
    return floor;
  }

  std::int64_t best() const { return best_; }
  std::int64_t scale() const { return scale_; }
  const std::vector<Vertex>& best_choice() const { return best_choice_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  // Columns are visited g, g-1, ..., 1; depth d handles column g - d.
  std::size_t column_at(std::size_t depth) const { return g_ - depth; }

  /// Lower bound on what the remaining columns can still subtract: each
  /// vertex can gain at most `remaining` coverage and the columns together
  /// hand out at most `budget` increments; f is convex in c, so taking the
  /// most negative marginal steps first is optimal for the relaxation.
  std::int64_t completion_bound(std::size_t depth) {
    std::size_t remaining = g_ - depth;
    if (remaining == 0) return 0;
    std::size_t budget = 0;
    for (std::size_t d = depth; d < g_; ++d) budget += max_hits_[column_at(d) - 1];
    marginals_.clear();
    for (std::size_t i = 0; i < n_; ++i) {
      std::size_t c = count_[i];
      for (std::size_t t = 0; t < remaining && c + t < g_; ++t) {
        std::int64_t dm = f_[i][c + t + 1] - f_[i][c + t];
        if (dm >= 0) break;
        marginals_.push_back(dm);
      }
    }
    if (marginals_.size() > budget) {
      std::nth_element(marginals_.begin(), marginals_.begin() + static_cast<std::ptrdiff_t>(budget), marginals_.end());
      marginals_.resize(budget);
    }
    std::int64_t total = 0;
    for (auto dm : marginals_) total += dm;
    return total;
  }

  void dfs(std::size_t depth, std::int64_t e) {
    if (++nodes_ > opt_.node_budget) throw CapacityError("uQUBO one-hot search exceeded its node budget");
    if (depth == g_) {
      if (e < best_) {
        best_ = e;
        best_choice_ = choice_;
      }
      return;
    }
    if (e + completion_bound(depth) >= best_) return;
    const std::size_t j = column_at(depth);
    for (Vertex k = 0; k < n_; ++k) {
      std::int64_t ne = e;
      for (auto i : hits_[j - 1][k]) {
        ne += f_[i][count_[i] + 1] - f_[i][count_[i]];
        ++count_[i];
      }
      choice_[depth] = k;
      dfs(depth + 1, ne);
      for (auto i : hits_[j - 1][k]) --count_[i];
    }
  }

  const QuboModel& m_;
  UquboSearchOptions opt_;
  std::size_t n_ = 0, g_ = 0;
  std::int64_t scale_ = 1;
  std::int64_t penalty_ = 0;
  std::vector<std::vector<std::int64_t>> f_;
  std::vector<std::vector<std::vector<std::uint32_t>>> hits_;
  std::vector<std::size_t> max_hits_;
  std::vector<std::size_t> count_;
  std::vector<Vertex> choice_, best_choice_;
  std::vector<std::int64_t> marginals_;
  std::int64_t best_ = std::numeric_limits<std::int64_t>::max();
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Exact uQUBO minimum. Branch and bound over one-hot assignments (one
/// vertex per column, where the P blocks vanish), then a certificate: a
/// one-hot optimum strictly below the floor for assignments violating some
/// column block is global.
/// Otherwise the full sweep runs when dim allows; failing that the result is
/// returned with certified = false.
inline QuboSolution minimize_uqubo(const QuboModel& m, const UquboSearchOptions& opt = {}) {
  if (m.kind != QuboKind::uqubo || !m.penalties) throw ParameterError("minimize_uqubo needs a uQUBO model");
  if (m.n == 0) return QuboSolution{BitVector{}, m.offset, 0, true, "one-hot"};

  detail::UquboOneHotSearch search(m, opt);
  search.run();

  QuboSolution s;
  s.assignment.assign(m.dim(), 0);
  const auto& choice = search.best_choice();
  for (std::size_t d = 0; d < choice.size(); ++d) s.assignment[m.x_id(choice[d], m.g - d)] = 1;
  s.energy = energy(m, s.assignment);
  if (s.energy != Rational(search.best(), search.scale()))
    throw BackendError("uQUBO one-hot energy disagrees with the expanded model");
  s.evaluated = search.nodes();
  s.path = "one-hot";

  if (search.best() < search.violating_floor()) return s;
  if (m.dim() <= opt.exhaustive_dim_limit) return exhaustive_minimize(m, opt.exhaustive_dim_limit);
  s.certified = false;
  return s;
}

}  // namespace gburn
