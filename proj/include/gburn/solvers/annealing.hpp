#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "gburn/errors.hpp"
#include "gburn/qubo.hpp"
#include "gburn/random.hpp"

namespace gburn {

/// Geometric schedule T_{k+1} = cooling * T_k from initial_temperature down
/// to final_temperature, steps_per_temperature single-bit proposals at each
/// level. Temperatures are in the model's own (unscaled) energy units.
struct SaParams {
  double initial_temperature = 2.0;
  double final_temperature = 0.05;
  double cooling = 0.98;
  std::size_t steps_per_temperature = 0;  // 0 -> 10 * dim
  std::size_t restarts = 8;
  std::uint64_t seed = 1;

  void check() const {
    if (!(initial_temperature > 0) || !(final_temperature > 0) || final_temperature > initial_temperature)
      throw ParameterError("SA temperatures must satisfy 0 < final <= initial");
    if (!(cooling > 0 && cooling < 1)) throw ParameterError("SA cooling factor must lie in (0, 1)");
    if (restarts < 1) throw ParameterError("SA needs at least one restart");
  }
};

struct SaResult {
  BitVector assignment;
  Rational energy{0};
  std::size_t best_restart = 0;
  std::uint64_t proposals = 0;
};

/// Single-bit-flip Metropolis chain with geometric cooling, repeated
/// `restarts` times from uniformly random states (restart r seeded with
/// split_seed(seed, r)). Returns the best state seen over all chains.
inline SaResult simulated_annealing(const QuboModel& m, const SaParams& p = {}) {
  p.check();
  const std::size_t dim = m.dim();
  if (dim == 0) throw ParameterError("simulated annealing needs dim >= 1");
  const auto sq = scale(m);
  const double unit = 1.0 / static_cast<double>(sq.scale);
  const std::size_t steps = p.steps_per_temperature ? p.steps_per_temperature : 10 * dim;

  SaResult out;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  BitVector a(dim), best_a;
  std::vector<std::int64_t> field(dim);
  for (std::size_t r = 0; r < p.restarts; ++r) {
    Rng rng(split_seed(p.seed, r));
    for (auto& bit : a) bit = static_cast<std::uint8_t>(rng() & 1U);
    for (std::size_t i = 0; i < dim; ++i) {
      field[i] = sq.diag[i];
      for (auto [j, c] : sq.adj[i])
        if (a[j]) field[i] += c;
    }
    std::int64_t e = sq.energy(a);
    if (e < best) {
      best = e;
      best_a = a;
      out.best_restart = r;
    }
    for (double t = p.initial_temperature; t >= p.final_temperature; t *= p.cooling) {
      for (std::size_t s = 0; s < steps; ++s) {
        auto i = static_cast<std::size_t>(rng() % dim);
        std::int64_t delta = a[i] ? -field[i] : field[i];
        ++out.proposals;
        if (delta > 0 && uniform01(rng) >= std::exp(-static_cast<double>(delta) * unit / t)) continue;
        std::int64_t sgn = a[i] ? -1 : 1;
        a[i] ^= 1U;
        for (auto [j, c] : sq.adj[i]) field[j] += sgn * c;
        e += delta;
        if (e < best) {
          best = e;
          best_a = a;
          out.best_restart = r;
        }
      }
    }
  }
  out.assignment = std::move(best_a);
  out.energy = energy(m, out.assignment);
  if (out.energy != sq.to_rational(best)) throw BackendError("annealing energy bookkeeping diverged");
  return out;
}

}  // namespace gburn
