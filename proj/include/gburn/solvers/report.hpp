#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "gburn/burning.hpp"
#include "gburn/graph.hpp"

namespace gburn {

using Json = nlohmann::ordered_json;

enum class SolveStatus { optimal, upper_bound_only, infeasible };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::upper_bound_only: return "upper-bound-only";
    case SolveStatus::infeasible: return "infeasible";
  }
  return "?";
}

/// One model solved during a run: a binary-search guess or a row-generation round.
struct IterationRecord {
  std::size_t guess = 0;   // g (binary search) or U (row generation)
  std::size_t round = 0;   // 1-based row-generation round, 0 otherwise
  std::string backend;
  double seconds = 0;
  std::map<std::string, std::size_t> sizes;  // variables / constraints / dim / cc ...
  bool success = false;
  std::string detail;
  std::optional<std::int64_t> objective;
  std::vector<Vertex> violated;  // row generation: uncovered vertices after this round
};

struct SolveReport {
  std::string method;
  Json backend = Json::object();
  SolveStatus status = SolveStatus::optimal;
  std::size_t burning_number = 0;
  BurningSequence witness;
  bool witness_from_embedding = true;  // false: greedy incumbent kept
  std::optional<std::int64_t> objective;
  /// False when some QUBO success rests on a minimum that was not proven global.
  bool exact_verdicts = true;
  std::size_t initial_upper_bound = 0;
  std::vector<IterationRecord> iterations;
  std::optional<std::size_t> coverage_rows;  // row generation: final #cc
  double total_seconds = 0;
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

inline Json sequence_labels(const Graph& g, const BurningSequence& s) {
  Json a = Json::array();
  for (auto v : s.vertices) a.push_back(g.label(v));
  return a;
}

inline Json labels_of(const Graph& g, const std::vector<Vertex>& vs) {
  Json a = Json::array();
  for (auto v : vs) a.push_back(g.label(v));
  return a;
}

inline Json to_json(const Graph& g, const SolveReport& r) {
  Json j;
  j["method"] = r.method;
  j["backend"] = r.backend;
  j["status"] = to_string(r.status);
  j["burning_number"] = r.burning_number;
  j["witness"] = sequence_labels(g, r.witness);
  j["witness_valid"] = validate(g, r.witness);
  j["witness_source"] = r.witness_from_embedding ? "embedding" : "greedy";
  if (r.objective) j["objective"] = *r.objective;
  j["graph"] = {{"n", g.num_vertices()}, {"m", g.num_edges()}, {"components", connected_components(g).count}};
  j["exact_verdicts"] = r.exact_verdicts;
  j["initial_upper_bound"] = r.initial_upper_bound;
  if (r.coverage_rows) j["cc"] = *r.coverage_rows;
  Json its = Json::array();
  for (const auto& it : r.iterations) {
    Json e;
    e[it.round ? "U" : "g"] = it.guess;
    if (it.round) e["round"] = it.round;
    e["backend"] = it.backend;
    e["seconds"] = it.seconds;
    e["sizes"] = it.sizes;
    e["outcome"] = it.success ? "success" : "failure";
    if (!it.detail.empty()) e["detail"] = it.detail;
    if (it.objective) e["objective"] = *it.objective;
    if (it.round) e["violated"] = labels_of(g, it.violated);
    its.push_back(std::move(e));
  }
  j["iterations"] = std::move(its);
  j["total_seconds"] = r.total_seconds;
  return j;
}

}  // namespace gburn
