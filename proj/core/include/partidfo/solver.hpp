#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "partidfo/extended_real.hpp"
#include "partidfo/rng.hpp"
#include "partidfo/vec.hpp"

namespace partidfo {

enum class StepKind { initial, covering, search, poll };
enum class StopReason { radius, iterations, budget };

std::string to_string(StepKind k);
std::string to_string(StopReason r);

struct SolverConfig {
  double delta0 = 1.0;        // initial poll radius
  double lambda = 0.5;        // shrink factor, in (0, 1)
  double upsilon = 1.0;       // expand factor, >= 1
  double delta_min = 1e-10;   // stop once the poll radius falls below this
  std::size_t max_iterations = 100000;
  std::size_t covering_samples = 64;  // unit-ball candidates per covering step
  std::uint64_t seed = 1;
  bool covering = true;  // disabled for the plain direct-search baseline

  void validate() const;
};

// Append-only log of every evaluated trial point.
struct History {
  std::vector<Vec> points;
  std::vector<ExtendedReal> values;

  void append(Vec x, ExtendedReal v) {
    points.push_back(std::move(x));
    values.push_back(v);
  }
  std::size_t size() const { return points.size(); }
};

struct IterationState {
  std::size_t k = 0;
  Vec x;
  ExtendedReal value;
  double delta = 1.0;
};

struct EvalRecord {
  std::size_t eval_index = 0;
  StepKind step = StepKind::initial;
  Vec x;
  ExtendedReal value;
  double cumulative_cost = 0.0;
  ExtendedReal best_so_far;
};

struct RunTrace {
  std::vector<EvalRecord> records;
  std::vector<IterationState> iterations;  // incumbent per iteration, k = 0..K

  Vec best_x;
  ExtendedReal best_value;
  std::size_t iteration_count = 0;
  StopReason stop_reason = StopReason::radius;

  // Full-space point recovered from the oracle at best_x; filled by
  // reformulated runs only.
  std::optional<Vec> recovered_point;
};

// Directions [delta*q_1..delta*q_n, -delta*q_1..-delta*q_n] where Q is a
// Haar-random orthogonal matrix (Gram-Schmidt on a standard-normal matrix;
// the positive-diagonal convention makes the factorization unique). The set
// positively spans the space and every direction has norm delta.
std::vector<Vec> random_orthogonal_positive_basis(std::size_t n, double delta, Rng& rng);

// The sampled candidate x + d maximizing the distance to the history, over
// `samples` directions drawn uniformly in the closed ball of the given
// radius. Ties break to the lowest candidate index.
Vec covering_candidate(const Vec& x, const History& history, double radius, Rng& rng,
                       std::size_t samples);

// Deterministic core of the covering step, exposed for direct testing.
Vec covering_candidate_among(const Vec& x, const History& history, const std::vector<Vec>& directions);

// Index of the minimum; ties break to the smallest index.
std::size_t argmin_first(const std::vector<ExtendedReal>& values);

// One incumbent/radius update. Pre: improved iff trial_value < state.value.
IterationState update_step(const IterationState& state, const Vec& trial_x, ExtendedReal trial_value,
                           bool improved, const SolverConfig& config);

using Objective = std::function<ExtendedReal(const Vec&)>;
using SearchHook = std::function<std::vector<Vec>(const IterationState&)>;

// Covering direct search. Each iteration evaluates the covering candidate
// first (immediately accepted when strictly improving), then the optional
// search set, then a full positive-basis poll of 2n points. The radius
// expands by upsilon on success and shrinks by lambda otherwise. Stops when
// the radius falls below delta_min, the iteration cap is hit, or the next
// evaluation would exceed the budget. An evaluation that would exceed the
// budget is not performed.
RunTrace solve(const Objective& objective, const Vec& x0, const SolverConfig& config,
               double cost_per_eval = 1.0, std::optional<double> budget = std::nullopt,
               const SearchHook& search_hook = nullptr);

}  // namespace partidfo
