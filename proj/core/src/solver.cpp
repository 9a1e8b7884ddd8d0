#include "partidfo/solver.hpp"

#include <cmath>
#include <stdexcept>

#include "partidfo/pof.hpp"

namespace partidfo {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::initial: return "initial";
    case StepKind::covering: return "covering";
    case StepKind::search: return "search";
    case StepKind::poll: return "poll";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::radius: return "radius";
    case StopReason::iterations: return "iterations";
    case StopReason::budget: return "budget";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(delta0 > 0.0)) throw std::invalid_argument("SolverConfig: delta0 must be positive");
  if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("SolverConfig: lambda must lie in (0,1)");
  if (!(upsilon >= 1.0)) throw std::invalid_argument("SolverConfig: upsilon must be >= 1");
  if (!(delta_min > 0.0)) throw std::invalid_argument("SolverConfig: delta_min must be positive");
  if (!(delta_min < delta0)) throw std::invalid_argument("SolverConfig: delta_min must be below delta0");
  if (max_iterations == 0) throw std::invalid_argument("SolverConfig: max_iterations must be positive");
  if (covering_samples == 0) throw std::invalid_argument("SolverConfig: covering_samples must be positive");
}

std::vector<Vec> random_orthogonal_positive_basis(std::size_t n, double delta, Rng& rng) {
  if (n == 0) throw std::invalid_argument("positive basis: dimension must be >= 1");
  if (!(delta > 0.0)) throw std::invalid_argument("positive basis: delta must be positive");

  // Gram-Schmidt on standard-normal columns. The diagonal of the implicit R
  // factor is positive by construction, which is the convention under which
  // the orthogonal factor is Haar distributed.
  std::vector<Vec> q;
  q.reserve(n);
  while (q.size() < n) {
    Vec v = rng.normal_vector(n);
    for (const Vec& u : q) {
      const double c = dot(v, u);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
    }
    const double norm = norm2(v);
    if (norm < 1e-12) continue;  // degenerate draw, redraw
    for (auto& x : v) x /= norm;
    q.push_back(std::move(v));
  }

  std::vector<Vec> dirs;
  dirs.reserve(2 * n);
  for (std::size_t j = 0; j < n; ++j) {
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = delta * q[j][i];
    dirs.push_back(std::move(d));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Vec d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -dirs[j][i];
    dirs.push_back(std::move(d));
  }
  return dirs;
}

Vec covering_candidate_among(const Vec& x, const History& history,
                             const std::vector<Vec>& directions) {
  if (history.size() == 0) {
    throw std::invalid_argument("covering step: history must be non-empty");
  }
  if (directions.empty()) {
    throw std::invalid_argument("covering step: need at least one candidate direction");
  }
  std::size_t best = 0;
  double best_dist = -1.0;
  for (std::size_t c = 0; c < directions.size(); ++c) {
    const Vec cand = add(x, directions[c]);
    double d2 = std::numeric_limits<double>::infinity();
    for (const Vec& h : history.points) {
      d2 = std::min(d2, squared_distance(cand, h));
    }
    if (d2 > best_dist) {  // strict: ties keep the lowest index
      best_dist = d2;
      best = c;
    }
  }
  return add(x, directions[best]);
}

Vec covering_candidate(const Vec& x, const History& history, double radius, Rng& rng,
                       std::size_t samples) {
  if (samples == 0) throw std::invalid_argument("covering step: samples must be >= 1");
  std::vector<Vec> dirs;
  dirs.reserve(samples);
  for (std::size_t s = 0; s < samples; ++s) {
    Vec d = rng.ball_point(x.size());
    for (auto& c : d) c *= radius;
    dirs.push_back(std::move(d));
  }
  return covering_candidate_among(x, history, dirs);
}

std::size_t argmin_first(const std::vector<ExtendedReal>& values) {
  if (values.empty()) throw std::invalid_argument("argmin_first: empty sequence");
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[best]) best = i;
  }
  return best;
}

IterationState update_step(const IterationState& state, const Vec& trial_x, ExtendedReal trial_value,
                           bool improved, const SolverConfig& config) {
  IterationState next;
  next.k = state.k + 1;
  if (improved) {
    next.x = trial_x;
    next.value = trial_value;
    next.delta = state.delta * config.upsilon;
  } else {
    next.x = state.x;
    next.value = state.value;
    next.delta = state.delta * config.lambda;
  }
  return next;
}

namespace {

struct BudgetExhausted {};

class Evaluator {
 public:
  Evaluator(const Objective& f, double cost_per_eval, std::optional<double> budget, RunTrace& trace,
            History& history)
      : f_(f), cost_per_eval_(cost_per_eval), budget_(budget), trace_(trace), history_(history) {}

  ExtendedReal operator()(const Vec& x, StepKind kind) {
    if (budget_ && cost_ + cost_per_eval_ > *budget_) throw BudgetExhausted{};
    const ExtendedReal v = f_(x);
    cost_ += cost_per_eval_;
    if (trace_.records.empty() || v < trace_.best_value) {
      trace_.best_value = v;
      trace_.best_x = x;
    }
    trace_.records.push_back({eval_index_++, kind, x, v, cost_, trace_.best_value});
    history_.append(x, v);
    return v;
  }

 private:
  const Objective& f_;
  double cost_per_eval_;
  std::optional<double> budget_;
  RunTrace& trace_;
  History& history_;
  double cost_ = 0.0;
  std::size_t eval_index_ = 0;
};

}  // namespace

RunTrace solve(const Objective& objective, const Vec& x0, const SolverConfig& config,
               double cost_per_eval, std::optional<double> budget, const SearchHook& search_hook) {
  config.validate();
  if (!(cost_per_eval > 0.0)) throw std::invalid_argument("solve: cost_per_eval must be positive");
  if (budget && *budget < cost_per_eval) {
    throw std::invalid_argument("solve: budget does not cover a single evaluation");
  }

  Rng rng(config.seed);
  RunTrace trace;
  History history;
  Evaluator evaluate(objective, cost_per_eval, budget, trace, history);

  const std::size_t n = x0.size();
  StopReason reason = StopReason::radius;

  IterationState state;
  try {
    const ExtendedReal v0 = evaluate(x0, StepKind::initial);
    if (!v0.is_finite()) {
      throw InfeasibleStart("solve: objective is not finite at the starting point");
    }
    state = IterationState{0, x0, v0, config.delta0};
    trace.iterations.push_back(state);

    for (;;) {
      if (state.delta < config.delta_min) {
        reason = StopReason::radius;
        break;
      }
      if (state.k >= config.max_iterations) {
        reason = StopReason::iterations;
        break;
      }

      bool improved = false;
      Vec trial = state.x;
      ExtendedReal trial_value = state.value;

      if (config.covering) {
        const Vec cand = covering_candidate(state.x, history, 1.0, rng, config.covering_samples);
        const ExtendedReal v = evaluate(cand, StepKind::covering);
        if (v < state.value) {
          improved = true;
          trial = cand;
          trial_value = v;
        }
      }

      if (!improved && search_hook) {
        const std::vector<Vec> pts = search_hook(state);
        if (!pts.empty()) {
          std::vector<ExtendedReal> vals;
          vals.reserve(pts.size());
          for (const Vec& p : pts) vals.push_back(evaluate(p, StepKind::search));
          const std::size_t i = argmin_first(vals);
          if (vals[i] < state.value) {
            improved = true;
            trial = pts[i];
            trial_value = vals[i];
          }
        }
      }

      if (!improved) {
        const std::vector<Vec> dirs = random_orthogonal_positive_basis(n, state.delta, rng);
        std::vector<Vec> pts;
        std::vector<ExtendedReal> vals;
        pts.reserve(dirs.size());
        vals.reserve(dirs.size());
        for (const Vec& d : dirs) {
          pts.push_back(add(state.x, d));
          vals.push_back(evaluate(pts.back(), StepKind::poll));
        }
        const std::size_t i = argmin_first(vals);
        if (vals[i] < state.value) {
          improved = true;
          trial = pts[i];
          trial_value = vals[i];
        }
      }

      state = update_step(state, trial, trial_value, improved, config);
      trace.iterations.push_back(state);
    }
  } catch (const BudgetExhausted&) {
    reason = StopReason::budget;
  }

  trace.iteration_count = state.k;
  trace.stop_reason = reason;
  return trace;
}

}  // namespace partidfo
