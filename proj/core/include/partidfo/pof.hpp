#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include "partidfo/extended_real.hpp"
#include "partidfo/vec.hpp"

namespace partidfo {

// Oracle subproblem failed for a structural reason (e.g. a bisection bracket
// was never found). Distinct from infeasibility, which is a regular outcome.
class OracleFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleStart : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Outcome of minimizing the objective over one partition fiber: either a
// fiber-global minimizer with its objective value, or infeasible.
class OracleResult {
 public:
  static OracleResult feasible(Vec y, double value) {
    OracleResult r;
    r.point_ = std::move(y);
    r.value_ = value;
    return r;
  }
  static OracleResult infeasible() { return OracleResult{}; }

  bool is_feasible() const { return point_.has_value(); }
  const Vec& point() const {
    if (!point_) throw std::logic_error("OracleResult: no point on an infeasible result");
    return *point_;
  }
  double value() const {
    if (!point_) throw std::logic_error("OracleResult: no value on an infeasible result");
    return value_;
  }

 private:
  std::optional<Vec> point_;
  double value_ = 0.0;
};

struct Box {
  Vec lo;
  Vec hi;

  bool contains(const Vec& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] < lo[i] || x[i] > hi[i]) return false;
    }
    return true;
  }
};

struct KnownOptimum {
  Vec x;         // optimal partition index
  Vec y;         // optimal full-space point
  double value;  // optimal objective value
  bool attained; // false when the optimum is only a generalized solution
};

// A problem carrying its partition structure: the full-space objective, the
// feasibility predicate, the index map onto the partition space, and the
// per-fiber minimization oracle. Immutable after construction and safely
// shareable across concurrent solver runs.
struct PartitionedProblem {
  std::string id;
  std::size_t dim_full = 0;   // full variable space dimension
  std::size_t dim_index = 0;  // partition index space dimension

  std::function<ExtendedReal(const Vec&)> phi;
  std::function<bool(const Vec&)> in_omega;
  std::function<Vec(const Vec&)> chi;
  std::function<OracleResult(const Vec&)> oracle;

  Box full_box;   // box constraints handed to the full-space baseline
  Box index_box;  // documented index region; gates starting points only

  std::optional<KnownOptimum> known_optimum;
};

// Returns the value on feasible points and +inf on infeasible ones.
inline ExtendedReal extreme_barrier(ExtendedReal value, bool feasible) {
  return feasible ? value : ExtendedReal::infinity();
}

// The index-space objective: value of the fiber minimizer at x, or +inf when
// the fiber subproblem is infeasible. The minimizer itself is returned so
// callers can recover the full-space solution at termination.
std::pair<ExtendedReal, std::optional<Vec>> reformulated_objective(const PartitionedProblem& problem,
                                                                   const Vec& x);

// Max-norm defect of mapping the fiber minimizer back to its index. Throws
// when the oracle is infeasible at x.
double index_roundtrip(const PartitionedProblem& problem, const Vec& x);

}  // namespace partidfo
