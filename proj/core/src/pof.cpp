#include "partidfo/pof.hpp"

#include <cmath>
#include <cstddef>

namespace partidfo {

std::pair<ExtendedReal, std::optional<Vec>> reformulated_objective(const PartitionedProblem& problem,
                                                                   const Vec& x) {
  if (x.size() != problem.dim_index) {
    throw std::invalid_argument("reformulated_objective: index point has dimension " +
                                std::to_string(x.size()) + ", expected " +
                                std::to_string(problem.dim_index));
  }
  OracleResult r = problem.oracle(x);
  if (!r.is_feasible()) {
    return {ExtendedReal::infinity(), std::nullopt};
  }
  return {ExtendedReal(r.value()), r.point()};
}

double index_roundtrip(const PartitionedProblem& problem, const Vec& x) {
  OracleResult r = problem.oracle(x);
  if (!r.is_feasible()) {
    throw std::invalid_argument("index_roundtrip: oracle is infeasible at the given index");
  }
  const Vec mapped = problem.chi(r.point());
  double defect = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    defect = std::max(defect, std::fabs(mapped[i] - x[i]));
  }
  return defect;
}

}  // namespace partidfo
