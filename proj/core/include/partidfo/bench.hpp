#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "partidfo/problems.hpp"
#include "partidfo/solver.hpp"

namespace partidfo {

// Evaluation cost accounting: one unit per direct objective call, 1 + tau
// units per oracle-backed reformulated call.
struct CostModel {
  double tau = 0.0;

  double direct_cost() const { return 1.0; }
  double reformulated_cost() const { return 1.0 + tau; }
};

struct ProfilePoint {
  double cumulative_cost = 0.0;
  ExtendedReal best_value;
};

struct MultistartPlan {
  ProblemId problem = ProblemId::mono;
  std::vector<Vec> starts;  // full-space starting points
  std::uint64_t base_seed = 0;
  double budget = 0.0;
  double tau = 0.0;
};

// Starting points drawn per the problem's start scheme. For heavy_nonlinear
// the first three starts are its fixed profile vectors; further starts use
// the per-coordinate block scheme. Pure function of (problem, count, seed).
std::vector<Vec> generate_starts(ProblemId problem, std::size_t count, std::uint64_t seed);

// Bundles generated starts with the run parameters; throws when a start
// falls outside the problem's box.
MultistartPlan make_multistart_plan(ProblemId problem, std::size_t count, std::uint64_t seed,
                                    double budget, double tau);

struct MultistartOutcome {
  std::vector<RunTrace> reformulated;
  std::vector<RunTrace> baseline;  // empty unless requested
  std::vector<std::uint64_t> reformulated_seeds;
  std::vector<std::uint64_t> baseline_seeds;
};

// Executes the plan's runs with per-run seeds derived from the plan's base
// seed. config carries the section parameters; its seed field is ignored.
MultistartOutcome run_multistart(const MultistartPlan& plan, const SolverConfig& config,
                                 bool with_baseline);

// Reformulated run starting from the index of y0; evaluations cost
// model.reformulated_cost() units. The trace's recovered_point holds the
// full-space solution at the returned incumbent.
RunTrace run_reformulated(const PartitionedProblem& problem, const Vec& y0, SolverConfig config,
                          const CostModel& model, std::optional<double> budget);

// Same, but starting directly from an index-space point.
RunTrace run_reformulated_from_index(const PartitionedProblem& problem, const Vec& x0,
                                     SolverConfig config, const CostModel& model,
                                     std::optional<double> budget);

// Plain direct search (no covering step) on the extreme barrier of the
// objective over Omega intersected with the problem's box, in full space;
// evaluations cost model.direct_cost() units.
RunTrace run_baseline(const PartitionedProblem& problem, const Vec& y0, SolverConfig config,
                      const CostModel& model, std::optional<double> budget);

// Best-value-so-far step function sampled at every evaluation, duplicate
// costs collapsed to the last point.
std::vector<ProfilePoint> convergence_profile(const RunTrace& trace);

// Shortest round-trip decimal form; "inf"/"-inf" for the infinities.
std::string format_double(double v);
double parse_double(std::string_view s);

// Semicolon-joined components, as used in the trace CSV x column.
std::string join_components(const Vec& x);

void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path);
RunTrace read_trace_csv(const std::filesystem::path& path);
void write_profile_csv(const std::vector<ProfilePoint>& profile, const std::filesystem::path& path);

struct RunMetadata {
  std::string problem;
  std::string method;  // "reformulated" or "baseline"
  std::size_t run_index = 0;
  std::uint64_t seed = 0;
  SolverConfig config;
  double tau = 0.0;
  std::optional<double> budget;
  std::string stop_reason;
  double final_best_value = 0.0;
  Vec final_incumbent;
};

// One JSON object per line, appended.
void append_run_metadata(const RunMetadata& meta, const std::filesystem::path& path);

}  // namespace partidfo
