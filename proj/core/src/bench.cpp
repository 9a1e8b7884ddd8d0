#include "partidfo/bench.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace partidfo {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec uniform_in_box(const Box& box, Rng& rng) {
  Vec y(box.lo.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = rng.uniform(box.lo[i], box.hi[i]);
  return y;
}

// Start regions for the desk problems are sub-boxes whose index image stays
// inside the documented index box.
Box start_box(ProblemId id) {
  switch (id) {
    case ProblemId::mono: return Box{{-30.0, -30.0}, {30.0, 30.0}};
    case ProblemId::radial: return Box{{0.0, 0.0}, {30.0, kTwoPi}};
    case ProblemId::nonlinear: return Box{{0.0, -4.4}, {4.4, 4.4}};
    case ProblemId::dim2: return Box{{-2.0, -2.0, -2.0}, {2.0, 2.0, 2.0}};
    case ProblemId::heavy_mono: return Box{Vec(101, -30.0), Vec(101, 30.0)};
    case ProblemId::heavy_radial: return Box{Vec(101, 0.0), Vec(101, kTwoPi)};
    case ProblemId::heavy_dim2: return Box{Vec(100, -5.0), Vec(100, 5.0)};
    case ProblemId::heavy_nonlinear: break;  // block scheme, handled separately
  }
  throw std::invalid_argument("start_box: no uniform start box for this problem");
}

Vec heavy_nonlinear_fixed_start(std::size_t index) {
  Vec y(100);
  switch (index) {
    case 0:
      for (int i = 1; i <= 100; ++i) y[i - 1] = i / 100.0;
      return y;
    case 1:
      for (auto& v : y) v = 0.5;
      return y;
    case 2:
      for (int i = 1; i <= 100; ++i) y[i - 1] = 2.0 * i / 100.0;
      return y;
    default:
      throw std::logic_error("heavy_nonlinear has three fixed starts");
  }
}

}  // namespace

std::vector<Vec> generate_starts(ProblemId problem, std::size_t count, std::uint64_t seed) {
  if (count == 0) throw std::invalid_argument("generate_starts: count must be >= 1");
  Rng rng(seed);
  std::vector<Vec> starts;
  starts.reserve(count);
  if (problem == ProblemId::heavy_nonlinear) {
    for (std::size_t i = 0; i < count; ++i) {
      if (i < 3) {
        starts.push_back(heavy_nonlinear_fixed_start(i));
      } else {
        Vec y(100);
        for (int j = 1; j <= 100; ++j) y[j - 1] = rng.uniform((j - 1) / 100.0, j / 100.0);
        starts.push_back(std::move(y));
      }
    }
    return starts;
  }
  const Box box = start_box(problem);
  for (std::size_t i = 0; i < count; ++i) starts.push_back(uniform_in_box(box, rng));
  return starts;
}

MultistartPlan make_multistart_plan(ProblemId problem, std::size_t count, std::uint64_t seed,
                                    double budget, double tau) {
  if (!(budget > 0.0)) throw std::invalid_argument("multistart plan: budget must be positive");
  if (tau < 0.0) throw std::invalid_argument("multistart plan: tau must be nonnegative");
  MultistartPlan plan;
  plan.problem = problem;
  plan.base_seed = seed;
  plan.budget = budget;
  plan.tau = tau;
  plan.starts = generate_starts(problem, count, seed);
  const Box box = make_problem(problem).full_box;
  for (const Vec& y : plan.starts) {
    if (!box.contains(y)) {
      throw std::invalid_argument("multistart plan: a generated start leaves the problem box");
    }
  }
  return plan;
}

MultistartOutcome run_multistart(const MultistartPlan& plan, const SolverConfig& config,
                                 bool with_baseline) {
  const PartitionedProblem problem = make_problem(plan.problem);
  const CostModel model{plan.tau};
  MultistartOutcome out;
  for (std::size_t i = 0; i < plan.starts.size(); ++i) {
    SolverConfig c = config;
    c.seed = mix_seed(plan.base_seed, 1000 + i);
    out.reformulated_seeds.push_back(c.seed);
    out.reformulated.push_back(run_reformulated(problem, plan.starts[i], c, model, plan.budget));
    if (with_baseline) {
      SolverConfig cb = config;
      cb.seed = mix_seed(plan.base_seed, 2000 + i);
      out.baseline_seeds.push_back(cb.seed);
      out.baseline.push_back(run_baseline(problem, plan.starts[i], cb, model, plan.budget));
    }
  }
  return out;
}

RunTrace run_reformulated_from_index(const PartitionedProblem& problem, const Vec& x0,
                                     SolverConfig config, const CostModel& model,
                                     std::optional<double> budget) {
  const Objective objective = [&problem](const Vec& x) {
    return reformulated_objective(problem, x).first;
  };
  RunTrace trace = solve(objective, x0, config, model.reformulated_cost(), budget);
  const OracleResult best = problem.oracle(trace.best_x);
  if (best.is_feasible()) trace.recovered_point = best.point();
  return trace;
}

RunTrace run_reformulated(const PartitionedProblem& problem, const Vec& y0, SolverConfig config,
                          const CostModel& model, std::optional<double> budget) {
  const Vec x0 = problem.chi(y0);
  if (!problem.index_box.contains(x0)) {
    throw InfeasibleStart("run_reformulated: start index lies outside the documented index box");
  }
  return run_reformulated_from_index(problem, x0, config, model, budget);
}

RunTrace run_baseline(const PartitionedProblem& problem, const Vec& y0, SolverConfig config,
                      const CostModel& model, std::optional<double> budget) {
  if (!problem.full_box.contains(y0)) {
    throw InfeasibleStart("run_baseline: start lies outside the problem box");
  }
  config.covering = false;
  const Objective objective = [&problem](const Vec& y) {
    const bool feasible = problem.in_omega(y) && problem.full_box.contains(y);
    if (!feasible) return ExtendedReal::infinity();
    return extreme_barrier(problem.phi(y), true);
  };
  return solve(objective, y0, config, model.direct_cost(), budget);
}

std::vector<ProfilePoint> convergence_profile(const RunTrace& trace) {
  if (trace.records.empty()) {
    throw std::invalid_argument("convergence_profile: trace has no evaluations");
  }
  std::vector<ProfilePoint> profile;
  profile.reserve(trace.records.size());
  for (const EvalRecord& r : trace.records) {
    if (!profile.empty() && profile.back().cumulative_cost == r.cumulative_cost) {
      profile.back().best_value = r.best_so_far;
    } else {
      profile.push_back({r.cumulative_cost, r.best_so_far});
    }
  }
  return profile;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("parse_double: cannot parse '" + std::string(s) + "'");
  }
  return v;
}

std::string join_components(const Vec& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += ';';
    s += format_double(x[i]);
  }
  return s;
}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

void finish_writing(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write to '" + path.string() + "' failed");
  }
}

StepKind parse_step_kind(std::string_view s) {
  if (s == "initial") return StepKind::initial;
  if (s == "covering") return StepKind::covering;
  if (s == "search") return StepKind::search;
  if (s == "poll") return StepKind::poll;
  throw std::invalid_argument("unknown step kind '" + std::string(s) + "'");
}

}  // namespace

void write_trace_csv(const RunTrace& trace, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "eval_index,step_kind,cumulative_cost,value,best_so_far,x\n";
  for (const EvalRecord& r : trace.records) {
    out << r.eval_index << ',' << to_string(r.step) << ',' << format_double(r.cumulative_cost)
        << ',' << format_double(r.value.value()) << ',' << format_double(r.best_so_far.value())
        << ',' << join_components(r.x) << '\n';
  }
  finish_writing(out, path);
}

RunTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  RunTrace trace;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("'" + path.string() + "' is empty");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::array<std::string, 6> field;
    std::size_t pos = 0;
    for (int f = 0; f < 5; ++f) {
      const std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos) {
        throw std::runtime_error("malformed row in '" + path.string() + "'");
      }
      field[f] = line.substr(pos, comma - pos);
      pos = comma + 1;
    }
    field[5] = line.substr(pos);

    EvalRecord r;
    r.eval_index = static_cast<std::size_t>(std::stoull(field[0]));
    r.step = parse_step_kind(field[1]);
    r.cumulative_cost = parse_double(field[2]);
    r.value = ExtendedReal(parse_double(field[3]));
    r.best_so_far = ExtendedReal(parse_double(field[4]));
    std::stringstream comps(field[5]);
    std::string c;
    while (std::getline(comps, c, ';')) r.x.push_back(parse_double(c));
    trace.records.push_back(std::move(r));
  }
  if (!trace.records.empty()) {
    trace.best_value = trace.records.back().best_so_far;
  }
  return trace;
}

void write_profile_csv(const std::vector<ProfilePoint>& profile, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "cumulative_cost,best_value\n";
  for (const ProfilePoint& p : profile) {
    out << format_double(p.cumulative_cost) << ',' << format_double(p.best_value.value()) << '\n';
  }
  finish_writing(out, path);
}

void append_run_metadata(const RunMetadata& meta, const std::filesystem::path& path) {
  nlohmann::json j;
  j["problem"] = meta.problem;
  j["method"] = meta.method;
  j["run_index"] = meta.run_index;
  j["seed"] = meta.seed;
  j["config"] = {
      {"delta0", meta.config.delta0},
      {"lambda", meta.config.lambda},
      {"upsilon", meta.config.upsilon},
      {"delta_min", meta.config.delta_min},
      {"max_iterations", meta.config.max_iterations},
      {"covering_samples", meta.config.covering_samples},
      {"covering", meta.config.covering},
  };
  j["tau"] = meta.tau;
  if (meta.budget) {
    j["budget"] = *meta.budget;
  } else {
    j["budget"] = nullptr;
  }
  j["stop_reason"] = meta.stop_reason;
  j["final_best_value"] = meta.final_best_value;
  j["final_incumbent"] = meta.final_incumbent;

  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for appending");
  out << j.dump() << '\n';
  finish_writing(out, path);
}

}  // namespace partidfo
