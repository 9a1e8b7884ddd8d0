// Command-line front end: solve single catalog instances, regenerate the
// built-in study tables, and emit convergence profiles with cost accounting.

#include <array>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "partidfo/bench.hpp"
#include "partidfo/problems.hpp"

namespace {

using namespace partidfo;

constexpr double kE = std::numbers::e;
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

constexpr int kExitBadFlags = 2;
constexpr int kExitInfeasibleStart = 3;
constexpr int kExitIo = 4;

struct SectionDefaults {
  double lambda;
  double upsilon;
};

SectionDefaults section_defaults(ProblemId id) {
  switch (id) {
    case ProblemId::mono:
    case ProblemId::radial:
    case ProblemId::nonlinear:
    case ProblemId::heavy_mono:
    case ProblemId::heavy_radial:
      return {0.5, 1.0};
    case ProblemId::heavy_nonlinear:
      return {0.5, 2.0};
    case ProblemId::dim2:
    case ProblemId::heavy_dim2:
      return {0.75, 2.0};
  }
  return {0.5, 1.0};
}

ProblemId table_problem(int table) {
  switch (table) {
    case 1: return ProblemId::mono;
    case 2: return ProblemId::radial;
    case 3: return ProblemId::nonlinear;
    default: return ProblemId::dim2;
  }
}

std::vector<Vec> table_starts(int table) {
  switch (table) {
    case 1:
      return {{9.753}, {kPi},  {kSqrt2},  {kE + 1.0},
              {-9.753}, {-kPi}, {-kSqrt2}, {-kE - 1.0}};
    case 2:
      return {{0.0}, {0.03125}, {3.0 * kSqrt2}, {4.0 * kPi},
              {5.0}, {kE},      {kE * kE},      {kE * kE * kE}};
    case 3:
      return {{-kE * kE}, {-kPi},         {-kSqrt2},      {kE},
              {3.0 * kSqrt2}, {2.0 * kE * kE}, {4.0 * kPi}, {kE * kE * kE}};
    default:
      return {{-2.0, 2.0},
              {-0.01, kE * kE},
              {-kPi / 2.0, 1.75},
              {-kPi / 4.0, std::sqrt(kE)},
              {0.25, 0.25},
              {1.5 * kPi, 1.0 / std::sqrt(8.0)},
              {kE * kE, 2.0 * kPi},
              {kE * kE, -1.0 / 11.0}};
  }
}

// Per-table convergence measure: the distance printed in the study tables.
double table_xhat(int table, const Vec& x) {
  switch (table) {
    case 1: return x[0];
    case 2: return x[0] - kSqrt2;
    case 3: return x[0] - 4.0;
    default: return norm_inf(x);
  }
}

std::array<double, 3> table_thresholds(int table) {
  if (table == 4) return {5e-2, 5e-5, 5e-8};
  return {5e-3, 5e-6, 5e-9};
}

void print_catalog(std::ostream& os) {
  os << "available problems:";
  for (ProblemId id : kProblemCatalog) os << ' ' << to_string(id);
  os << '\n';
}

std::optional<std::uint64_t> env_seed_override() {
  const char* env = std::getenv("PARTI_DFO_SEED");
  if (env == nullptr) return std::nullopt;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(env, &pos);
    if (pos != std::string(env).size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw CLI::ValidationError("PARTI_DFO_SEED", "cannot parse environment seed '" + std::string(env) + "'");
  }
}

Vec parse_start(const std::string& spec, ProblemId id, const PartitionedProblem& problem,
                std::uint64_t seed) {
  if (spec.rfind("auto:", 0) == 0) {
    std::size_t index = 0;
    try {
      index = std::stoull(spec.substr(5));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--start", "malformed auto start '" + spec + "'");
    }
    if (index == 0) throw CLI::ValidationError("--start", "auto start indices are 1-based");
    switch (id) {
      case ProblemId::mono:
      case ProblemId::radial:
      case ProblemId::nonlinear:
      case ProblemId::dim2: {
        const int table = id == ProblemId::mono ? 1 : id == ProblemId::radial ? 2
                          : id == ProblemId::nonlinear ? 3 : 4;
        const auto starts = table_starts(table);
        if (index > starts.size()) {
          throw CLI::ValidationError("--start", "auto start index out of range (1.." +
                                                    std::to_string(starts.size()) + ")");
        }
        return starts[index - 1];
      }
      default: {
        const auto ys = generate_starts(id, index, seed);
        return problem.chi(ys[index - 1]);
      }
    }
  }

  Vec x;
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const std::size_t comma = spec.find(',', pos);
    const std::string tok = spec.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      x.push_back(parse_double(tok));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--start", "cannot parse component '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (x.size() != problem.dim_index) {
    throw CLI::ValidationError("--start", "expected " + std::to_string(problem.dim_index) +
                                              " components, got " + std::to_string(x.size()));
  }
  return x;
}

struct SolveArgs {
  std::string problem;
  std::string start;
  std::uint64_t seed = 1;
  double lambda = -1.0;  // negative: use the per-problem default
  double upsilon = -1.0;
  double delta0 = 1.0;
  double tol = 1e-10;
  std::size_t max_iters = 100000;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const auto id = parse_problem_id(args.problem);
  if (!id) {
    std::cerr << "unknown problem '" << args.problem << "'\n";
    print_catalog(std::cerr);
    return kExitBadFlags;
  }
  const PartitionedProblem problem = make_problem(*id);

  Vec x0;
  try {
    x0 = parse_start(args.start, *id, problem, args.seed);
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitBadFlags;
  }

  const SectionDefaults defaults = section_defaults(*id);
  SolverConfig config;
  config.delta0 = args.delta0;
  config.lambda = args.lambda > 0.0 ? args.lambda : defaults.lambda;
  config.upsilon = args.upsilon > 0.0 ? args.upsilon : defaults.upsilon;
  config.delta_min = args.tol;
  config.max_iterations = args.max_iters;
  config.seed = args.seed;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitBadFlags;
  }

  RunTrace trace;
  try {
    trace = run_reformulated_from_index(problem, x0, config, CostModel{0.0}, std::nullopt);
  } catch (const InfeasibleStart& e) {
    std::cerr << e.what() << '\n';
    return kExitInfeasibleStart;
  }

  if (!args.out.empty()) {
    try {
      write_trace_csv(trace, args.out);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kExitIo;
    }
  }

  std::cout << "problem:        " << problem.id << '\n';
  std::cout << "x_best:         " << join_components(trace.best_x) << '\n';
  std::cout << "value:          " << format_double(trace.best_value.value()) << '\n';
  std::cout << "iterations:     " << trace.iteration_count << '\n';
  std::cout << "stop_reason:    " << to_string(trace.stop_reason) << '\n';
  if (trace.recovered_point) {
    std::cout << "recovered_dim:  " << trace.recovered_point->size() << '\n';
  }
  return 0;
}

struct ReproduceArgs {
  int table = 0;
  std::string out_dir = ".";
  std::uint64_t seed = 1;
};

int cmd_reproduce(const ReproduceArgs& args) {
  const ProblemId id = table_problem(args.table);
  const PartitionedProblem problem = make_problem(id);
  const SectionDefaults defaults = section_defaults(id);
  const auto starts = table_starts(args.table);
  const auto thresholds = table_thresholds(args.table);

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    std::cerr << "cannot create '" << args.out_dir << "': " << ec.message() << '\n';
    return kExitIo;
  }

  struct Row {
    Vec start;
    std::array<long long, 3> first_k{-1, -1, -1};
    double returned = 0.0;
  };
  std::vector<Row> rows;

  for (std::size_t i = 0; i < starts.size(); ++i) {
    SolverConfig config;
    config.lambda = defaults.lambda;
    config.upsilon = defaults.upsilon;
    config.seed = mix_seed(args.seed, i);
    if (args.table == 3) config.max_iterations = 201;

    RunTrace trace;
    try {
      trace = run_reformulated_from_index(problem, starts[i], config, CostModel{0.0}, std::nullopt);
    } catch (const InfeasibleStart& e) {
      std::cerr << "row " << i + 1 << ": " << e.what() << '\n';
      return kExitInfeasibleStart;
    }

    Row row;
    row.start = starts[i];
    for (const IterationState& st : trace.iterations) {
      const double xhat = std::fabs(table_xhat(args.table, st.x));
      for (int t = 0; t < 3; ++t) {
        if (row.first_k[t] < 0 && xhat <= thresholds[t]) {
          row.first_k[t] = static_cast<long long>(st.k);
        }
      }
    }
    row.returned = table_xhat(args.table, trace.iterations.back().x);
    rows.push_back(row);

    const std::filesystem::path trace_path =
        std::filesystem::path(args.out_dir) /
        ("table" + std::to_string(args.table) + "_row" + std::to_string(i + 1) + "_trace.csv");
    try {
      write_trace_csv(trace, trace_path);
    } catch (const std::exception& e) {
      std::cerr << e.what() << '\n';
      return kExitIo;
    }
  }

  const std::filesystem::path summary_path =
      std::filesystem::path(args.out_dir) / ("table" + std::to_string(args.table) + "_summary.csv");
  try {
    std::ofstream out(summary_path);
    if (!out) throw std::runtime_error("cannot open '" + summary_path.string() + "' for writing");
    out << "start,first_k_coarse,first_k_mid,first_k_fine,returned_xhat\n";
    for (const Row& row : rows) {
      out << join_components(row.start);
      for (long long k : row.first_k) {
        out << ',';
        if (k >= 0) out << k;
        else out << '-';
      }
      out << ',' << format_double(row.returned) << '\n';
    }
    out.flush();
    if (!out) throw std::runtime_error("write to '" + summary_path.string() + "' failed");
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::cout << "row " << i + 1 << "  start=" << join_components(rows[i].start)
              << "  returned_xhat=" << format_double(rows[i].returned) << '\n';
  }
  std::cout << "summary: " << summary_path.string() << '\n';
  return 0;
}

struct ProfileArgs {
  std::string problem;
  double tau = -1.0;  // negative: per-problem default
  double budget = 5000.0;
  std::size_t starts = 6;
  std::uint64_t seed = 1;
  bool baseline = false;
  std::string out_dir = ".";
};

double default_tau(ProblemId id) {
  switch (id) {
    case ProblemId::heavy_mono:
    case ProblemId::heavy_radial:
    case ProblemId::heavy_nonlinear:
      return 100.0;
    case ProblemId::heavy_dim2:
      return 10.0;
    default:
      return 0.0;
  }
}

bool is_heavy(ProblemId id) {
  return id == ProblemId::heavy_mono || id == ProblemId::heavy_radial ||
         id == ProblemId::heavy_nonlinear || id == ProblemId::heavy_dim2;
}

int cmd_profile(const ProfileArgs& args) {
  const auto id = parse_problem_id(args.problem);
  if (!id) {
    std::cerr << "unknown problem '" << args.problem << "'\n";
    print_catalog(std::cerr);
    return kExitBadFlags;
  }
  if (args.starts == 0) {
    std::cerr << "--starts must be >= 1\n";
    return kExitBadFlags;
  }
  if (!(args.budget > 0.0)) {
    std::cerr << "--budget must be positive\n";
    return kExitBadFlags;
  }
  if (!is_heavy(*id)) {
    std::cerr << "warning: '" << args.problem
              << "' is a desk-scale problem; profiles target the heavy catalog\n";
  }
  const double tau = args.tau >= 0.0 ? args.tau : default_tau(*id);

  const SectionDefaults defaults = section_defaults(*id);
  SolverConfig config;
  config.lambda = defaults.lambda;
  config.upsilon = defaults.upsilon;

  MultistartPlan plan;
  MultistartOutcome out;
  try {
    plan = make_multistart_plan(*id, args.starts, args.seed, args.budget, tau);
    out = run_multistart(plan, config, args.baseline);
  } catch (const InfeasibleStart& e) {
    std::cerr << e.what() << '\n';
    return kExitInfeasibleStart;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitInfeasibleStart;
  }

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    std::cerr << "cannot create '" << args.out_dir << "': " << ec.message() << '\n';
    return kExitIo;
  }
  const std::filesystem::path dir(args.out_dir);
  const std::filesystem::path sidecar = dir / (to_string(*id) + "_runs.jsonl");
  std::filesystem::remove(sidecar, ec);  // fresh sidecar per invocation

  try {
    for (std::size_t i = 0; i < plan.starts.size(); ++i) {
      for (int pass = 0; pass < (args.baseline ? 2 : 1); ++pass) {
        const bool is_base = pass == 1;
        const RunTrace& trace = is_base ? out.baseline[i] : out.reformulated[i];
        const std::string method = is_base ? "baseline" : "reformulated";

        const std::filesystem::path profile_path =
            dir / (to_string(*id) + "_" + method + "_run" + std::to_string(i + 1) + "_profile.csv");
        write_profile_csv(convergence_profile(trace), profile_path);

        RunMetadata meta;
        meta.problem = to_string(*id);
        meta.method = method;
        meta.run_index = i + 1;
        meta.seed = is_base ? out.baseline_seeds[i] : out.reformulated_seeds[i];
        meta.config = config;
        meta.config.seed = meta.seed;
        meta.config.covering = !is_base;
        meta.tau = tau;
        meta.budget = args.budget;
        meta.stop_reason = to_string(trace.stop_reason);
        meta.final_best_value = trace.best_value.value();
        meta.final_incumbent = trace.best_x;
        append_run_metadata(meta, sidecar);

        std::cout << method << " run " << i + 1 << ": best "
                  << format_double(trace.best_value.value()) << " ("
                  << to_string(trace.stop_reason) << ")\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}

int cmd_list_problems() {
  for (ProblemId id : kProblemCatalog) {
    const PartitionedProblem p = make_problem(id);
    std::cout << to_string(id) << "  dim_full=" << p.dim_full << "  dim_index=" << p.dim_index;
    if (p.known_optimum) {
      std::cout << "  optimum=" << format_double(p.known_optimum->value)
                << (p.known_optimum->attained ? " (attained)" : " (generalized)");
    }
    std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partidfo: partitioned derivative-free optimization"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one catalog instance");
  solve_cmd->add_option("--problem", solve_args.problem, "problem id")->required();
  solve_cmd->add_option("--start", solve_args.start,
                        "comma-separated index components, or auto:<i>")->required();
  solve_cmd->add_option("--seed", solve_args.seed, "random seed");
  solve_cmd->add_option("--lambda", solve_args.lambda, "radius shrink factor");
  solve_cmd->add_option("--upsilon", solve_args.upsilon, "radius expand factor");
  solve_cmd->add_option("--delta0", solve_args.delta0, "initial poll radius");
  solve_cmd->add_option("--tol", solve_args.tol, "stop once the radius falls below this");
  solve_cmd->add_option("--max_iters", solve_args.max_iters, "iteration cap");
  solve_cmd->add_option("--out", solve_args.out, "trace CSV output path");

  ReproduceArgs repro_args;
  CLI::App* repro_cmd = app.add_subcommand("reproduce", "regenerate a study table");
  repro_cmd->add_option("--table", repro_args.table, "table number (1-4)")
      ->required()
      ->check(CLI::Range(1, 4));
  repro_cmd->add_option("--out_dir", repro_args.out_dir, "output directory");
  repro_cmd->add_option("--seed", repro_args.seed, "base random seed");

  ProfileArgs profile_args;
  CLI::App* profile_cmd = app.add_subcommand("profile", "multistart convergence profiles");
  profile_cmd->add_option("--problem", profile_args.problem, "problem id")->required();
  profile_cmd->add_option("--tau", profile_args.tau, "relative oracle cost");
  profile_cmd->add_option("--budget", profile_args.budget, "evaluation budget in units");
  profile_cmd->add_option("--starts", profile_args.starts, "number of starting points");
  profile_cmd->add_option("--seed", profile_args.seed, "base random seed");
  profile_cmd->add_flag("--baseline", profile_args.baseline, "also run the full-space baseline");
  profile_cmd->add_option("--out_dir", profile_args.out_dir, "output directory");

  CLI::App* list_cmd = app.add_subcommand("list-problems", "list the problem catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitBadFlags;
  }

  try {
    const auto env = env_seed_override();
    if (env) {
      solve_args.seed = *env;
      repro_args.seed = *env;
      profile_args.seed = *env;
    }
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return kExitBadFlags;
  }

  if (solve_cmd->parsed()) return cmd_solve(solve_args);
  if (repro_cmd->parsed()) return cmd_reproduce(repro_args);
  if (profile_cmd->parsed()) return cmd_profile(profile_args);
  if (list_cmd->parsed()) return cmd_list_problems();
  return kExitBadFlags;
}
