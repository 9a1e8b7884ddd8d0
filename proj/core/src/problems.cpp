#include "partidfo/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace partidfo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// The oscillating noise terms feed exp/cube growth into sine arguments that
// overflow far outside the study boxes. The sine is bounded wherever the
// argument is mathematically finite, so a fixed in-range value stands in for
// the unevaluable cases; the companion fiber-norm terms dominate out there.
double sin_bounded(double arg) { return std::isfinite(arg) ? std::sin(arg) : 0.0; }

OracleResult feasible_if_finite(Vec y, double value) {
  if (std::isnan(value)) {
    throw std::domain_error("oracle: objective evaluated to NaN");
  }
  if (!std::isfinite(value)) return OracleResult::infeasible();
  return OracleResult::feasible(std::move(y), value);
}

Box uniform_box(std::size_t n, double lo, double hi) {
  return Box{Vec(n, lo), Vec(n, hi)};
}

}  // namespace

std::string to_string(ProblemId id) {
  switch (id) {
    case ProblemId::mono: return "mono";
    case ProblemId::radial: return "radial";
    case ProblemId::nonlinear: return "nonlinear";
    case ProblemId::dim2: return "dim2";
    case ProblemId::heavy_mono: return "heavy_mono";
    case ProblemId::heavy_radial: return "heavy_radial";
    case ProblemId::heavy_nonlinear: return "heavy_nonlinear";
    case ProblemId::heavy_dim2: return "heavy_dim2";
  }
  return "?";
}

std::optional<ProblemId> parse_problem_id(std::string_view name) {
  for (ProblemId id : kProblemCatalog) {
    if (to_string(id) == name) return id;
  }
  return std::nullopt;
}

double floorceil(double x) {
  if (!std::isfinite(x)) throw std::domain_error("floorceil: argument must be finite");
  return x <= 0.0 ? std::floor(x) : std::ceil(x) - 1.0;
}

double mod_2pi(double theta) {
  if (!std::isfinite(theta)) throw std::domain_error("mod_2pi: argument must be finite");
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;  // rounding of tiny negative residuals
  return r;
}

double mono_sigma(double x) { return 2.0 * floorceil(x); }

double mono_epsilon(double x) {
  if (x == 0.0) return 0.0;
  const double q = kTwoPi / x;
  // q overflows for subnormal x; the |x| prefactor absorbs the difference.
  const double s = std::isinf(q) ? 0.0 : std::sin(q);
  return std::fabs(x) * std::sqrt(1.0 + s * s) + std::fabs(floorceil(x));
}

double radial_sigma(double x) {
  return x > 0.0 ? kPi - kTwoPi * std::log2(x) : 0.0;
}

double radial_epsilon(double x) {
  const double a = std::sqrt(std::fabs(x * x - 2.0));
  const double s = std::sin(10.0 * kPi * (x - kSqrt2));
  return a + s * s / 10.0;
}

RadialComponents radial_components(double x) {
  if (x < 0.0) throw std::domain_error("radial_components: x must be nonnegative");
  return {radial_sigma(x), radial_epsilon(x)};
}

Vec nonlinear_gamma(double x) {
  const double s = 1.0 + std::sqrt(1.0 + 4.0 * x * x);
  return {std::sqrt(s / 2.0), x * std::sqrt(2.0 / s)};
}

double nonlinear_epsilon(double x) {
  // 1/(x-4) and exp overflow to +inf near and at x = 4; callers treat a
  // non-finite value as fiber infeasibility.
  return std::exp(1.0 / (x - 4.0)) + std::sqrt(std::fabs(x - 4.0)) / 5.0;
}

namespace {

double nonlinear_mismatch(const Vec& y) {
  const double d = (y[0] * y[0]) / (y[1] * y[1] + 1.0) - 1.0;
  return std::log(1.0 + d * d);
}

}  // namespace

double dim2_epsilon(const Vec& x) {
  const double t1 = sin_bounded(10.0 * kPi * (x[1] - x[0] * x[0] * x[0])) / 5.0;
  const double t2 = sin_bounded(6.0 * kPi * (x[1] - std::exp(-x[0]) + 1.0)) / 7.0;
  const double t3 = sin_bounded(12.0 * kPi * std::sqrt(x[0] * x[0] + x[1] * x[1])) / 11.0;
  const double s = t1 + t2 + t3;
  return s * s;
}

Interval dim2_intervals(const Vec& x, double m) {
  if (m < 0.0) throw std::domain_error("dim2_intervals: m must be nonnegative");
  const double lo = std::max({-m, std::cbrt(-m - x[0]), -m * m * m + x[1]});
  const double hi = std::min({m, std::cbrt(m - x[0]), m * m * m + x[1]});
  return Interval::make(lo, hi);
}

Vec dim2_fiber_point(const Vec& x, double t) {
  return {t, t * t * t + x[0], std::cbrt(t - x[1])};
}

Dim2Oracle dim2_oracle(const Vec& x, const BisectionSpec& spec) {
  int first_feasible = -1;
  for (int m = 0; m <= spec.max_bracket_scan; ++m) {
    if (!dim2_intervals(x, m).empty) {
      first_feasible = m;
      break;
    }
  }
  if (first_feasible < 0) {
    throw OracleFailure("dim2 oracle: no feasible radius within the integer bracket scan");
  }

  double lo = 0.0;
  double hi = 0.0;
  int iters = 0;
  if (first_feasible > 0) {
    lo = first_feasible - 1.0;  // infeasible end
    hi = first_feasible;        // feasible end
    while (hi - lo > spec.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (!(mid > lo && mid < hi)) break;
      if (dim2_intervals(x, mid).empty) {
        lo = mid;
      } else {
        hi = mid;
      }
      ++iters;
    }
  }

  Dim2Oracle out;
  out.m_hat = 0.5 * (lo + hi);
  out.bracket_width = hi - lo;
  out.bisection_iterations = iters;
  Interval box = dim2_intervals(x, out.m_hat);
  if (box.empty) box = dim2_intervals(x, hi);  // midpoint may undershoot the true radius
  out.t_hat = 0.5 * (box.lo + box.hi);
  out.y_hat = dim2_fiber_point(x, out.t_hat);
  return out;
}

Vec heavy_mono_sigma(double x) {
  Vec s(101);
  s[0] = x;
  for (int i = 1; i <= 25; ++i) s[i] = 2.0 * (1.0 + (i - 1) / 5.0) * floorceil(x / i);
  for (int i = 26; i <= 50; ++i) s[i] = 25.0 * std::sin((i - 25) * kPi * x / 5.0);
  for (int i = 51; i <= 75; ++i) s[i] = x - 10.0 / i;
  for (int i = 76; i <= 100; ++i) s[i] = i / 10.0;
  return s;
}

Vec heavy_radial_sigma(double x) {
  Vec s(100, 0.0);
  if (x > 0.0) {
    const double lnx = std::log(x);
    for (int i = 1; i <= 100; ++i) s[i - 1] = kTwoPi * lnx / std::log(i + 1.0);
  }
  return s;
}

double heavy_nonlinear_block_product(const Vec& y, std::size_t block) {
  double p = 1.0;
  for (std::size_t i = 5 * block; i < 5 * (block + 1); ++i) p *= y[i];
  return p;
}

double heavy_nonlinear_f(const Vec& y) {
  double s = 0.0;
  for (std::size_t b = 0; b < 20; ++b) s += heavy_nonlinear_block_product(y, b);
  return s / 5.0;
}

double heavy_nonlinear_spread_term(const Vec& y) {
  std::array<double, 20> p{};
  for (std::size_t b = 0; b < 20; ++b) p[b] = heavy_nonlinear_block_product(y, b);
  double s = 0.0;
  for (std::size_t l = 0; l < 20; ++l) {
    for (std::size_t q = 0; q < 20; ++q) {
      const double d = p[l] / p[q] - 1.0;
      s += std::log(1.0 + d * d);
    }
  }
  return s;
}

double heavy_dim2_g(int j, double z) {
  if (j < 1 || j > 10) throw std::domain_error("heavy_dim2_g: j must lie in [1, 10]");
  return z + std::pow(1.0 + j / 10.0, z) - 1.0;
}

double heavy_dim2_g_inverse(int j, double w, const BisectionSpec& spec) {
  if (!std::isfinite(w)) throw std::domain_error("heavy_dim2_g_inverse: w must be finite");
  if (w == 0.0) return 0.0;

  double b = 1.0;
  int doublings = 0;
  while (!(heavy_dim2_g(j, -b) <= w && w <= heavy_dim2_g(j, b))) {
    b *= 2.0;
    if (++doublings > 200) {
      throw OracleFailure("heavy_dim2_g_inverse: bracket not found after 200 doublings");
    }
  }

  double lo = -b;
  double hi = b;
  while (hi - lo > spec.tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    if (heavy_dim2_g(j, mid) < w) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double heavy_dim2_epsilon(const Vec& z) {
  const double t1 = sin_bounded(5.0 * kPi * (z[1] - z[0] * z[0] * z[0])) / 5.0;
  const double t2 = sin_bounded(6.0 * kPi * (z[3] - std::exp(-z[1] - z[2]) + 1.0)) / 7.0;
  const double t3 = sin_bounded(7.0 * kPi * std::sqrt(z[4] * z[4] + z[5] * z[5] + z[6] * z[6])) / 11.0;
  const double t4 = sin_bounded(8.0 * kPi * (z[7] * z[8] * z[9])) / 13.0;
  const double s = t1 + t2 + t3 + t4;
  return s * s;
}

Vec heavy_dim2_f(const Vec& y) {
  Vec x(10);
  for (int j = 1; j <= 10; ++j) {
    double sum9 = 0.0;
    for (int i = 10 * (j - 1); i < 10 * (j - 1) + 9; ++i) sum9 += y[i];
    x[j - 1] = heavy_dim2_g(j, y[10 * j - 1]) - sum9;
  }
  return x;
}

namespace {

PartitionedProblem make_mono() {
  PartitionedProblem p;
  p.id = "mono";
  p.dim_full = 2;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    const double r = y[1] - mono_sigma(y[0]);
    return ExtendedReal(r * r + mono_epsilon(y[0]));
  };
  p.in_omega = [](const Vec&) { return true; };
  p.chi = [](const Vec& y) { return Vec{y[0]}; };
  p.oracle = [](const Vec& x) {
    // The response coordinate matches sigma exactly, so the quadratic term
    // vanishes and the fiber value is epsilon at the index.
    Vec y{x[0], mono_sigma(x[0])};
    return feasible_if_finite(std::move(y), mono_epsilon(x[0]));
  };
  p.full_box = uniform_box(2, -30.0, 30.0);
  p.index_box = uniform_box(1, -30.0, 30.0);
  p.known_optimum = KnownOptimum{{0.0}, {0.0, 0.0}, 0.0, true};
  return p;
}

PartitionedProblem make_radial() {
  PartitionedProblem p;
  p.id = "radial";
  p.dim_full = 2;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    if (y[0] < 0.0) return ExtendedReal::infinity();
    const double t = std::sin((y[1] - radial_sigma(y[0])) / 2.0);
    return ExtendedReal(std::sqrt(y[0]) * t * t + radial_epsilon(y[0]));
  };
  p.in_omega = [](const Vec& y) { return y[0] >= 0.0 && y[1] >= 0.0 && y[1] < kTwoPi; };
  p.chi = [](const Vec& y) { return Vec{y[0]}; };
  p.oracle = [](const Vec& x) {
    if (x[0] < 0.0) return OracleResult::infeasible();
    const double sig = radial_sigma(x[0]);
    Vec y{x[0], mod_2pi(sig)};
    const double t = std::sin((y[1] - sig) / 2.0);
    return feasible_if_finite(std::move(y), std::sqrt(x[0]) * t * t + radial_epsilon(x[0]));
  };
  p.full_box = Box{{0.0, 0.0}, {30.0, kTwoPi}};
  p.index_box = Box{{0.0}, {30.0}};
  p.known_optimum = KnownOptimum{{kSqrt2}, {kSqrt2, 0.0}, 0.0, true};
  return p;
}

PartitionedProblem make_nonlinear() {
  PartitionedProblem p;
  p.id = "nonlinear";
  p.dim_full = 2;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    return ExtendedReal(nonlinear_mismatch(y) + nonlinear_epsilon(y[0] * y[1]));
  };
  p.in_omega = [](const Vec& y) { return y[0] >= 0.0; };
  p.chi = [](const Vec& y) { return Vec{y[0] * y[1]}; };
  p.oracle = [](const Vec& x) {
    Vec y = nonlinear_gamma(x[0]);
    const double v = nonlinear_mismatch(y) + nonlinear_epsilon(x[0]);
    return feasible_if_finite(std::move(y), v);
  };
  p.full_box = Box{{0.0, -30.0}, {30.0, 30.0}};
  p.index_box = Box{{-20.0}, {20.0}};
  p.known_optimum = KnownOptimum{{4.0}, nonlinear_gamma(4.0), 0.0, false};
  return p;
}

PartitionedProblem make_dim2() {
  PartitionedProblem p;
  p.id = "dim2";
  p.dim_full = 3;
  p.dim_index = 2;
  p.phi = [](const Vec& y) {
    const Vec x{y[1] - y[0] * y[0] * y[0], y[0] - y[2] * y[2] * y[2]};
    return ExtendedReal(norm_inf(y) + dim2_epsilon(x));
  };
  p.in_omega = [](const Vec&) { return true; };
  p.chi = [](const Vec& y) {
    return Vec{y[1] - y[0] * y[0] * y[0], y[0] - y[2] * y[2] * y[2]};
  };
  p.oracle = [](const Vec& x) {
    const Dim2Oracle d = dim2_oracle(x);
    return feasible_if_finite(d.y_hat, dim2_epsilon(x) + d.m_hat);
  };
  p.full_box = uniform_box(3, -10.0, 10.0);
  p.index_box = uniform_box(2, -10.0, 10.0);
  p.known_optimum = KnownOptimum{{0.0, 0.0}, {0.0, 0.0, 0.0}, 0.0, true};
  return p;
}

PartitionedProblem make_heavy_mono() {
  PartitionedProblem p;
  p.id = "heavy_mono";
  p.dim_full = 101;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    const Vec s = heavy_mono_sigma(y[0]);
    double q = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = y[i] - s[i];
      q += d * d;
    }
    return ExtendedReal(q + mono_epsilon(y[0]));
  };
  p.in_omega = [](const Vec&) { return true; };
  p.chi = [](const Vec& y) { return Vec{y[0]}; };
  p.oracle = [](const Vec& x) {
    return feasible_if_finite(heavy_mono_sigma(x[0]), mono_epsilon(x[0]));
  };
  p.full_box = uniform_box(101, -30.0, 30.0);
  p.index_box = uniform_box(1, -30.0, 30.0);
  p.known_optimum = KnownOptimum{{0.0}, heavy_mono_sigma(0.0), 0.0, true};
  return p;
}

PartitionedProblem make_heavy_radial() {
  PartitionedProblem p;
  p.id = "heavy_radial";
  p.dim_full = 101;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    const double r = y[0];
    if (r < 0.0) return ExtendedReal::infinity();
    const Vec s = heavy_radial_sigma(r);
    double sum = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
      const double t = std::sin((y[i + 1] - s[i]) / 2.0);
      sum += t * t;
    }
    return ExtendedReal(std::sqrt(r) / 100.0 * sum + radial_epsilon(r));
  };
  p.in_omega = [](const Vec& y) {
    if (y[0] < 0.0) return false;
    for (std::size_t i = 1; i < y.size(); ++i) {
      if (y[i] < 0.0 || y[i] >= kTwoPi) return false;
    }
    return true;
  };
  p.chi = [](const Vec& y) { return Vec{y[0]}; };
  p.oracle = [](const Vec& x) {
    if (x[0] < 0.0) return OracleResult::infeasible();
    const Vec s = heavy_radial_sigma(x[0]);
    Vec y(101);
    y[0] = x[0];
    double sum = 0.0;
    for (std::size_t i = 0; i < 100; ++i) {
      y[i + 1] = mod_2pi(s[i]);
      const double t = std::sin((y[i + 1] - s[i]) / 2.0);
      sum += t * t;
    }
    const double v = std::sqrt(x[0]) / 100.0 * sum + radial_epsilon(x[0]);
    return feasible_if_finite(std::move(y), v);
  };
  p.full_box = uniform_box(101, 0.0, kTwoPi);
  p.index_box = Box{{0.0}, {30.0}};
  Vec y_star(101);
  {
    const Vec s = heavy_radial_sigma(kSqrt2);
    y_star[0] = kSqrt2;
    for (std::size_t i = 0; i < 100; ++i) y_star[i + 1] = mod_2pi(s[i]);
  }
  p.known_optimum = KnownOptimum{{kSqrt2}, std::move(y_star), 0.0, true};
  return p;
}

PartitionedProblem make_heavy_nonlinear() {
  PartitionedProblem p;
  p.id = "heavy_nonlinear";
  p.dim_full = 100;
  p.dim_index = 1;
  p.phi = [](const Vec& y) {
    for (std::size_t b = 0; b < 20; ++b) {
      if (heavy_nonlinear_block_product(y, b) == 0.0) return ExtendedReal::infinity();
    }
    return ExtendedReal(heavy_nonlinear_spread_term(y) + nonlinear_epsilon(heavy_nonlinear_f(y)));
  };
  p.in_omega = [](const Vec& y) {
    if (!(y[0] > 0.0)) return false;
    for (std::size_t i = 0; i + 1 < y.size(); ++i) {
      if (y[i + 1] < y[i]) return false;
    }
    return true;
  };
  p.chi = [](const Vec& y) { return Vec{heavy_nonlinear_f(y)}; };
  p.oracle = [](const Vec& x) {
    if (!(x[0] > 0.0)) return OracleResult::infeasible();
    const double alpha = std::pow(x[0] / 4.0, 0.2);
    Vec y(100, alpha);
    const double v = heavy_nonlinear_spread_term(y) + nonlinear_epsilon(x[0]);
    return feasible_if_finite(std::move(y), v);
  };
  p.full_box = uniform_box(100, 1e-6, 3.0);
  p.index_box = Box{{0.0}, {130.0}};
  p.known_optimum = KnownOptimum{{4.0}, Vec(100, 1.0), 0.0, false};
  return p;
}

PartitionedProblem make_heavy_dim2() {
  PartitionedProblem p;
  p.id = "heavy_dim2";
  p.dim_full = 100;
  p.dim_index = 10;
  p.phi = [](const Vec& y) {
    return ExtendedReal(norm1(y) + heavy_dim2_epsilon(heavy_dim2_f(y)));
  };
  p.in_omega = [](const Vec&) { return true; };
  p.chi = [](const Vec& y) { return heavy_dim2_f(y); };
  // Tighter bisection than the operation default so the index-map roundtrip
  // through g_j stays below 1e-12 * max(1, |x|).
  p.oracle = [spec = BisectionSpec{0x1.0p-48, 100000}](const Vec& x) {
    Vec y(100, 0.0);
    double sum = 0.0;
    for (int j = 1; j <= 10; ++j) {
      const double t = heavy_dim2_g_inverse(j, x[j - 1], spec);
      y[10 * j - 1] = t;
      sum += std::fabs(t);
    }
    return feasible_if_finite(std::move(y), heavy_dim2_epsilon(x) + sum);
  };
  p.full_box = uniform_box(100, -5.0, 5.0);
  p.index_box = uniform_box(10, -50.0, 50.0);
  p.known_optimum = KnownOptimum{Vec(10, 0.0), Vec(100, 0.0), 0.0, true};
  return p;
}

}  // namespace

PartitionedProblem make_problem(ProblemId id) {
  switch (id) {
    case ProblemId::mono: return make_mono();
    case ProblemId::radial: return make_radial();
    case ProblemId::nonlinear: return make_nonlinear();
    case ProblemId::dim2: return make_dim2();
    case ProblemId::heavy_mono: return make_heavy_mono();
    case ProblemId::heavy_radial: return make_heavy_radial();
    case ProblemId::heavy_nonlinear: return make_heavy_nonlinear();
    case ProblemId::heavy_dim2: return make_heavy_dim2();
  }
  throw std::invalid_argument("make_problem: unknown problem id");
}

}  // namespace partidfo
