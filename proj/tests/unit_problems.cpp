#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "partidfo/problems.hpp"
#include "partidfo/rng.hpp"

using namespace partidfo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
constexpr double kSqrt2 = std::numbers::sqrt2;

// Brute-force feasibility scan for the dim2 fiber radius, the independent
// check for the bisection oracle.
double dim2_radius_by_grid(const Vec& x, double step = 1e-4, double max_m = 20.0) {
  for (double m = 0.0; m <= max_m; m += step) {
    if (!dim2_intervals(x, m).empty) return m;
  }
  return max_m;
}

}  // namespace

TEST_CASE("floorceil") {
  CHECK(floorceil(0.0) == 0.0);
  CHECK(floorceil(1.5) == 1.0);
  CHECK(floorceil(-1.5) == -2.0);
  CHECK(floorceil(2.0) == 1.0);
  CHECK(floorceil(1.0) == 0.0);
  CHECK(floorceil(-1.0) == -1.0);
  CHECK(floorceil(0.25) == 0.0);
  CHECK_THROWS_AS(floorceil(std::numeric_limits<double>::infinity()), std::domain_error);
}

TEST_CASE("mod_2pi") {
  CHECK(mod_2pi(0.0) == 0.0);
  CHECK(mod_2pi(-kPi) == kPi);
  CHECK(mod_2pi(2.0 * kPi) == 0.0);

  Rng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double theta = rng.uniform(-1e4, 1e4);
    const double r = mod_2pi(theta);
    CHECK(r >= 0.0);
    CHECK(r < 2.0 * kPi);
    const double k = (theta - r) / (2.0 * kPi);
    CHECK(std::fabs(k - std::round(k)) <= 1e-9);
  }
}

TEST_CASE("mono components") {
  CHECK(mono_epsilon(0.0) == 0.0);
  CHECK(mono_epsilon(0.5) == 0.5);
  CHECK(mono_epsilon(-0.25) == 1.25);
  CHECK(mono_sigma(0.5) == 0.0);
  CHECK(mono_sigma(-0.25) == -2.0);

  // Against a direct transcription of the formula.
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-30.0, 30.0);
    if (x == 0.0) continue;
    const double fc = x <= 0.0 ? std::floor(x) : std::ceil(x) - 1.0;
    const double s = std::sin(2.0 * kPi / x);
    const double expected = std::fabs(x) * std::sqrt(1.0 + s * s) + std::fabs(fc);
    CHECK(mono_epsilon(x) == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("radial components") {
  const auto at_sqrt2 = radial_components(kSqrt2);
  CHECK(std::fabs(at_sqrt2.sigma) <= 1e-12);
  CHECK(at_sqrt2.epsilon <= 1e-7);  // x*x-2 bottoms out at ~4.4e-16 in doubles

  const auto at_two = radial_components(2.0);
  CHECK(at_two.sigma == -kPi);
  const double eps_two = std::sqrt(2.0) + std::pow(std::sin(10.0 * kPi * (2.0 - kSqrt2)), 2) / 10.0;
  CHECK(at_two.epsilon == doctest::Approx(eps_two).epsilon(1e-14));
  CHECK(mod_2pi(at_two.sigma) == kPi);

  const auto at_zero = radial_components(0.0);
  CHECK(at_zero.sigma == 0.0);
  const double eps_zero = std::sqrt(2.0) + std::pow(std::sin(-10.0 * kPi * kSqrt2), 2) / 10.0;
  CHECK(at_zero.epsilon == doctest::Approx(eps_zero).epsilon(1e-14));

  CHECK_THROWS_AS(radial_components(-0.5), std::domain_error);
}

TEST_CASE("nonlinear closed-form fiber minimizer") {
  const Vec at_zero = nonlinear_gamma(0.0);
  CHECK(at_zero[0] == 1.0);
  CHECK(at_zero[1] == 0.0);

  const Vec at_two = nonlinear_gamma(2.0);
  CHECK(at_two[0] * at_two[0] == doctest::Approx((1.0 + std::sqrt(17.0)) / 2.0).epsilon(1e-14));
  CHECK(at_two[0] == doctest::Approx(1.600485180).epsilon(1e-8));
  CHECK(at_two[1] == doctest::Approx(1.249621067).epsilon(1e-8));
  CHECK(at_two[0] * at_two[1] == doctest::Approx(2.0).epsilon(1e-12));

  const Vec at_minus_two = nonlinear_gamma(-2.0);
  CHECK(at_minus_two[0] == at_two[0]);
  CHECK(at_minus_two[1] == -at_two[1]);

  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-20.0, 20.0);
    const Vec g = nonlinear_gamma(x);
    CHECK(g[0] >= 1.0);
    CHECK(g[0] * g[1] == doctest::Approx(x).epsilon(1e-12));
  }
}

TEST_CASE("nonlinear epsilon pole") {
  CHECK(std::isinf(nonlinear_epsilon(4.0)));
  CHECK(nonlinear_epsilon(3.9) == doctest::Approx(std::exp(-10.0) + std::sqrt(0.1) / 5.0).epsilon(1e-14));
  CHECK(nonlinear_epsilon(9.267795) ==
        doctest::Approx(std::exp(1.0 / 5.267795) + std::sqrt(5.267795) / 5.0).epsilon(1e-14));
}

TEST_CASE("dim2 interval intersections") {
  const Interval at_origin = dim2_intervals({0.0, 0.0}, 0.0);
  CHECK(!at_origin.empty);
  CHECK(at_origin.lo == 0.0);
  CHECK(at_origin.hi == 0.0);

  const Interval unit = dim2_intervals({0.0, 0.0}, 1.0);
  CHECK(!unit.empty);
  CHECK(unit.lo == -1.0);
  CHECK(unit.hi == 1.0);

  CHECK(dim2_intervals({5.0, 0.0}, 0.0).empty);

  // Monotone inclusion in the radius, the property bisection relies on.
  Rng rng(10);
  for (int i = 0; i < 500; ++i) {
    const Vec x{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const double m1 = rng.uniform(0.0, 5.0);
    const double m2 = m1 + rng.uniform(0.0, 5.0);
    const Interval a = dim2_intervals(x, m1);
    const Interval b = dim2_intervals(x, m2);
    if (!a.empty) {
      REQUIRE(!b.empty);
      CHECK(b.lo <= a.lo + 1e-12);
      CHECK(b.hi >= a.hi - 1e-12);
    }
  }
}

TEST_CASE("dim2 oracle against the grid scan") {
  const Dim2Oracle at_origin = dim2_oracle({0.0, 0.0});
  CHECK(at_origin.m_hat >= 0.0);
  CHECK(at_origin.m_hat <= 0x1.0p-30);
  CHECK(std::fabs(at_origin.t_hat) <= 1e-9);
  CHECK(norm_inf(at_origin.y_hat) <= 1e-3);

  const Dim2Oracle at_one = dim2_oracle({1.0, 0.0});
  CHECK(std::fabs(at_one.m_hat - dim2_radius_by_grid({1.0, 0.0})) <= 1e-3);

  const Dim2Oracle probe = dim2_oracle({-2.0, 3.0});
  const Vec y = probe.y_hat;
  CHECK(y[1] - y[0] * y[0] * y[0] == doctest::Approx(-2.0).epsilon(1e-6));
  CHECK(y[0] - y[2] * y[2] * y[2] == doctest::Approx(3.0).epsilon(1e-6));

  Rng rng(14);
  for (int i = 0; i < 25; ++i) {
    const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double grid = dim2_radius_by_grid(x);
    CHECK(std::fabs(dim2_oracle(x).m_hat - grid) <= 1e-3);
  }
}

TEST_CASE("dim2 bisection contracts to the target width") {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const Vec x{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const Dim2Oracle d = dim2_oracle(x);
    CHECK(d.bracket_width <= 0x1.0p-30);
    if (d.bisection_iterations > 0) {
      // Dyadic halving from a unit bracket is exact.
      CHECK(d.bracket_width == std::ldexp(1.0, -d.bisection_iterations));
    }
  }
}

TEST_CASE("heavy_mono profile vector") {
  const Vec at_zero = heavy_mono_sigma(0.0);
  REQUIRE(at_zero.size() == 101);
  CHECK(at_zero[0] == 0.0);
  for (int i = 1; i <= 50; ++i) CHECK(at_zero[i] == 0.0);
  CHECK(at_zero[51] == -10.0 / 51.0);
  CHECK(at_zero[76] == 7.6);

  const Vec at_one = heavy_mono_sigma(1.0);
  CHECK(at_one[1] == 0.0);  // block ramp uses the shifted integer part, zero at 1

  const Vec at_five = heavy_mono_sigma(5.0);
  CHECK(std::fabs(at_five[26]) <= 1e-12);  // 25*sin(pi*5/5)
}

TEST_CASE("heavy_radial phases") {
  const Vec at_zero = heavy_radial_sigma(0.0);
  REQUIRE(at_zero.size() == 100);
  for (double v : at_zero) CHECK(v == 0.0);

  const Vec at_sqrt2 = heavy_radial_sigma(kSqrt2);
  for (int i = 1; i <= 100; ++i) {
    const double expected = 2.0 * kPi * std::log(kSqrt2) / std::log(i + 1.0);
    CHECK(at_sqrt2[i - 1] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("heavy_nonlinear block structure") {
  CHECK(heavy_nonlinear_f(Vec(100, 1.0)) == 4.0);
  CHECK(heavy_nonlinear_f(Vec(100, 0.0)) == 0.0);
  CHECK(heavy_nonlinear_f(Vec(100, 2.0)) == 128.0);
  CHECK(heavy_nonlinear_spread_term(Vec(100, 0.7)) == 0.0);

  Vec y(100, 1.0);
  y[3] = 2.0;  // unbalances block 0 only
  CHECK(heavy_nonlinear_block_product(y, 0) == 2.0);
  CHECK(heavy_nonlinear_block_product(y, 1) == 1.0);
  CHECK(heavy_nonlinear_spread_term(y) > 0.0);
}

TEST_CASE("heavy_dim2 link functions") {
  for (int j = 1; j <= 10; ++j) CHECK(heavy_dim2_g(j, 0.0) == 0.0);
  CHECK(heavy_dim2_g(1, 1.0) == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(heavy_dim2_g(10, 1.0) == 2.0);
  CHECK_THROWS_AS(heavy_dim2_g(0, 1.0), std::domain_error);
  CHECK_THROWS_AS(heavy_dim2_g(11, 1.0), std::domain_error);

  Rng rng(21);
  for (int i = 0; i < 500; ++i) {
    const int j = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
    const double z1 = rng.uniform(-50.0, 50.0);
    const double z2 = z1 + rng.uniform(1e-6, 10.0);
    CHECK(heavy_dim2_g(j, z1) < heavy_dim2_g(j, z2));
  }
}

TEST_CASE("heavy_dim2 inverse link roundtrip") {
  for (int j = 1; j <= 10; ++j) CHECK(heavy_dim2_g_inverse(j, 0.0) == 0.0);
  CHECK(heavy_dim2_g_inverse(1, 1.1) == doctest::Approx(1.0).epsilon(1e-6));

  const double z = heavy_dim2_g_inverse(5, 3.7);
  CHECK(heavy_dim2_g(5, z) == doctest::Approx(3.7).epsilon(1e-6));

  Rng rng(22);
  for (int i = 0; i < 1000; ++i) {
    const int j = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
    const double w = rng.uniform(-100.0, 100.0);
    const double inv = heavy_dim2_g_inverse(j, w);
    CHECK(std::fabs(heavy_dim2_g(j, inv) - w) <= 1e-6);
  }
}

TEST_CASE("heavy_dim2 noise term") {
  CHECK(heavy_dim2_epsilon(Vec(10, 0.0)) == 0.0);
  const double bound = std::pow(1.0 / 5.0 + 1.0 / 7.0 + 1.0 / 11.0 + 1.0 / 13.0, 2);
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    Vec z(10);
    for (auto& c : z) c = rng.uniform(-50.0, 50.0);
    const double v = heavy_dim2_epsilon(z);
    CHECK(v >= 0.0);
    CHECK(v <= bound + 1e-12);
  }
}

TEST_CASE("catalog wiring spot values") {
  const auto mono = make_problem(ProblemId::mono);
  CHECK(mono.phi({0.5, 0.0}).value() == 0.5);

  const auto dim2 = make_problem(ProblemId::dim2);
  REQUIRE(dim2.known_optimum.has_value());
  const auto d = dim2.oracle({0.0, 0.0});
  CHECK(d.is_feasible());
  CHECK(d.value() == 0.0);

  // The all-ones profile is the x = 4 fiber point; the point itself sits on
  // the noise pole, so the oracle reports that fiber as infeasible.
  const auto heavy_nonlinear = make_problem(ProblemId::heavy_nonlinear);
  CHECK(heavy_nonlinear_f(Vec(100, 1.0)) == 4.0);
  CHECK(!heavy_nonlinear.oracle({4.0}).is_feasible());
  const auto near4 = heavy_nonlinear.oracle({3.9999999});
  REQUIRE(near4.is_feasible());
  for (double v : near4.point()) CHECK(v == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("reformulated value equals the blackbox noise term") {
  // For the six analytic-oracle problems the fiber minimum is exactly the
  // noise component at the index, to the last bit.
  Rng rng(31);
  const auto check_identity = [&](ProblemId id, auto epsilon_at) {
    CAPTURE(to_string(id));
    const auto p = make_problem(id);
    for (int i = 0; i < 400; ++i) {
      Vec x(p.dim_index);
      for (std::size_t c = 0; c < x.size(); ++c) {
        x[c] = rng.uniform(p.index_box.lo[c], p.index_box.hi[c]);
      }
      const OracleResult r = p.oracle(x);
      if (!r.is_feasible()) continue;
      CHECK(r.value() == epsilon_at(x));
    }
  };
  check_identity(ProblemId::mono, [](const Vec& x) { return mono_epsilon(x[0]); });
  check_identity(ProblemId::radial, [](const Vec& x) { return radial_epsilon(x[0]); });
  check_identity(ProblemId::nonlinear, [](const Vec& x) { return nonlinear_epsilon(x[0]); });
  check_identity(ProblemId::heavy_mono, [](const Vec& x) { return mono_epsilon(x[0]); });
  check_identity(ProblemId::heavy_radial, [](const Vec& x) { return radial_epsilon(x[0]); });
  check_identity(ProblemId::heavy_nonlinear, [](const Vec& x) { return nonlinear_epsilon(x[0]); });

  // Bisection-backed problems carry the fiber norm on top of the noise term.
  const auto dim2 = make_problem(ProblemId::dim2);
  for (int i = 0; i < 100; ++i) {
    const Vec x{rng.uniform(-10.0, 10.0), rng.uniform(-10.0, 10.0)};
    const OracleResult r = dim2.oracle(x);
    REQUIRE(r.is_feasible());
    CHECK(r.value() == dim2_epsilon(x) + dim2_oracle(x).m_hat);
  }
  const auto heavy_dim2 = make_problem(ProblemId::heavy_dim2);
  const BisectionSpec tight{0x1.0p-48, 100000};
  for (int i = 0; i < 50; ++i) {
    Vec x(10);
    for (auto& c : x) c = rng.uniform(-50.0, 50.0);
    const OracleResult r = heavy_dim2.oracle(x);
    REQUIRE(r.is_feasible());
    double sum = 0.0;
    for (int j = 1; j <= 10; ++j) sum += std::fabs(heavy_dim2_g_inverse(j, x[j - 1], tight));
    CHECK(r.value() == heavy_dim2_epsilon(x) + sum);
  }
}

TEST_CASE("fiber minimality for the single-parameter fibers") {
  Rng rng(41);

  const auto mono = make_problem(ProblemId::mono);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(-30.0, 30.0);
    const double fiber_min = mono.oracle({x}).value();
    for (int t = 0; t < 1000; ++t) {
      const double y2 = rng.uniform(-70.0, 70.0);
      CHECK(fiber_min <= mono.phi({x, y2}).value() + 1e-9);
    }
  }

  const auto radial = make_problem(ProblemId::radial);
  for (int i = 0; i < 100; ++i) {
    const double x = rng.uniform(0.0, 30.0);
    const double fiber_min = radial.oracle({x}).value();
    for (int t = 0; t < 1000; ++t) {
      const double theta = rng.uniform(0.0, 2.0 * kPi);
      CHECK(fiber_min <= radial.phi({x, theta}).value() + 1e-9);
    }
  }

  const auto dim2 = make_problem(ProblemId::dim2);
  for (int i = 0; i < 100; ++i) {
    const Vec x{rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)};
    const double fiber_min = dim2.oracle(x).value();
    for (int t = 0; t < 1000; ++t) {
      const Vec y = dim2_fiber_point(x, rng.uniform(-5.0, 5.0));
      CHECK(fiber_min <= dim2.phi(y).value() + 1e-9);
    }
  }

  // heavy_dim2, per block: perturb one block's nine free coordinates and
  // re-solve the forced tenth at matching bisection accuracy. Indices stay
  // moderate so the exp-sine noise term is well conditioned under the
  // residual fiber defect.
  const auto heavy = make_problem(ProblemId::heavy_dim2);
  const BisectionSpec tight{0x1.0p-48, 100000};
  for (int i = 0; i < 20; ++i) {
    Vec x(10);
    for (auto& c : x) c = rng.uniform(-3.0, 3.0);
    const OracleResult base = heavy.oracle(x);
    REQUIRE(base.is_feasible());
    for (int t = 0; t < 200; ++t) {
      Vec y = base.point();
      const int j = 1 + static_cast<int>(rng.uniform(0.0, 10.0));
      double sum9 = 0.0;
      for (int c = 10 * (j - 1); c < 10 * (j - 1) + 9; ++c) {
        y[c] = rng.uniform(-2.0, 2.0);
        sum9 += y[c];
      }
      y[10 * j - 1] = heavy_dim2_g_inverse(j, x[j - 1] + sum9, tight);
      CHECK(base.value() <= heavy.phi(y).value() + 1e-9);
    }
  }
}

TEST_CASE("known optima evaluate to their stated values") {
  // Exactly representable optima hit zero on the nose.
  for (ProblemId id : {ProblemId::mono, ProblemId::dim2, ProblemId::heavy_mono,
                       ProblemId::heavy_dim2}) {
    CAPTURE(to_string(id));
    const auto p = make_problem(id);
    REQUIRE(p.known_optimum.has_value());
    CHECK(p.known_optimum->attained);
    CHECK(p.phi(p.known_optimum->y).value() == p.known_optimum->value);
  }
  // sqrt(2) is not representable; |x*x - 2| bottoms out around 4.4e-16.
  for (ProblemId id : {ProblemId::radial, ProblemId::heavy_radial}) {
    CAPTURE(to_string(id));
    const auto p = make_problem(id);
    REQUIRE(p.known_optimum.has_value());
    CHECK(p.known_optimum->attained);
    CHECK(p.phi(p.known_optimum->y).value() <= 3e-8);
  }
  // Generalized solutions: the limit value is 0 but the point itself sits on
  // the noise pole.
  for (ProblemId id : {ProblemId::nonlinear, ProblemId::heavy_nonlinear}) {
    CAPTURE(to_string(id));
    const auto p = make_problem(id);
    REQUIRE(p.known_optimum.has_value());
    CHECK(!p.known_optimum->attained);
    CHECK(p.phi(p.known_optimum->y).is_plus_infinity());
  }
}
