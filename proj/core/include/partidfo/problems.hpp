#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "partidfo/pof.hpp"
#include "partidfo/vec.hpp"

namespace partidfo {

// The eight catalog problems: four desk-scale composite instances and their
// large-dimensional variants.
enum class ProblemId {
  mono,
  radial,
  nonlinear,
  dim2,
  heavy_mono,
  heavy_radial,
  heavy_nonlinear,
  heavy_dim2,
};

constexpr std::array<ProblemId, 8> kProblemCatalog = {
    ProblemId::mono,         ProblemId::radial,       ProblemId::nonlinear,
    ProblemId::dim2,         ProblemId::heavy_mono,   ProblemId::heavy_radial,
    ProblemId::heavy_nonlinear, ProblemId::heavy_dim2,
};

std::string to_string(ProblemId id);
std::optional<ProblemId> parse_problem_id(std::string_view name);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  static Interval make(double lo, double hi) {
    Interval it;
    if (lo <= hi) {
      it.lo = lo;
      it.hi = hi;
      it.empty = false;
    }
    return it;
  }
};

struct BisectionSpec {
  double tolerance = 0x1.0p-30;  // final bracket width
  int max_bracket_scan = 100000;
};

// Rounds positive reals down to the previous integer and keeps floor on the
// rest: floor(x) for x <= 0, ceil(x) - 1 for x > 0.
double floorceil(double x);

// Residual of theta modulo 2*pi, in [0, 2*pi).
double mod_2pi(double theta);

// mono / heavy_mono blackbox components.
double mono_sigma(double x);
double mono_epsilon(double x);

// radial / heavy_radial blackbox components.
double radial_sigma(double x);
double radial_epsilon(double x);
struct RadialComponents {
  double sigma;
  double epsilon;
};
RadialComponents radial_components(double x);  // throws std::domain_error on x < 0

// nonlinear / heavy_nonlinear.
Vec nonlinear_gamma(double x);     // closed-form fiber minimizer, y1 > 0, y1*y2 = x
double nonlinear_epsilon(double x);  // +inf at x = 4

// dim2: the fiber of index x is {(t, t^3 + x1, cbrt(t - x2)) : t real}; its
// minimal sup-norm radius M(x) is the smallest M >= 0 whose triple interval
// intersection below is nonempty.
double dim2_epsilon(const Vec& x);
Interval dim2_intervals(const Vec& x, double m);
Vec dim2_fiber_point(const Vec& x, double t);

struct Dim2Oracle {
  double m_hat = 0.0;         // bisection estimate of M(x)
  double t_hat = 0.0;         // midpoint of the feasible interval at m_hat
  Vec y_hat;                  // fiber point at t_hat
  double bracket_width = 0.0; // final bisection bracket width
  int bisection_iterations = 0;
};
Dim2Oracle dim2_oracle(const Vec& x, const BisectionSpec& spec = {});

// heavy_mono: 101-component fiber minimizer profile.
Vec heavy_mono_sigma(double x);

// heavy_radial: 100 phase components, log base i+1.
Vec heavy_radial_sigma(double x);

// heavy_nonlinear: block products and their average.
double heavy_nonlinear_block_product(const Vec& y, std::size_t block);
double heavy_nonlinear_f(const Vec& y);
double heavy_nonlinear_spread_term(const Vec& y);  // sum of ln(1 + (ratio - 1)^2) over block pairs

// heavy_dim2: the strictly increasing link functions and their inverses.
double heavy_dim2_g(int j, double z);
double heavy_dim2_g_inverse(int j, double w, const BisectionSpec& spec = {});
double heavy_dim2_epsilon(const Vec& z);
Vec heavy_dim2_f(const Vec& y);

// Fully wired catalog problem: objective, feasibility, index map, oracle,
// boxes, and known optimum metadata.
PartitionedProblem make_problem(ProblemId id);

}  // namespace partidfo
