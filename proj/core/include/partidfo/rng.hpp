#pragma once

#include <cstdint>
#include <random>

#include "partidfo/vec.hpp"

namespace partidfo {

// splitmix64 finalizer, used to derive independent per-run seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Random stream with hand-rolled uniform/normal transforms so that identical
// seeds give bit-identical sequences on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Standard normal via Box-Muller; the pair's second value is cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    cached_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
  }

  Vec normal_vector(std::size_t n) {
    Vec v(n);
    for (auto& x : v) x = normal();
    return v;
  }

  // Uniform direction on the unit sphere.
  Vec sphere_direction(std::size_t n) {
    for (;;) {
      Vec v = normal_vector(n);
      const double norm = norm2(v);
      if (norm > 1e-300) {
        for (auto& x : v) x /= norm;
        return v;
      }
    }
  }

  // Uniform point in the closed unit ball: sphere direction scaled by U^{1/n}.
  Vec ball_point(std::size_t n) {
    Vec v = sphere_direction(n);
    const double r = std::pow(uniform01(), 1.0 / static_cast<double>(n));
    for (auto& x : v) x *= r;
    return v;
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace partidfo
