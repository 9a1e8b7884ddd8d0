#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace partidfo {

// A real number extended with +inf/-inf. NaN is rejected at construction:
// objective code that produces NaN is a bug, not an infeasibility marker.
class ExtendedReal {
 public:
  ExtendedReal() = default;

  ExtendedReal(double v) : v_(v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) {
      throw std::domain_error("ExtendedReal: NaN is not a valid objective value");
    }
  }

  static ExtendedReal infinity() { return ExtendedReal(std::numeric_limits<double>::infinity()); }
  static ExtendedReal neg_infinity() { return ExtendedReal(-std::numeric_limits<double>::infinity()); }

  double value() const { return v_; }
  bool is_finite() const { return std::isfinite(v_); }
  bool is_plus_infinity() const { return std::isinf(v_) && v_ > 0; }
  bool is_minus_infinity() const { return std::isinf(v_) && v_ < 0; }

  friend bool operator==(ExtendedReal a, ExtendedReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtendedReal a, ExtendedReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtendedReal a, ExtendedReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtendedReal a, ExtendedReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtendedReal a, ExtendedReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtendedReal a, ExtendedReal b) { return a.v_ >= b.v_; }

 private:
  double v_ = 0.0;
};

}  // namespace partidfo
