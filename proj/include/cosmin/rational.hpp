#pragma once

#include <cstdint>
#include <numeric>

#include "cosmin/errors.hpp"

namespace cosmin {

// Exact rational value. Polynomial constant terms stay exact so that
// autocorrelation counts never drift through floating point; conversion to
// double happens once, at evaluation time.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long value) : num_(value) {}  // NOLINT: implicit by design
  Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  bool is_integer() const { return den_ == 1; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

 private:
  void normalize() {
    if (den_ == 0) throw InvalidInput("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  long long num_ = 0;
  long long den_ = 1;
};

}  // namespace cosmin
