#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <utility>

#include "cosmin/exponent_set.hpp"
#include "cosmin/rational.hpp"

namespace cosmin {

namespace detail {

// cos and sin of m*x with the product rounding compensated: p = fl(m*x) plus
// the exact fma residual e, then a first-order rotation by e. Keeps each term
// within a few ulp even for large harmonics, where cos(fl(m*x)) alone loses
// ~m*|x|*eps.
inline void corrected_cos_sin(double m, double x, double& c, double& s) {
  const double p = m * x;
  const double e = std::fma(m, x, -p);
  const double cp = std::cos(p);
  const double sp = std::sin(p);
  c = cp - sp * e;
  s = sp + cp * e;
}

}  // namespace detail

struct EvalDerivatives {
  double value;
  double first;
  double second;
};

// c_0 + sum_m c_m cos(m theta) with integer coefficients, sparse in the
// harmonic m. A plain length-n cosine polynomial has c_0 = 0 and all c_m = 1;
// an autocorrelation polynomial has c_0 = n and even coefficients.
class CosinePoly {
 public:
  CosinePoly(Rational constant, std::map<long long, long long> terms)
      : constant_(constant), terms_(std::move(terms)) {
    for (const auto& [m, c] : terms_) {
      if (m < 1) throw InvalidInput("harmonic must be >= 1, got " + std::to_string(m));
      if (c == 0) throw InvalidInput("zero coefficient stored at harmonic " + std::to_string(m));
    }
  }

  const Rational& constant() const { return constant_; }
  const std::map<long long, long long>& terms() const { return terms_; }
  long long max_harmonic() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

  double eval(double theta) const {
    double acc = constant_.to_double();
    for (const auto& [m, c] : terms_) {
      double cs, sn;
      detail::corrected_cos_sin(static_cast<double>(m), theta, cs, sn);
      acc += static_cast<double>(c) * cs;
    }
    return acc;
  }

  EvalDerivatives derivatives(double theta) const {
    double f = constant_.to_double();
    double f1 = 0.0;
    double f2 = 0.0;
    for (const auto& [m, c] : terms_) {
      const double dm = static_cast<double>(m);
      const double dc = static_cast<double>(c);
      double cs, sn;
      detail::corrected_cos_sin(dm, theta, cs, sn);
      f += dc * cs;
      f1 -= dc * dm * sn;
      f2 -= dc * dm * dm * cs;
    }
    return {f, f1, f2};
  }

  friend bool operator==(const CosinePoly& a, const CosinePoly& b) {
    return a.constant_ == b.constant_ && a.terms_ == b.terms_;
  }

 private:
  Rational constant_;
  std::map<long long, long long> terms_;
};

// cos a_1 theta + ... + cos a_n theta for a cosine exponent set.
inline CosinePoly from_exponents(const ExponentSet& s) {
  if (s.kind() != SetKind::cosine) {
    throw InvalidInput("from_exponents requires a cosine set");
  }
  std::map<long long, long long> terms;
  for (long long a : s.exponents()) terms[a] = 1;
  return CosinePoly(Rational(0), std::move(terms));
}

// |z^{a_1} + ... + z^{a_n}|^2 on the unit circle expanded as
// n + 2 sum_{j<k} cos((a_k - a_j) theta). Nonnegative everywhere.
inline CosinePoly autocorrelate(const ExponentSet& s) {
  if (s.kind() != SetKind::newman) {
    throw InvalidInput("autocorrelate requires a newman set");
  }
  const auto& e = s.exponents();
  std::map<long long, long long> terms;
  for (std::size_t j = 0; j < e.size(); ++j) {
    for (std::size_t k = j + 1; k < e.size(); ++k) {
      terms[e[k] - e[j]] += 2;
    }
  }
  return CosinePoly(Rational(static_cast<long long>(e.size())), std::move(terms));
}

}  // namespace cosmin
