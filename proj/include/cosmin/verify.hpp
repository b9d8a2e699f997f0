#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "cosmin/cosine_poly.hpp"
#include "cosmin/errors.hpp"
#include "cosmin/minimize.hpp"

namespace cosmin {

struct BezoutPair {
  long long s = 0;
  long long t = 0;
};

struct ExtGcdResult {
  long long g = 0;
  BezoutPair pair;
};

// g = gcd(x, y) together with s, t satisfying s*x + t*y = g exactly.
inline ExtGcdResult extended_gcd(long long x, long long y) {
  if (x < 1 || y < 1) throw InvalidInput("extended_gcd requires positive inputs");
  long long r0 = x, r1 = y;
  long long s0 = 1, s1 = 0;
  long long t0 = 0, t1 = 1;
  while (r1 != 0) {
    const long long q = r0 / r1;
    r0 -= q * r1;
    std::swap(r0, r1);
    s0 -= q * s1;
    std::swap(s0, s1);
    t0 -= q * t1;
    std::swap(t0, t1);
  }
  return {r0, {s0, t0}};
}

enum class WitnessCase {
  pair_both_odd,
  pair_odd_even,
  pair_even_odd,
  triple_sum,      // a3 = a1 + a2
  triple_doubled,  // a3 = 2 a1 or a3 = 2 a2
  triple_generic,
};

inline const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::pair_both_odd: return "pair_both_odd";
    case WitnessCase::pair_odd_even: return "pair_odd_even";
    case WitnessCase::pair_even_odd: return "pair_even_odd";
    case WitnessCase::triple_sum: return "triple_sum";
    case WitnessCase::triple_doubled: return "triple_doubled";
    case WitnessCase::triple_generic: return "triple_generic";
  }
  return "unknown";
}

// An explicit angle certifying that the polynomial drops to `value`, which
// must not exceed `bound` (up to 1e-12 of rounding in the evaluation).
struct Witness {
  WitnessCase tag;
  double theta;
  double value;
  double bound;
};

inline constexpr double kPairDropBound = -1.5;
inline double triple_drop_bound() { return cubic_min_reference(); }  // -(17+7*sqrt7)/27

namespace detail {

inline double pair_value(long long a1, long long a2, double theta) {
  double c1, s1u, c2, s2u;
  corrected_cos_sin(static_cast<double>(a1), theta, c1, s1u);
  corrected_cos_sin(static_cast<double>(a2), theta, c2, s2u);
  return c1 + c2;
}

inline double triple_value(long long a1, long long a2, long long a3, double theta) {
  double acc = 0.0;
  for (long long a : {a1, a2, a3}) {
    double c, s;
    corrected_cos_sin(static_cast<double>(a), theta, c, s);
    acc += c;
  }
  return acc;
}

}  // namespace detail

// Constructs theta with cos(a1 theta) + cos(a2 theta) <= -3/2 for coprime
// a1 < a2, a2 >= 3. The witness angle is always an odd multiple of pi/a2, so
// the a2 term contributes exactly -1; the Bezout construction places the a1
// term at cos((a2-1) pi / a2) <= -1/2. The multiple of pi/a2 is reduced
// mod 2*a2 in integer arithmetic before any floating point touches it.
inline Witness pair_drop_witness(long long a1, long long a2) {
  if (!(a1 >= 1 && a1 < a2)) throw InvalidInput("need 1 <= a1 < a2");
  if (a2 < 3) {
    throw InvalidInput("a2 must be >= 3; the -3/2 bound fails for (1,2)");
  }
  if (std::gcd(a1, a2) != 1) throw InvalidInput("a1 and a2 must be coprime");

  const bool odd1 = (a1 % 2) != 0;
  const bool odd2 = (a2 % 2) != 0;
  WitnessCase tag;
  long long k;  // witness angle = k * pi / a2 with k odd, 0 <= k < 2 a2
  if (odd1 && odd2) {
    tag = WitnessCase::pair_both_odd;
    k = a2;  // theta = pi
  } else if (odd1) {
    // a1 odd, a2 even: a1 s + 2 a2 t = 1 has s odd; theta = (a2-1) s pi / a2.
    tag = WitnessCase::pair_odd_even;
    const auto eg = extended_gcd(a1, 2 * a2);
    const long long mod = 2 * a2;
    const long long s = ((eg.pair.s % mod) + mod) % mod;
    k = ((a2 - 1) % mod) * s % mod;
  } else {
    // a1 even, a2 odd: a1 s + a2 t = -1, then whichever of s, s + a2 is odd.
    tag = WitnessCase::pair_even_odd;
    const auto eg = extended_gcd(a1, a2);
    const long long mod = 2 * a2;
    long long s = ((-eg.pair.s) % mod + mod) % mod;
    if (s % 2 == 0) s = (s + a2) % mod;
    k = s;
  }
  if (k % 2 == 0) throw WitnessNotFound("constructed grid index is even");
  const double theta =
      (k == a2) ? kPi : static_cast<double>(k) * kPi / static_cast<double>(a2);
  const double value = detail::pair_value(a1, a2, theta);
  if (value > kPairDropBound + 1e-12) {
    throw WitnessNotFound("pair witness value " + std::to_string(value) +
                          " above bound for (" + std::to_string(a1) + "," +
                          std::to_string(a2) + ")");
  }
  return {tag, theta, value, kPairDropBound};
}

enum class TripleCase { sum, doubled, generic };

inline const char* to_string(TripleCase c) {
  switch (c) {
    case TripleCase::sum: return "sum";
    case TripleCase::doubled: return "doubled";
    case TripleCase::generic: return "generic";
  }
  return "unknown";
}

// sum if a3 = a1 + a2, doubled if a3 = 2 a1 or 2 a2, generic otherwise. The
// cases cannot overlap: a3 = a1 + a2 = 2 a2 forces a1 = a2 and
// a3 = a1 + a2 = 2 a1 forces a2 = a1, both excluded by strict ordering.
inline TripleCase classify_triple(long long a1, long long a2, long long a3) {
  if (!(1 <= a1 && a1 < a2 && a2 < a3)) {
    throw InvalidInput("triple must be strictly increasing and positive");
  }
  if (std::gcd(std::gcd(a1, a2), a3) != 1) {
    throw InvalidInput("triple must have gcd 1");
  }
  if (a3 == a1 + a2) return TripleCase::sum;
  if (a3 == 2 * a1 || a3 == 2 * a2) return TripleCase::doubled;
  return TripleCase::generic;
}

// Constructs theta with cos(a1 t) + cos(a2 t) + cos(a3 t) below the length-3
// optimum -(17+7*sqrt7)/27.
//
//  - sum triples ride the squared-modulus identity: at the minimum-modulus
//    angle of 1 + z^{a1} + z^{a3}, f = (|F|^2 - 3)/2 <= the optimum.
//  - doubled triples with a = 2 are the two fixed sporadic sets; for a > 2,
//    scanning theta_j = (arccos(-1/4) + 2 pi j)/a keeps the a and 2a terms
//    summing to -9/8 while some j has cos(b theta_j) <= -1/2, giving -13/8.
//  - generic triples scan theta_j = (pi + 2 pi j)/a3 where the a3 term is
//    exactly -1 and some j has the remaining pair <= -1/2, giving -3/2.
inline Witness triple_drop_witness(long long a1, long long a2, long long a3) {
  const TripleCase cls = classify_triple(a1, a2, a3);
  const double opt_bound = triple_drop_bound();

  if (cls == TripleCase::sum) {
    const ExponentSet newman(SetKind::newman, {0, a1, a3});
    const CosinePoly ac = autocorrelate(newman);
    const detail::FlatPoly fp(ac);
    const GlobalMinOptions opt;
    const long long n0 = std::max(opt.min_samples, opt.grid_factor * fp.m_max);
    MinResult r = detail::global_min_stages(fp, 1e-6, n0, opt.max_samples);
    double value = detail::triple_value(a1, a2, a3, r.theta);
    if (value > opt_bound + 1e-9) {
      // Near-tied basins at the coarse tolerance; resolve before giving up.
      r = detail::global_min_stages(fp, 1e-10, r.grid_size, opt.max_samples);
      value = detail::triple_value(a1, a2, a3, r.theta);
    }
    if (value > opt_bound + 1e-9) {
      throw WitnessNotFound("sum-triple witness failed for " + std::to_string(a1) + "," +
                            std::to_string(a2) + "," + std::to_string(a3));
    }
    return {WitnessCase::triple_sum, r.theta, value, opt_bound};
  }

  if (cls == TripleCase::doubled) {
    const long long a = (a3 == 2 * a1) ? a1 : a2;
    const long long b = (a3 == 2 * a1) ? a2 : a1;
    if (a == 2) {
      // Only {1,2,4} and {2,3,4} reach here; both have a fixed angle.
      const double theta = (b == 1) ? 2.0 * kPi / 3.0 : kPi / 3.0;
      const double value = detail::triple_value(a1, a2, a3, theta);
      if (value > kPairDropBound + 1e-12) {
        throw WitnessNotFound("doubled-triple witness failed for a=2");
      }
      return {WitnessCase::triple_doubled, theta, value, kPairDropBound};
    }
    const double xi = std::acos(-0.25);
    long long best_j = -1;
    double best_y = 2.0;
    for (long long j = 0; j < a; ++j) {
      const double theta = (xi + 2.0 * kPi * static_cast<double>(j)) / static_cast<double>(a);
      double yb, sb;
      detail::corrected_cos_sin(static_cast<double>(b), theta, yb, sb);
      if (yb <= -0.5 + 5e-13) {
        best_j = j;
        break;
      }
      if (yb < best_y) {
        best_y = yb;
        best_j = j;
      }
    }
    const double theta =
        (xi + 2.0 * kPi * static_cast<double>(best_j)) / static_cast<double>(a);
    const double value = detail::triple_value(a1, a2, a3, theta);
    if (value > -1.625 + 1e-12) {
      throw WitnessNotFound("doubled-triple scan found no qualifying angle for " +
                            std::to_string(a1) + "," + std::to_string(a2) + "," +
                            std::to_string(a3));
    }
    return {WitnessCase::triple_doubled, theta, value, -1.625};
  }

  long long best_j = -1;
  double best_y = 3.0;
  for (long long j = 0; j < a3; ++j) {
    const double theta =
        (kPi + 2.0 * kPi * static_cast<double>(j)) / static_cast<double>(a3);
    const double y = detail::pair_value(a1, a2, theta);
    if (y <= -0.5 + 5e-13) {
      best_j = j;
      break;
    }
    if (y < best_y) {
      best_y = y;
      best_j = j;
    }
  }
  const double theta =
      (kPi + 2.0 * kPi * static_cast<double>(best_j)) / static_cast<double>(a3);
  const double value = detail::triple_value(a1, a2, a3, theta);
  if (value > kPairDropBound + 1e-12) {
    throw WitnessNotFound("generic-triple scan found no qualifying angle for " +
                          std::to_string(a1) + "," + std::to_string(a2) + "," +
                          std::to_string(a3));
  }
  return {WitnessCase::triple_generic, theta, value, kPairDropBound};
}

// sum_{j=0}^{k-1} cos(xi + 2 pi m j / k); zero whenever k does not divide m,
// and k cos(xi) when it does.
inline double cosine_sum_residual(double xi, long long k, long long m) {
  if (k < 2) throw InvalidInput("k must be >= 2");
  const long long mm = ((m % k) + k) % k;
  double acc = 0.0;
  for (long long j = 0; j < k; ++j) {
    // 2 pi m j / k with the rational part reduced mod k in exact integers.
    const long long mj = (mm * j) % k;
    const double frac = 2.0 * kPi * static_cast<double>(mj) / static_cast<double>(k);
    acc += std::cos(xi + frac);
  }
  return acc;
}

enum class DropVerdict { holds, not_applicable };

// Zero-sum sequences bounded above by M whose mean square reaches K*M must
// contain an element <= -K. Returns not_applicable when the mean-square
// condition fails; throws std::logic_error if the conclusion itself fails,
// which would disprove the underlying inequality.
inline DropVerdict variance_drop_check(std::span<const double> y, double m_bound, double k) {
  if (y.empty()) throw PreconditionViolated("empty sequence");
  if (!(m_bound > 0.0)) throw PreconditionViolated("M must be positive");
  if (!(k > 0.0)) throw PreconditionViolated("K must be positive");
  const double n = static_cast<double>(y.size());
  double sum = 0.0, sum_sq = 0.0, min_y = y[0];
  bool any_below_m = false;
  for (double v : y) {
    sum += v;
    sum_sq += v * v;
    min_y = std::min(min_y, v);
    if (v > m_bound + 1e-12) {
      throw PreconditionViolated("element " + std::to_string(v) + " exceeds M");
    }
    if (v < m_bound - 1e-12) any_below_m = true;
  }
  if (std::abs(sum) > 1e-9 * n) {
    throw PreconditionViolated("sequence sum " + std::to_string(sum) + " is not zero");
  }
  if (!any_below_m) throw PreconditionViolated("all elements equal M");
  if (sum_sq / n < k * m_bound) return DropVerdict::not_applicable;
  if (min_y > -k + 1e-12) {
    throw std::logic_error("variance bound violated: min " + std::to_string(min_y) +
                           " with K " + std::to_string(k));
  }
  return DropVerdict::holds;
}

struct GridMoments {
  double mean;
  double mean_square;
};

namespace detail {

inline GridMoments offset_grid_moments(long long count, long long harmonic, double offset) {
  double sum = 0.0, sum_sq = 0.0;
  for (long long j = 0; j < count; ++j) {
    const double theta =
        (offset + 2.0 * kPi * static_cast<double>(j)) / static_cast<double>(count);
    double c, s;
    corrected_cos_sin(static_cast<double>(harmonic), theta, c, s);
    sum += c;
    sum_sq += c * c;
  }
  const double n = static_cast<double>(count);
  return {sum / n, sum_sq / n};
}

}  // namespace detail

// Moments of cos(b theta_j) over theta_j = (arccos(-1/4) + 2 pi j)/a. The
// roots-of-unity cancellation gives mean 0 and mean square 1/2 whenever a
// divides neither b nor 2b.
inline GridMoments doubled_triple_grid_moments(long long a, long long b) {
  if (a <= 2) throw InvalidInput("a must exceed 2");
  if (b < 1) throw InvalidInput("b must be positive");
  if (b % a == 0 || (2 * b) % a == 0) {
    throw InvalidInput("a divides b or 2b, excluded by the gcd-1 hypothesis");
  }
  return detail::offset_grid_moments(a, b, std::acos(-0.25));
}

// Moments of cos(a1 theta_j) + cos(a2 theta_j) over theta_j = (pi + 2 pi j)/a3
// for a generic triple: mean 0 and mean square 1.
inline GridMoments generic_triple_grid_moments(long long a1, long long a2, long long a3) {
  if (classify_triple(a1, a2, a3) != TripleCase::generic) {
    throw InvalidInput("triple is not in the generic case");
  }
  double sum = 0.0, sum_sq = 0.0;
  for (long long j = 0; j < a3; ++j) {
    const double theta =
        (kPi + 2.0 * kPi * static_cast<double>(j)) / static_cast<double>(a3);
    const double y = detail::pair_value(a1, a2, theta);
    sum += y;
    sum_sq += y * y;
  }
  const double n = static_cast<double>(a3);
  return {sum / n, sum_sq / n};
}

}  // namespace cosmin
