#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "cosmin/cosine_poly.hpp"
#include "cosmin/errors.hpp"
#include "cosmin/exponent_set.hpp"

namespace cosmin {

inline constexpr double kPi = std::numbers::pi_v<double>;

// Result of a certified global minimization over one period. `value` is an
// attained function value, so it upper-bounds the true minimum; the true
// minimum is guaranteed to lie in [value - error_radius, value].
struct MinResult {
  double theta = 0.0;
  double value = 0.0;
  double error_radius = 0.0;
  long long grid_size = 0;
  bool refined = false;
};

struct GlobalMinOptions {
  long long grid_factor = 64;         // samples per period of the top harmonic
  long long min_samples = 256;
  long long max_samples = 1LL << 26;  // doubling cap
};

namespace detail {

constexpr long long kResync = 1024;  // phasor recurrence re-anchoring interval

// SIMD carrier for the sampling kernel. The vector extension compiles to
// plain SIMD on gcc and clang and splits automatically where the target
// lacks 256-bit registers.
typedef double Vec4d __attribute__((vector_size(4 * sizeof(double))));

// Dense-evaluation form of a CosinePoly plus the coefficient sums the
// certification bound needs: s_k = sum |c_m| m^k.
struct FlatPoly {
  double c0 = 0.0;
  std::vector<double> coeff;
  std::vector<double> harm;
  long long m_max = 0;
  double s0_abs = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;

  explicit FlatPoly(const CosinePoly& p) {
    c0 = p.constant().to_double();
    s0_abs = std::abs(c0);
    coeff.reserve(p.terms().size());
    harm.reserve(p.terms().size());
    for (const auto& [m, c] : p.terms()) {
      const double dm = static_cast<double>(m);
      const double dc = static_cast<double>(c);
      coeff.push_back(dc);
      harm.push_back(dm);
      m_max = m;
      s0_abs += std::abs(dc);
      s1 += std::abs(dc) * dm;
      s2 += std::abs(dc) * dm * dm;
    }
  }

  double eval(double theta) const {
    double acc = c0;
    for (std::size_t t = 0; t < coeff.size(); ++t) {
      double c, s;
      corrected_cos_sin(harm[t], theta, c, s);
      acc += coeff[t] * c;
    }
    return acc;
  }

  EvalDerivatives derivatives(double theta) const {
    double f = c0, f1 = 0.0, f2 = 0.0;
    for (std::size_t t = 0; t < coeff.size(); ++t) {
      double c, s;
      corrected_cos_sin(harm[t], theta, c, s);
      f += coeff[t] * c;
      f1 -= coeff[t] * harm[t] * s;
      f2 -= coeff[t] * harm[t] * harm[t] * c;
    }
    return {f, f1, f2};
  }
};

struct StageScan {
  double grid_min = std::numeric_limits<double>::infinity();
  long long grid_argmin = 0;
  std::vector<long long> brackets;  // interior local-minimum sample indices
};

// Equispaced scan of f over [0, pi] at theta_i = i*step, i = 0..n_intervals.
// Works in kResync-sample chunks: per chunk, each term sweeps eight phasor
// lanes (two vector registers, rotating by 8*step) across an accumulator
// buffer, and a scalar pass then scans the finished chunk for the grid
// minimum and local-minimum brackets. Phasors re-anchor to an exact
// evaluation at each chunk boundary so the accumulated rotation drift stays
// below the slack folded into the certified radius.
inline StageScan sample_stage(const FlatPoly& fp, long long n_intervals, double step) {
  constexpr long long kLanes = 8;  // two Vec4d chains per term hide rotation latency
  static_assert(kResync % kLanes == 0);
  const std::size_t tc = fp.coeff.size();
  std::vector<double> fbuf(static_cast<std::size_t>(kResync));

  StageScan out;
  double prev2 = 0.0, prev1 = 0.0;
  const auto consume = [&](double f, long long idx) {
    if (f < out.grid_min) {
      out.grid_min = f;
      out.grid_argmin = idx;
    }
    if (idx >= 2 && ((prev1 <= prev2 && prev1 < f) || (prev1 < prev2 && prev1 <= f))) {
      out.brackets.push_back(idx - 1);
    }
    prev2 = prev1;
    prev1 = f;
  };

  double* __restrict f = fbuf.data();
  long long i = 0;
  while (i <= n_intervals) {
    const long long block_end = std::min(i + kResync, n_intervals + 1);
    const long long len = block_end - i;
    const long long vec_len = len - len % kLanes;
    for (long long j = 0; j < vec_len; ++j) f[j] = fp.c0;
    for (std::size_t t = 0; t < tc; ++t) {
      double rl[kLanes], ml[kLanes], twr, twi;
      for (long long l = 0; l < kLanes; ++l) {
        corrected_cos_sin(fp.harm[t], step * static_cast<double>(i + l), rl[l], ml[l]);
        rl[l] *= fp.coeff[t];
        ml[l] *= fp.coeff[t];
      }
      corrected_cos_sin(fp.harm[t], static_cast<double>(kLanes) * step, twr, twi);
      Vec4d ra, rb, ma, mb;
      std::memcpy(&ra, rl, sizeof ra);
      std::memcpy(&rb, rl + 4, sizeof rb);
      std::memcpy(&ma, ml, sizeof ma);
      std::memcpy(&mb, ml + 4, sizeof mb);
      const Vec4d vwr = {twr, twr, twr, twr};
      const Vec4d vwi = {twi, twi, twi, twi};
      for (long long j = 0; j < vec_len; j += kLanes) {
        Vec4d fa, fb;
        std::memcpy(&fa, f + j, sizeof fa);
        std::memcpy(&fb, f + j + 4, sizeof fb);
        fa += ra;
        fb += rb;
        std::memcpy(f + j, &fa, sizeof fa);
        std::memcpy(f + j + 4, &fb, sizeof fb);
        const Vec4d na = ra * vwr - ma * vwi;
        const Vec4d nb = rb * vwr - mb * vwi;
        ma = ra * vwi + ma * vwr;
        mb = rb * vwi + mb * vwr;
        ra = na;
        rb = nb;
      }
    }
    for (long long j = 0; j < vec_len; ++j) consume(f[j], i + j);
    i += vec_len;
    for (; i < block_end; ++i) {  // sub-lane leftover of the final chunk
      consume(fp.eval(step * static_cast<double>(i)), i);
    }
  }
  return out;
}

struct Candidate {
  double theta;
  double value;
};

// Newton on f' from the bracketed grid minimum, falling back to bisection
// whenever the step leaves the bracket or the curvature is unusable. The
// returned value is always an attained evaluation, never an extrapolation.
inline Candidate refine_bracket(const FlatPoly& fp, double lo, double x0, double hi,
                                int max_iter = 60) {
  double a = lo, b = hi, x = x0;
  EvalDerivatives d = fp.derivatives(x);
  double best_v = d.value, best_t = x;
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(d.first) < 1e-13) break;
    if (d.first > 0.0) {
      b = x;
    } else {
      a = x;
    }
    double xn;
    if (d.second > 0.0) {
      xn = x - d.first / d.second;
      if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    } else {
      xn = 0.5 * (a + b);
    }
    const bool converged = std::abs(xn - x) < 1e-15;
    x = xn;
    d = fp.derivatives(x);
    if (d.value < best_v) {
      best_v = d.value;
      best_t = x;
    }
    if (converged) break;
  }
  return {best_t, best_v};
}

// Doubling loop shared by global_min and min_modulus. Certification: the true
// minimum is attained at a critical point theta*, and the nearest sample lies
// within h/2 of it, so grid_min <= f(theta*) + s2 h^2/8. Refinement can only
// lower the reported value, which tightens the radius by the same amount.
inline MinResult global_min_stages(const FlatPoly& fp, double tol, long long n_start,
                                   long long cap) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const double slack = 8.0 * eps * (static_cast<double>(kResync) + 8.0) * fp.s0_abs;
  if (slack >= tol) {
    throw ToleranceUnreachable("tolerance " + std::to_string(tol) +
                               " is below the evaluation noise floor");
  }
  // Grids whose a-priori bound s2 h^2/8 exceeds tol cannot certify, and their
  // samples would be discarded, so enter the refinement loop at the first
  // grid the bound admits (capped; the shrink term can still rescue a capped
  // run).
  long long n = n_start;
  {
    const double h_need = std::sqrt(8.0 * (tol - slack) / fp.s2);
    const double n_need = kPi / h_need;
    if (n_need > static_cast<double>(n)) {
      n = n_need >= static_cast<double>(cap) ? cap : static_cast<long long>(n_need) + 1;
    }
  }
  for (;; n *= 2) {
    if (n > cap) {
      throw ToleranceUnreachable("sample cap " + std::to_string(cap) +
                                 " reached with certified radius above tolerance " +
                                 std::to_string(tol));
    }
    const double h = kPi / static_cast<double>(n);
    const double base = fp.s2 * h * h / 8.0 + slack;
    // Early stages cannot certify regardless of what refinement finds; skip
    // the Newton polishing there.
    const bool refine = base <= 8.0 * tol;
    const StageScan scan = sample_stage(fp, n, h);

    std::vector<Candidate> cands;
    cands.reserve(scan.brackets.size() + 3);
    if (refine) {
      for (long long idx : scan.brackets) {
        const double c = h * static_cast<double>(idx);
        cands.push_back(refine_bracket(fp, c - h, c, c + h));
      }
    }
    cands.push_back({0.0, fp.eval(0.0)});
    cands.push_back({kPi, fp.eval(kPi)});
    cands.push_back({h * static_cast<double>(scan.grid_argmin), scan.grid_min});

    double value = scan.grid_min;
    for (const Candidate& c : cands) value = std::min(value, c.value);
    const double shrink = scan.grid_min - value;
    const double radius = std::max(base - shrink, 0.0);
    if (radius <= tol) {
      const double tie_eps = 1e-12 * (1.0 + fp.s0_abs);
      double theta = kPi;
      for (const Candidate& c : cands) {
        if (c.value <= value + tie_eps) theta = std::min(theta, c.theta);
      }
      theta = std::clamp(theta, 0.0, kPi);
      return {theta, value, radius, n, refine};
    }
  }
}

}  // namespace detail

// Certified global minimum of a cosine polynomial over one period. Evenness
// restricts the search to [0, pi]. Samples n = max(min_samples,
// grid_factor * m_max) equispaced points, Newton-refines every bracketed local
// minimum, and reports radius s2 h^2/8 shrunk by the refinement gain; doubles
// n until the radius meets tol.
inline MinResult global_min(const CosinePoly& p, double tol,
                            const GlobalMinOptions& opt = {}) {
  if (p.terms().empty()) throw InvalidInput("global_min requires at least one cosine term");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const detail::FlatPoly fp(p);
  const long long n0 = std::max(opt.min_samples, opt.grid_factor * fp.m_max);
  return detail::global_min_stages(fp, tol, n0, opt.max_samples);
}

// Minimum modulus of a Newman polynomial on the unit circle, through the
// autocorrelation identity |F(e^{i theta})|^2 = n + 2 sum c_m cos(m theta).
// The inner tolerance adapts so the sqrt image of the certified bracket meets
// tol; certified-negative squared values clamp to zero.
inline MinResult min_modulus(const ExponentSet& s, double tol,
                             const GlobalMinOptions& opt = {}) {
  if (s.kind() != SetKind::newman) throw InvalidInput("min_modulus requires a newman set");
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const CosinePoly ac = autocorrelate(s);
  if (ac.terms().empty()) {
    return {0.0, 1.0, 0.0, 0, false};  // single exponent: |z^a| = 1 everywhere
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  const detail::FlatPoly fp(ac);
  // Below this the squared minimum is indistinguishable from an exact zero in
  // doubles; the bracket [0, value] is still fully certified.
  const double zero_floor =
      std::max(tol, 8.0 * std::sqrt(eps) * static_cast<double>(s.size()));
  long long n = std::max(opt.min_samples, opt.grid_factor * fp.m_max);
  double tol_v = std::max(tol, 1e-4);
  for (;;) {
    const MinResult r = detail::global_min_stages(fp, tol_v, n, opt.max_samples);
    n = r.grid_size;
    if (r.value <= 0.0) return {r.theta, 0.0, 0.0, r.grid_size, r.refined};
    const double value = std::sqrt(r.value);
    const double lower = std::sqrt(std::max(0.0, r.value - r.error_radius));
    const double width = value - lower;
    if (width <= tol) return {r.theta, value, width, r.grid_size, r.refined};
    if (value <= zero_floor) return {r.theta, value, value, r.grid_size, r.refined};
    tol_v = std::min(tol_v * 0.5, 0.9 * tol * (value + lower));
  }
}

// Closed-form reference for the length-3 minimum: minimizing
// 4c^3 + 2c^2 - 2c - 1 over c = cos theta in [-1, 1] gives (-17 - 7 sqrt 7)/27
// at c = (-1 + sqrt 7)/6. Checks the stationarity residual before returning.
inline double cubic_min_reference() {
  const double r7 = std::sqrt(7.0);
  const double c = (-1.0 + r7) / 6.0;
  const double residual = std::abs(12.0 * c * c + 4.0 * c - 2.0);
  if (residual > 1e-12) {
    throw std::logic_error("stationary-point residual " + std::to_string(residual));
  }
  return -(17.0 + 7.0 * r7) / 27.0;
}

}  // namespace cosmin
