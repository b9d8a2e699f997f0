#include <catch2/catch.hpp>

#include <cmath>

#include "cosmin/cosine_poly.hpp"
#include "cosmin/exponent_set.hpp"
#include "cosmin/json_io.hpp"
#include "cosmin/minimize.hpp"
#include "cosmin/rng.hpp"
#include "oracles.hpp"

using namespace cosmin;

namespace {
ExponentSet cosine_set(std::vector<long long> e) { return {SetKind::cosine, std::move(e)}; }
ExponentSet newman_set(std::vector<long long> e) { return {SetKind::newman, std::move(e)}; }

double mu3_reference() { return std::sqrt((47.0 - 14.0 * std::sqrt(7.0)) / 27.0); }
}  // namespace

TEST_CASE("pair minimum hits the closed form", "[minimize]") {
  const MinResult r = global_min(from_exponents(cosine_set({1, 2})), 1e-10);
  CHECK(r.value == Approx(-1.125).margin(1e-10));
  CHECK(r.theta == Approx(std::acos(-0.25)).margin(1e-7));
  CHECK(r.error_radius <= 1e-10);
  CHECK(r.refined);
}

TEST_CASE("length-3 minimum hits the closed form", "[minimize]") {
  const MinResult r = global_min(from_exponents(cosine_set({1, 2, 3})), 1e-10);
  CHECK(r.value == Approx(cubic_min_reference()).margin(1e-10));
  CHECK(std::cos(r.theta) == Approx((-1.0 + std::sqrt(7.0)) / 6.0).margin(1e-7));
}

TEST_CASE("cubic reference value and boundary", "[minimize]") {
  const double v = cubic_min_reference();
  CHECK(v == Approx(-1.3155651547204494).margin(1e-12));
  // boundary of the cos-substitution interval is not the minimum
  const auto cubic = [](double c) { return 4.0 * c * c * c + 2.0 * c * c - 2.0 * c - 1.0; };
  CHECK(cubic(-1.0) == Approx(-1.0));
  CHECK(v < cubic(-1.0));
  const double c_star = (-1.0 + std::sqrt(7.0)) / 6.0;
  CHECK(std::abs(12.0 * c_star * c_star + 4.0 * c_star - 2.0) <= 1e-12);
  CHECK(cubic(c_star) == Approx(v).margin(1e-12));
}

TEST_CASE("dense grid oracle agrees on {1,3}", "[minimize]") {
  const CosinePoly p = from_exponents(cosine_set({1, 3}));
  const MinResult r = global_min(p, 1e-10);
  const oracle::GridMin g = oracle::dense_grid_min(p, 10'000'000);
  CHECK(std::abs(r.value - g.value) <= 1e-7);
}

TEST_CASE("certified bracket contains the oracle minimum", "[minimize]") {
  Rng rng(29);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    const auto exps = rng.distinct_sorted(1, 40, n);
    const CosinePoly p = from_exponents(cosine_set(exps));
    const double tol = 1e-8;
    const MinResult r = global_min(p, tol);
    REQUIRE(r.error_radius <= tol);
    const long long points = 1'000'000;
    const oracle::GridMin g = oracle::dense_grid_min(p, points);
    // the oracle grid itself sits at most s2 h^2/8 above the true minimum
    double s2 = 0.0;
    for (const auto& [m, c] : p.terms()) {
      s2 += std::abs(static_cast<double>(c)) * static_cast<double>(m) * static_cast<double>(m);
    }
    const double oracle_gap =
        s2 * (2.0 * kPi / points) * (2.0 * kPi / points) / 8.0 + 1e-12;
    REQUIRE(g.value >= r.value - r.error_radius - 1e-12);
    REQUIRE(g.value <= r.value + oracle_gap);
  }
}

TEST_CASE("plain length-n minima live in [-n, 0]", "[minimize]") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 7));
    const auto exps = rng.distinct_sorted(1, 50, n);
    const MinResult r = global_min(from_exponents(cosine_set(exps)), 1e-8);
    CHECK(r.value >= -static_cast<double>(n) - 1e-9);
    CHECK(r.value <= 0.0 + 1e-9);
  }
}

TEST_CASE("scaling a set leaves the minimum unchanged", "[minimize]") {
  Rng rng(37);
  const double tol = 1e-9;
  for (int trial = 0; trial < 15; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const auto base = rng.distinct_sorted(1, 25, n);
    const long long d = rng.uniform_int(2, 6);
    std::vector<long long> scaled;
    for (long long v : base) scaled.push_back(v * d);
    const MinResult a = global_min(from_exponents(cosine_set(base)), tol);
    const MinResult b = global_min(from_exponents(cosine_set(scaled)), tol);
    CHECK(std::abs(a.value - b.value) <= 2.0 * tol);
  }
}

TEST_CASE("smallest argmin wins among equal minima", "[minimize]") {
  // cos 7theta bottoms at every odd multiple of pi/7
  const MinResult r = global_min(from_exponents(cosine_set({7})), 1e-10);
  CHECK(r.value == Approx(-1.0).margin(1e-12));
  CHECK(r.theta == Approx(kPi / 7.0).margin(1e-7));

  // {2,4} doubles {1,2}: minima at theta*/2 and pi - theta*/2
  const MinResult s = global_min(from_exponents(cosine_set({2, 4})), 1e-10);
  CHECK(s.value == Approx(-1.125).margin(1e-10));
  CHECK(s.theta == Approx(std::acos(-0.25) / 2.0).margin(1e-7));
}

TEST_CASE("preconditions and tolerance failures", "[minimize]") {
  CHECK_THROWS_AS(global_min(CosinePoly(Rational(1), {}), 1e-9), InvalidInput);
  CHECK_THROWS_AS(global_min(from_exponents(cosine_set({1})), 0.0), InvalidInput);
  CHECK_THROWS_AS(global_min(from_exponents(cosine_set({1})), 1e-18), ToleranceUnreachable);
  CHECK_THROWS_AS(min_modulus(cosine_set({1, 2}), 1e-8), InvalidInput);
  CHECK_THROWS_AS(min_modulus(newman_set({0, 1}), -1.0), InvalidInput);
}

TEST_CASE("minimum modulus reference values", "[minimize]") {
  const MinResult m3 = min_modulus(newman_set({0, 1, 3}), 1e-8);
  CHECK(m3.value == Approx(mu3_reference()).margin(1e-6));
  CHECK(m3.error_radius <= 1e-8);

  const MinResult m4 = min_modulus(newman_set({0, 1, 2, 4}), 1e-8);
  CHECK(m4.value == Approx(0.752394).margin(1e-6));

  const MinResult z = min_modulus(newman_set({0, 1, 2}), 1e-8);
  CHECK(z.value <= 1e-6);  // vanishes at the primitive cube root of unity

  const MinResult single = min_modulus(newman_set({5}), 1e-8);
  CHECK(single.value == 1.0);
  CHECK(single.error_radius == 0.0);
}

TEST_CASE("minimum modulus quartic cross-check for {0,1,2,4}", "[minimize]") {
  // independent route: minimize 16x^4 + 8x^3 - 8x^2 - 2x + 2 over [-1, 1]
  double best = std::numeric_limits<double>::infinity();
  const long long K = 4'000'000;
  for (long long i = 0; i <= K; ++i) {
    const double x = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(K);
    const double q = ((16.0 * x + 8.0) * x - 8.0) * x * x - 2.0 * x + 2.0;
    best = std::min(best, q);
  }
  const MinResult m4 = min_modulus(newman_set({0, 1, 2, 4}), 1e-8);
  CHECK(m4.value == Approx(std::sqrt(best)).margin(1e-6));
}

TEST_CASE("minimum modulus is translation invariant", "[minimize]") {
  Rng rng(41);
  const double tol = 1e-7;
  for (int trial = 0; trial < 15; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 6));
    const auto base = rng.distinct_sorted(0, 30, n);
    const long long shift = rng.uniform_int(1, 9);
    std::vector<long long> moved;
    for (long long v : base) moved.push_back(v + shift);
    const MinResult a = min_modulus(newman_set(base), tol);
    const MinResult b = min_modulus(newman_set(moved), tol);
    CHECK(std::abs(a.value - b.value) <= 2.0 * tol + 2e-7);
  }
}

TEST_CASE("minimum modulus respects the L2 bound", "[minimize]") {
  Rng rng(43);
  const double tol = 1e-6;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 8));
    const auto exps = rng.distinct_sorted(0, 60, n);
    double value;
    try {
      value = min_modulus(newman_set(exps), tol).value;
    } catch (const ToleranceUnreachable&) {
      // fall back to the attained squared-scale value; still an upper bound
      const CosinePoly ac = autocorrelate(newman_set(exps));
      value = std::sqrt(std::max(0.0, global_min(ac, 1e-6).value));
    }
    CHECK(value <= std::sqrt(static_cast<double>(n)) + tol);
  }
}

TEST_CASE("min result json shape", "[minimize][json]") {
  const MinResult r = global_min(from_exponents(cosine_set({1, 2})), 1e-9);
  const nlohmann::json j = to_json(r);
  CHECK(j.contains("theta"));
  CHECK(j.contains("value"));
  CHECK(j.contains("error_radius"));
  CHECK(j.contains("grid_size"));
  CHECK(j.contains("refined"));
  CHECK(j["value"].get<double>() == Approx(-1.125).margin(1e-9));
}
