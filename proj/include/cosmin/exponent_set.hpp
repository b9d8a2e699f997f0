#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "cosmin/errors.hpp"

namespace cosmin {

enum class SetKind { cosine, newman };

inline const char* to_string(SetKind k) {
  return k == SetKind::cosine ? "cosine" : "newman";
}

// Strictly increasing integer frequencies a_1 < ... < a_n. Cosine sets take
// exponents >= 1, Newman sets >= 0. Immutable after construction.
class ExponentSet {
 public:
  ExponentSet(SetKind kind, std::vector<long long> exponents)
      : kind_(kind), exps_(std::move(exponents)) {
    if (exps_.empty()) throw InvalidInput("exponent set must be nonempty");
    const long long lo = kind_ == SetKind::cosine ? 1 : 0;
    if (exps_.front() < lo) {
      throw InvalidInput(std::string(to_string(kind_)) + " exponents must be >= " +
                         std::to_string(lo));
    }
    for (std::size_t i = 0; i + 1 < exps_.size(); ++i) {
      if (exps_[i + 1] <= exps_[i]) {
        throw InvalidInput("exponents must be strictly increasing (offending value " +
                           std::to_string(exps_[i + 1]) + ")");
      }
    }
  }

  SetKind kind() const { return kind_; }
  const std::vector<long long>& exponents() const { return exps_; }
  std::size_t size() const { return exps_.size(); }
  long long max_exponent() const { return exps_.back(); }

  friend bool operator==(const ExponentSet& a, const ExponentSet& b) {
    return a.kind_ == b.kind_ && a.exps_ == b.exps_;
  }
  // Lexicographic on the exponent list; the deterministic tie-break order.
  friend bool operator<(const ExponentSet& a, const ExponentSet& b) {
    return a.exps_ < b.exps_;
  }

 private:
  SetKind kind_;
  std::vector<long long> exps_;
};

inline std::string to_string(const ExponentSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.exponents()[i]);
  }
  return out;
}

inline long long gcd_of(const std::vector<long long>& values) {
  long long g = 0;
  for (long long v : values) g = std::gcd(g, v);
  return g;
}

// Canonical representative of the equivalence class with the same objective
// value: cosine sets modulo a common divisor, Newman sets additionally modulo
// translation.
struct CanonicalForm {
  ExponentSet set;
  long long divisor = 1;  // gcd removed
  long long shift = 0;    // Newman translation removed
};

inline CanonicalForm canonicalize(const ExponentSet& s) {
  std::vector<long long> e = s.exponents();
  long long shift = 0;
  if (s.kind() == SetKind::newman) {
    shift = e.front();
    for (long long& v : e) v -= shift;
  }
  long long divisor = gcd_of(e);
  if (divisor == 0) divisor = 1;  // single-element Newman set {a}
  if (divisor > 1) {
    for (long long& v : e) v /= divisor;
  }
  return CanonicalForm{ExponentSet(s.kind(), std::move(e)), divisor, shift};
}

}  // namespace cosmin
