#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cosmin/cosine_poly.hpp"
#include "cosmin/exponent_set.hpp"
#include "cosmin/minimize.hpp"
#include "cosmin/search.hpp"
#include "cosmin/verify.hpp"

// JSON wire formats. Exponent sets are plain integer arrays; the set kind is
// carried by context. nlohmann keeps object keys sorted and emits
// shortest-round-trip doubles, so identical values serialize to identical
// bytes.

namespace cosmin {

inline nlohmann::json to_json(const ExponentSet& s) { return nlohmann::json(s.exponents()); }

inline ExponentSet exponent_set_from_json(const nlohmann::json& j, SetKind kind) {
  if (!j.is_array()) throw InvalidInput("exponent set must be a JSON array");
  std::vector<long long> e;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput("exponents must be integers");
    e.push_back(v.get<long long>());
  }
  return ExponentSet(kind, std::move(e));
}

inline nlohmann::json to_json(const CosinePoly& p) {
  nlohmann::json terms = nlohmann::json::object();
  for (const auto& [m, c] : p.terms()) terms[std::to_string(m)] = c;
  return nlohmann::json{{"constant", p.constant().to_double()}, {"terms", std::move(terms)}};
}

inline CosinePoly cosine_poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("constant") || !j.contains("terms")) {
    throw InvalidInput("cosine polynomial needs constant and terms");
  }
  std::map<long long, long long> terms;
  for (const auto& [key, value] : j["terms"].items()) {
    terms[std::stoll(key)] = value.get<long long>();
  }
  Rational constant;
  if (j["constant"].is_number_integer()) {
    constant = Rational(j["constant"].get<long long>());
  } else {
    const double d = j["constant"].get<double>();
    constant = Rational(static_cast<long long>(d * (1LL << 24)), 1LL << 24);
  }
  return CosinePoly(constant, std::move(terms));
}

inline nlohmann::json to_json(const MinResult& r) {
  return nlohmann::json{{"theta", r.theta},
                        {"value", r.value},
                        {"error_radius", r.error_radius},
                        {"grid_size", r.grid_size},
                        {"refined", r.refined}};
}

inline nlohmann::json to_json(const Witness& w) {
  return nlohmann::json{{"case", to_string(w.tag)},
                        {"theta", w.theta},
                        {"value", w.value},
                        {"bound", w.bound}};
}

inline nlohmann::json to_json(const SearchSpec& s) {
  return nlohmann::json{{"problem", to_string(s.problem)},
                        {"n", s.n},
                        {"max_exponent", s.max_exponent},
                        {"tol", s.tol},
                        {"top_k", s.top_k}};
}

inline nlohmann::json to_json(const SearchRecord& r, Problem problem) {
  nlohmann::json j{{"set", r.set.exponents()}, {"objective", r.objective}, {"theta", r.theta}};
  if (problem == Problem::lambda) j["min_value"] = -r.objective;
  return j;
}

// Report document: spec, ranked records, counts. Wall time varies run to run
// and stays out so that equal searches serialize byte-identically.
inline nlohmann::json to_json(const SearchReport& r) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& rec : r.best) records.push_back(to_json(rec, r.spec.problem));
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures) {
    failures.push_back({{"set", f.set.exponents()}, {"error", f.message}});
  }
  return nlohmann::json{{"spec", to_json(r.spec)},
                        {"records", std::move(records)},
                        {"failures", std::move(failures)},
                        {"sets_evaluated", r.sets_evaluated}};
}

inline std::string report_csv(const SearchReport& r) {
  std::string out = "set,objective,theta\n";
  for (const auto& rec : r.best) {
    out += '"' + to_string(rec.set) + "\",";
    out += nlohmann::json(rec.objective).dump() + ',';
    out += nlohmann::json(rec.theta).dump() + '\n';
  }
  return out;
}

}  // namespace cosmin
