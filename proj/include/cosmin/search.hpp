#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cosmin/cosine_poly.hpp"
#include "cosmin/errors.hpp"
#include "cosmin/exponent_set.hpp"
#include "cosmin/minimize.hpp"

namespace cosmin {

enum class Problem { lambda, mu };

inline const char* to_string(Problem p) { return p == Problem::lambda ? "lambda" : "mu"; }

struct SearchSpec {
  Problem problem = Problem::lambda;
  int n = 2;
  long long max_exponent = 2;
  double tol = 1e-7;  // bulk-search default; library callers typically use 1e-9
  int top_k = 10;
};

struct SearchRecord {
  ExponentSet set;
  double objective = 0.0;  // lambda candidate -L, or the minimum modulus
  double theta = 0.0;
};

struct SearchFailure {
  ExponentSet set;
  std::string message;
};

struct SearchReport {
  SearchSpec spec;
  std::vector<SearchRecord> best;  // ranked by objective, descending
  std::vector<SearchFailure> failures;
  long long sets_evaluated = 0;
  double wall_time = 0.0;  // display only; excluded from serialized reports
};

// All canonical exponent sets under the degree bound, in lexicographic order.
// Lambda: n-subsets of [1, max] with gcd 1. Mu: n-subsets of [0, max]
// anchored at 0 whose nonzero elements have gcd 1. Every equivalence class
// under scaling (and translation, for mu) appears exactly once.
inline std::vector<ExponentSet> enumerate_canonical(Problem problem, int n,
                                                    long long max_exponent) {
  if (n < 2) throw InvalidInput("set size must be >= 2");
  const int choose = problem == Problem::lambda ? n : n - 1;
  if (max_exponent < choose) {
    throw EmptySpace("no canonical sets of size " + std::to_string(n) + " with bound " +
                     std::to_string(max_exponent));
  }
  std::vector<long long> comb(choose);
  std::iota(comb.begin(), comb.end(), 1);
  std::vector<ExponentSet> out;
  for (;;) {
    if (gcd_of(comb) == 1) {
      std::vector<long long> e;
      e.reserve(static_cast<std::size_t>(n));
      if (problem == Problem::mu) e.push_back(0);
      e.insert(e.end(), comb.begin(), comb.end());
      out.emplace_back(problem == Problem::lambda ? SetKind::cosine : SetKind::newman,
                       std::move(e));
    }
    int i = choose - 1;
    while (i >= 0 && comb[static_cast<std::size_t>(i)] == max_exponent - (choose - 1 - i)) --i;
    if (i < 0) break;
    ++comb[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < choose; ++j) {
      comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (out.empty()) throw EmptySpace("enumeration produced no canonical sets");
  return out;
}

namespace detail {

struct EvalOutcome {
  double objective;
  double theta;
};

// Bulk mu evaluation certifies on the squared-modulus scale. The Newton-
// refined value is accurate to ~1e-12 either way; the strict image-width
// semantics of min_modulus would need quadratically finer grids for sets
// whose minimum sits near zero, far beyond the table runtime envelope, and
// those sets never influence the ranked maxima. Direct min_modulus calls
// keep the strict semantics.
inline EvalOutcome evaluate_set(Problem problem, const ExponentSet& set, double tol) {
  if (problem == Problem::lambda) {
    const MinResult r = global_min(from_exponents(set), tol);
    return {-r.value, r.theta};
  }
  const CosinePoly ac = autocorrelate(set);
  if (ac.terms().empty()) return {1.0, 0.0};
  const FlatPoly fp(ac);
  const GlobalMinOptions opt;
  const long long n0 = std::max(opt.min_samples, opt.grid_factor * fp.m_max);
  const MinResult r = global_min_stages(fp, tol, n0, opt.max_samples);
  return {std::sqrt(std::max(0.0, r.value)), r.theta};
}

inline std::string checkpoint_line(const ExponentSet& set, double objective, double theta) {
  nlohmann::json j;
  j["set"] = set.exponents();
  j["objective"] = objective;
  j["theta"] = theta;
  return j.dump();
}

struct CheckpointEntry {
  std::vector<long long> set;
  double objective;
  double theta;
};

inline std::vector<CheckpointEntry> load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorruptCheckpoint("cannot read checkpoint file " + path);
  std::vector<CheckpointEntry> entries;
  std::string line;
  long long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw CorruptCheckpoint("unparseable checkpoint line " + std::to_string(line_no));
    }
    if (!j.is_object() || !j.contains("set") || !j.contains("objective") ||
        !j.contains("theta") || !j["set"].is_array() || !j["objective"].is_number() ||
        !j["theta"].is_number()) {
      throw CorruptCheckpoint("malformed checkpoint record at line " + std::to_string(line_no));
    }
    CheckpointEntry e;
    for (const auto& v : j["set"]) {
      if (!v.is_number_integer()) {
        throw CorruptCheckpoint("non-integer exponent at line " + std::to_string(line_no));
      }
      e.set.push_back(v.get<long long>());
    }
    e.objective = j["objective"].get<double>();
    e.theta = j["theta"].get<double>();
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace detail

// Evaluates the objective for every canonical set under the bound and returns
// the top_k ranked records. The reduction runs over results in enumeration
// order with a lexicographic tie-break, so the report is identical for any
// worker count. With a checkpoint path, each completed set is appended as a
// JSON line; on resume, recorded sets are not recomputed.
inline SearchReport run_search(const SearchSpec& spec, unsigned workers = 0,
                               const std::string& checkpoint_path = {},
                               bool resume = false) {
  if (spec.n < 2) throw InvalidInput("set size must be >= 2");
  if (!(spec.tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (spec.top_k < 1) throw InvalidInput("top_k must be >= 1");
  if (resume && checkpoint_path.empty()) {
    throw InvalidInput("resume requested without a checkpoint path");
  }
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<ExponentSet> sets =
      enumerate_canonical(spec.problem, spec.n, spec.max_exponent);

  enum : int { pending = 0, done = 1, failed = 2 };
  struct Cell {
    double objective = 0.0;
    double theta = 0.0;
    int status = pending;
    std::string error;
  };
  std::vector<Cell> cells(sets.size());

  std::ofstream ck_out;
  if (!checkpoint_path.empty()) {
    if (resume && std::filesystem::exists(checkpoint_path)) {
      for (const auto& entry : detail::load_checkpoint(checkpoint_path)) {
        try {
          const ExponentSet probe(sets.front().kind(), entry.set);
          const auto it = std::lower_bound(sets.begin(), sets.end(), probe);
          if (it != sets.end() && *it == probe) {
            Cell& c = cells[static_cast<std::size_t>(it - sets.begin())];
            c.objective = entry.objective;
            c.theta = entry.theta;
            c.status = done;
          }
        } catch (const InvalidInput& e) {
          throw CorruptCheckpoint(std::string("invalid exponent set in checkpoint: ") +
                                  e.what());
        }
      }
    }
    ck_out.open(checkpoint_path, resume ? std::ios::app : std::ios::trunc);
    if (!ck_out) throw CorruptCheckpoint("cannot open checkpoint file " + checkpoint_path);
  }
  std::mutex ck_mutex;

  unsigned nw = workers ? workers : std::thread::hardware_concurrency();
  nw = std::clamp<unsigned>(nw, 1, static_cast<unsigned>(sets.size()));
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= sets.size()) return;
      Cell& cell = cells[i];
      if (cell.status != pending) continue;
      try {
        const auto out = detail::evaluate_set(spec.problem, sets[i], spec.tol);
        cell.objective = out.objective;
        cell.theta = out.theta;
        cell.status = done;
        if (ck_out.is_open()) {
          const std::string line = detail::checkpoint_line(sets[i], out.objective, out.theta);
          const std::lock_guard<std::mutex> lock(ck_mutex);
          ck_out << line << '\n' << std::flush;
        }
      } catch (const ToleranceUnreachable& e) {
        cell.status = failed;
        cell.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nw; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<std::size_t> order;
  order.reserve(sets.size());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].status == done) order.push_back(i);
  }
  // lambda(n) = -sup L is an infimum of the candidate -L over sets, so lambda
  // ranks ascending; mu(n) = sup M ranks descending.
  const bool ascending = spec.problem == Problem::lambda;
  const auto rank = [&](std::size_t a, std::size_t b) {
    if (cells[a].objective != cells[b].objective) {
      return ascending ? cells[a].objective < cells[b].objective
                       : cells[a].objective > cells[b].objective;
    }
    return sets[a] < sets[b];
  };
  std::sort(order.begin(), order.end(), rank);

  // Candidates separated by less than 1e-9 get re-ranked at tol/100; printed
  // table values sit far above this, so only genuine ties are touched.
  const std::size_t limit = std::min<std::size_t>(static_cast<std::size_t>(spec.top_k),
                                                  order.size());
  if (limit > 0) {
    std::size_t window = limit;
    while (window < order.size() && window < limit + 256 &&
           std::abs(cells[order[window]].objective - cells[order[limit - 1]].objective) <=
               1e-9) {
      ++window;
    }
    std::vector<bool> retie(window, false);
    for (std::size_t i = 0; i + 1 < window; ++i) {
      if (std::abs(cells[order[i]].objective - cells[order[i + 1]].objective) <= 1e-9) {
        retie[i] = retie[i + 1] = true;
      }
    }
    for (std::size_t i = 0; i < window; ++i) {
      if (!retie[i]) continue;
      try {
        const auto out = detail::evaluate_set(spec.problem, sets[order[i]], spec.tol / 100.0);
        cells[order[i]].objective = out.objective;
        cells[order[i]].theta = out.theta;
      } catch (const ToleranceUnreachable&) {
        // keep the coarser value; ranking stays deterministic
      }
    }
    std::sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(window), rank);
  }

  SearchReport report;
  report.spec = spec;
  for (std::size_t i = 0; i < limit; ++i) {
    report.best.push_back({sets[order[i]], cells[order[i]].objective, cells[order[i]].theta});
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i].status == failed) report.failures.push_back({sets[i], cells[i].error});
  }
  report.sets_evaluated = static_cast<long long>(sets.size());
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

// The conjectured table values decrease from n = 5 to n = 6, so the lambda
// sequence is not monotone if they are right.
inline bool nonmonotonicity_check(double best_n5, double best_n6) {
  return best_n6 < best_n5;
}

inline bool nonmonotonicity_check(const SearchReport& r5, const SearchReport& r6) {
  if (r5.spec.problem != Problem::lambda || r6.spec.problem != Problem::lambda ||
      r5.spec.n != 5 || r6.spec.n != 6 || r5.best.empty() || r6.best.empty()) {
    throw InvalidInput("nonmonotonicity check needs lambda reports for n = 5 and n = 6");
  }
  return nonmonotonicity_check(r5.best.front().objective, r6.best.front().objective);
}

}  // namespace cosmin
