// Small bounded search: the best length-4 Newman polynomials with exponents
// up to 12, ranked by minimum modulus.

#include <cstdio>

#include "cosmin/cosmin.hpp"

int main() {
  using namespace cosmin;

  SearchSpec spec;
  spec.problem = Problem::mu;
  spec.n = 4;
  spec.max_exponent = 12;
  spec.tol = 1e-7;
  spec.top_k = 5;

  const SearchReport report = run_search(spec);
  std::printf("evaluated %lld canonical sets in %.2f s\n", report.sets_evaluated,
              report.wall_time);
  for (std::size_t i = 0; i < report.best.size(); ++i) {
    const SearchRecord& r = report.best[i];
    std::printf("%zu. {%s}  min modulus %.9f at theta %.6f\n", i + 1,
                to_string(r.set).c_str(), r.objective, r.theta);
  }
  return 0;
}
