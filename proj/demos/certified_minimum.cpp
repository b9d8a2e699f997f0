// Minimal library walkthrough: certified minima and minimum moduli for a few
// small exponent sets.

#include <cstdio>

#include "cosmin/cosmin.hpp"

int main() {
  using namespace cosmin;

  const ExponentSet triple(SetKind::cosine, {1, 2, 3});
  const MinResult L = global_min(from_exponents(triple), 1e-10);
  std::printf("L(1,2,3)  = %.12f  (closed form %.12f)\n", L.value, cubic_min_reference());
  std::printf("  attained at theta = %.12f, certified radius %.2e, grid %lld\n", L.theta,
              L.error_radius, L.grid_size);

  const ExponentSet newman(SetKind::newman, {0, 1, 3});
  const MinResult M = min_modulus(newman, 1e-8);
  std::printf("M(0,1,3)  = %.12f  (the flattest length-3 Newman polynomial)\n", M.value);

  // every gcd-1 triple admits an explicit angle below the length-3 optimum
  const Witness w = triple_drop_witness(2, 3, 7);
  std::printf("witness for (2,3,7): f(%.9f) = %.9f <= %.9f  [%s]\n", w.theta, w.value, w.bound,
              to_string(w.tag));
  return 0;
}
