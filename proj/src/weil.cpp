#include <cmath>

#include "permrf/bivariate.hpp"

namespace permrf {

bool weil_holds(std::uint64_t q, unsigned d) {
  if (d < 2) throw Error(Errc::degree_too_small, "curve degree must be at least 2");
  using wide = unsigned __int128;
  // q - 2d + 1 > (d-1)(d-2)√q, with both sides squared once the left is positive.
  const wide lhs_base = wide{q} + 1;
  const wide sub = wide{2} * d;
  if (lhs_base <= sub) return false;
  const wide lhs = lhs_base - sub;
  const wide k = wide{d - 1} * (d - 2);
  return lhs * lhs > k * k * q;
}

double weil_threshold(unsigned d) {
  if (d < 2) throw Error(Errc::degree_too_small, "curve degree must be at least 2");
  const double k = static_cast<double>(d - 1) * (d - 2);
  return (k + std::sqrt(k * k + 4.0 * (2.0 * d - 1.0))) / 2.0;
}

std::uint64_t weil_min_prime_power(unsigned d) {
  std::uint64_t q = 2;
  while (!(is_prime_power(q) && weil_holds(q, d))) ++q;
  return q;
}

}  // namespace permrf
