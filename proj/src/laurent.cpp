#include "cbkdv/laurent.hpp"

#include <set>

namespace cbkdv {

double max_coefficient_difference(const LaurentPoly& a, const LaurentPoly& b) {
  std::set<int> exponents;
  for (const auto& [k, c] : a.terms()) exponents.insert(k);
  for (const auto& [k, c] : b.terms()) exponents.insert(k);

  double worst = 0.0;
  for (int k : exponents) {
    worst = std::max(worst, std::abs(a.coefficient(k) - b.coefficient(k)));
  }
  return worst;
}

bool equivalent(const RationalHyperbolic& a, const RationalHyperbolic& b, double tol) {
  const int p = std::max(a.wpow, b.wpow);
  return max_coefficient_difference(a.raised(p).num, b.raised(p).num) <= tol;
}

}  // namespace cbkdv
