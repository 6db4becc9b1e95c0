#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <map>

#include "cbkdv/errors.hpp"

namespace cbkdv {

// ---------------------------------------------------------------------------
// Sparse Laurent polynomials in E = exp(C1*xi).
//
// tanh, sech and sinh become rational functions of E, so substituting the
// ansatz into the traveling-frame ODE and clearing denominators is plain
// polynomial arithmetic here.  Exponent arithmetic is exact integer math;
// coefficients live in a ring parameter.  Besides complex coefficients we
// instantiate a magnitude ring in which subtraction accumulates instead of
// cancelling: running the identical algebra in that ring yields, for every
// exponent, an upper bound on the summed monomial magnitudes.  That bound is
// the natural scale for declaring an extracted coefficient "zero".
// ---------------------------------------------------------------------------

/// Nonnegative worst-case magnitude: |a - b| tracked as |a| + |b|.
struct Magnitude {
  double value = 0.0;

  Magnitude() = default;
  explicit Magnitude(double v) : value(v) {}

  Magnitude operator+(Magnitude o) const { return Magnitude(value + o.value); }
  Magnitude operator-(Magnitude o) const { return Magnitude(value + o.value); }
  Magnitude operator*(Magnitude o) const { return Magnitude(value * o.value); }
};

template <class Ring>
struct RingTraits;

template <>
struct RingTraits<std::complex<double>> {
  static bool is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0, 0.0); }
  static std::complex<double> from_exponent(int k) { return {static_cast<double>(k), 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
};

template <>
struct RingTraits<Magnitude> {
  static bool is_zero(Magnitude m) { return m.value == 0.0; }
  static Magnitude from_exponent(int k) { return Magnitude(static_cast<double>(std::abs(k))); }
  static Magnitude one() { return Magnitude(1.0); }
};

template <class Ring>
class SparseLaurent {
 public:
  using Traits = RingTraits<Ring>;

  SparseLaurent() = default;

  static SparseLaurent monomial(int exponent, Ring coeff) {
    SparseLaurent p;
    p.add_term(exponent, coeff);
    return p;
  }

  /// Accumulates into the coefficient of E^exponent, keeping the normal form
  /// (coefficients that become exactly zero are not stored).
  void add_term(int exponent, Ring coeff) {
    auto it = coeffs_.find(exponent);
    if (it == coeffs_.end()) {
      if (!Traits::is_zero(coeff)) coeffs_.emplace(exponent, coeff);
      return;
    }
    it->second = it->second + coeff;
    if (Traits::is_zero(it->second)) coeffs_.erase(it);
  }

  const std::map<int, Ring>& terms() const { return coeffs_; }
  bool empty() const { return coeffs_.empty(); }

  Ring coefficient(int exponent) const {
    auto it = coeffs_.find(exponent);
    return it == coeffs_.end() ? Ring{} : it->second;
  }

  int min_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int max_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

  SparseLaurent operator+(const SparseLaurent& o) const {
    SparseLaurent out = *this;
    for (const auto& [k, c] : o.coeffs_) out.add_term(k, c);
    return out;
  }

  SparseLaurent operator-(const SparseLaurent& o) const {
    SparseLaurent out = *this;
    for (const auto& [k, c] : o.coeffs_) {
      auto it = out.coeffs_.find(k);
      if (it == out.coeffs_.end()) {
        Ring neg = Ring{} - c;
        if (!Traits::is_zero(neg)) out.coeffs_.emplace(k, neg);
      } else {
        it->second = it->second - c;
        if (Traits::is_zero(it->second)) out.coeffs_.erase(it);
      }
    }
    return out;
  }

  SparseLaurent operator*(const SparseLaurent& o) const {
    SparseLaurent out;
    for (const auto& [k1, c1] : coeffs_) {
      for (const auto& [k2, c2] : o.coeffs_) {
        out.add_term(k1 + k2, c1 * c2);
      }
    }
    return out;
  }

  SparseLaurent scaled(Ring f) const {
    SparseLaurent out;
    for (const auto& [k, c] : coeffs_) out.add_term(k, c * f);
    return out;
  }

  /// d/dxi maps E^k -> k*C1*E^k.
  SparseLaurent derivative(Ring c1) const {
    SparseLaurent out;
    for (const auto& [k, c] : coeffs_) {
      out.add_term(k, c * Traits::from_exponent(k) * c1);
    }
    return out;
  }

  /// Shift every exponent by delta (multiplication by E^delta).
  SparseLaurent shifted(int delta) const {
    SparseLaurent out;
    for (const auto& [k, c] : coeffs_) out.coeffs_.emplace(k + delta, c);
    return out;
  }

 private:
  std::map<int, Ring> coeffs_;
};

using LaurentPoly = SparseLaurent<std::complex<double>>;
using MagnitudePoly = SparseLaurent<Magnitude>;

/// W = E + E^-1, the common denominator of tanh and sech.
template <class Ring>
SparseLaurent<Ring> laurent_w() {
  SparseLaurent<Ring> w;
  w.add_term(1, RingTraits<Ring>::one());
  w.add_term(-1, RingTraits<Ring>::one());
  return w;
}

inline std::complex<double> eval(const LaurentPoly& p, std::complex<double> E) {
  std::complex<double> sum = 0.0;
  for (const auto& [k, c] : p.terms()) sum += c * std::pow(E, k);
  return sum;
}

/// Largest coefficient magnitude difference over the union of exponents.
double max_coefficient_difference(const LaurentPoly& a, const LaurentPoly& b);

// ---------------------------------------------------------------------------
// Rational functions N(E) / W^p with W = E + E^-1.   The denominator power is
// carried explicitly, which keeps addition, multiplication and the quotient
// rule for d/dxi exact.
// ---------------------------------------------------------------------------
template <class Ring>
struct RationalLaurent {
  SparseLaurent<Ring> num;
  int wpow = 0;  // denominator is W^wpow, wpow >= 0

  static RationalLaurent from_poly(SparseLaurent<Ring> p) { return {std::move(p), 0}; }

  /// Same value with the denominator raised to W^target.
  RationalLaurent raised(int target) const {
    if (target < wpow) throw InvalidParameters("cannot lower denominator power");
    RationalLaurent out{num, target};
    const auto w = laurent_w<Ring>();
    for (int i = wpow; i < target; ++i) out.num = out.num * w;
    return out;
  }

  RationalLaurent operator+(const RationalLaurent& o) const {
    const int p = std::max(wpow, o.wpow);
    return {raised(p).num + o.raised(p).num, p};
  }

  RationalLaurent operator-(const RationalLaurent& o) const {
    const int p = std::max(wpow, o.wpow);
    return {raised(p).num - o.raised(p).num, p};
  }

  RationalLaurent operator*(const RationalLaurent& o) const {
    return {num * o.num, wpow + o.wpow};
  }

  RationalLaurent scaled(Ring f) const { return {num.scaled(f), wpow}; }

  /// Quotient rule: (N/W^p)' = (N' W - p N W') / W^(p+1).
  RationalLaurent derivative(Ring c1) const {
    const auto w = laurent_w<Ring>();
    const auto wprime = w.derivative(c1);
    const auto scaled_nwp = (num * wprime).scaled(RingTraits<Ring>::from_exponent(wpow));
    return {num.derivative(c1) * w - scaled_nwp, wpow + 1};
  }
};

using RationalHyperbolic = RationalLaurent<std::complex<double>>;

/// Cross-multiplied equality: a.num * W^b.wpow  vs  b.num * W^a.wpow,
/// compared coefficient-wise against tol.
bool equivalent(const RationalHyperbolic& a, const RationalHyperbolic& b, double tol);

}  // namespace cbkdv
