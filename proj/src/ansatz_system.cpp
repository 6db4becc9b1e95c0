#include "cbkdv/ansatz_system.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cbkdv {

namespace {

// Substitution of u = B0 + B1 (E - E^-1)/W + 2 D1 / W, W = E + E^-1, into
// u'' + r u' + a u^3 + b u^2 + c u, then clearing with W^3 E^3.  The cubic
// term carries W^3, so W^3 E^3 is the smallest multiplier that leaves a plain
// polynomial; it lands exactly on exponents 0..6.
//
// Templated over the coefficient ring: complex for values, Magnitude for the
// cancellation-scale companion.
template <class Ring>
SparseLaurent<Ring> build_cleared_residual(Ring B0, Ring B1, Ring D1, Ring c1, Ring r, Ring a,
                                           Ring b, Ring c) {
  using Rat = RationalLaurent<Ring>;
  const Ring one = RingTraits<Ring>::one();
  const Ring two = one + one;

  SparseLaurent<Ring> n;  // numerator of u over W
  n.add_term(1, B0);
  n.add_term(-1, B0);
  n.add_term(1, B1);
  n.add_term(-1, Ring{} - B1);
  n.add_term(0, two * D1);

  const Rat u{n, 1};
  const Rat du = u.derivative(c1);
  const Rat d2u = du.derivative(c1);

  Rat residual = d2u + du.scaled(r) + (u * u * u).scaled(a) + (u * u).scaled(b) + u.scaled(c);
  residual = residual.raised(3);  // common denominator W^3
  return residual.num.shifted(3);
}

struct ReducedRing {
  double r, a, b, c;
};

ReducedRing reduced(const PhysicalParameters& p, double v) {
  const ReducedODECoefficients ode(p, v);
  return {ode.r, ode.a, ode.b, ode.c};
}

SystemValues collect(const LaurentPoly& values, const MagnitudePoly& scales) {
  SystemValues out;
  double max_scale = 0.0;
  for (int k = 0; k < 7; ++k) {
    out.p[k] = values.coefficient(k);
    out.scale[k] = scales.coefficient(k).value;
    max_scale = std::max(max_scale, out.scale[k]);
  }

  // Exponents outside 0..6 cannot occur by construction; anything found
  // there is a reduction bug, not a property of the candidate.
  for (const auto& [k, coeff] : values.terms()) {
    if (k < 0 || k > 6) {
      if (std::abs(coeff) >= 1e-12 * max_scale + 1e-300) {
        throw NonvanishingStrayTerms("exponent " + std::to_string(k) + " carries coefficient " +
                                     std::to_string(std::abs(coeff)));
      }
    }
  }
  return out;
}

}  // namespace

CandidateVector to_candidate(const WaveCoefficients& c) {
  return {c.B0, c.B1, c.C1, c.D1.imag(), c.v};
}

double SystemValues::relative(int k) const {
  return std::abs(p[k]) / std::max(scale[k], 1e-300);
}

double SystemValues::max_relative() const {
  double worst = 0.0;
  for (int k = 0; k < 7; ++k) worst = std::max(worst, relative(k));
  return worst;
}

SystemValues extract_system_complex_d1(double B0, double B1, double C1, Complex D1, double v,
                                       const PhysicalParameters& params) {
  params.validate();
  if (C1 == 0.0) throw DegenerateWidth("C1 = 0: ansatz degenerates to a constant");

  const ReducedRing rr = reduced(params, v);

  const LaurentPoly values = build_cleared_residual<Complex>(
      B0, B1, D1, C1, rr.r, rr.a, rr.b, rr.c);
  const MagnitudePoly scales = build_cleared_residual<Magnitude>(
      Magnitude(std::abs(B0)), Magnitude(std::abs(B1)), Magnitude(std::abs(D1)),
      Magnitude(std::abs(C1)), Magnitude(std::abs(rr.r)), Magnitude(std::abs(rr.a)),
      Magnitude(std::abs(rr.b)), Magnitude(std::abs(rr.c)));

  return collect(values, scales);
}

SystemValues extract_system(const CandidateVector& candidate, const PhysicalParameters& params) {
  return extract_system_complex_d1(candidate.B0, candidate.B1, candidate.C1,
                                   Complex(0.0, candidate.D1_imag), candidate.v, params);
}

LaurentPoly cleared_residual_poly(const CandidateVector& candidate,
                                  const PhysicalParameters& params) {
  params.validate();
  if (candidate.C1 == 0.0) throw DegenerateWidth("C1 = 0: ansatz degenerates to a constant");
  const ReducedRing rr = reduced(params, candidate.v);
  return build_cleared_residual<Complex>(Complex(candidate.B0), Complex(candidate.B1),
                                         Complex(0.0, candidate.D1_imag), Complex(candidate.C1),
                                         Complex(rr.r), Complex(rr.a), Complex(rr.b),
                                         Complex(rr.c));
}

std::array<Complex, 7> printed_system(const CandidateVector& candidate,
                                      const PhysicalParameters& params) {
  const double al = params.alpha;
  const double be = params.beta;
  const double mu = params.mu;
  const double s = params.s;
  const double B0 = candidate.B0;
  const double B1 = candidate.B1;
  const double C1 = candidate.C1;
  const Complex D1(0.0, candidate.D1_imag);
  const double v = candidate.v;

  std::array<Complex, 7> p{};
  p[0] = -24.0 * v * B0 + 12.0 * al * B0 * B0 - 8.0 * be * B0 * B0 * B0 + 24.0 * mu * B1 * C1 -
         24.0 * v * D1 + 24.0 * al * B0 * D1 + 24.0 * be * B0 * B0 * D1 -
         24.0 * s * C1 * C1 * D1 + 12.0 * al * D1 * D1 + 24.0 * be * B0 * D1 * D1 +
         8.0 * be * D1 * D1 * D1;
  p[1] = -6.0 * v * D1 + 6.0 * al * B0 * D1 + 6.0 * be * B0 * B0 * D1 - 6.0 * al * B1 * D1 -
         12.0 * be * B0 * B1 * D1 + 6.0 * be * B1 * B1 * D1 + 6.0 * mu * C1 * D1 +
         6.0 * s * C1 * C1 * D1;
  p[2] = -9.0 * v * B0 + 4.5 * al * B0 * B0 + 3.0 * be * B0 * B0 * B0 + 3.0 * v * B1 -
         3.0 * al * B0 * B1 - 3.0 * be * B0 * B0 * B1 - 1.5 * al * B1 * B1 -
         3.0 * be * B0 * B1 * B1 + 3.0 * be * B1 * B1 * B1 + 12.0 * mu * B1 * C1 +
         24.0 * s * B1 * C1 * C1 + 6.0 * al * D1 * D1 + 12.0 * be * B0 * D1 * D1 -
         12.0 * be * B1 * D1 * D1;
  p[3] = -12.0 * v * D1 + 12.0 * al * B0 * D1 + 12.0 * be * B0 * B0 * D1 -
         12.0 * be * B1 * B1 * D1 - 36.0 * s * C1 * C1 * D1 + 8.0 * be * D1 * D1 * D1;
  p[4] = -9.0 * v * B0 + 4.5 * al * B0 * B0 + 3.0 * be * B0 * B0 * B0 - 3.0 * v * B1 +
         3.0 * al * B0 * B1 + 3.0 * be * B0 * B0 * B1 - 1.5 * al * B1 * B1 -
         3.0 * be * B0 * B1 * B1 - 3.0 * be * B1 * B1 * B1 + 12.0 * mu * B1 * C1 -
         24.0 * s * B1 * C1 * C1 + 6.0 * al * D1 * D1 + 12.0 * be * B0 * D1 * D1 +
         12.0 * be * B1 * D1 * D1;
  p[5] = -6.0 * v * D1 + 6.0 * al * B0 * D1 + 6.0 * be * B0 * B0 * D1 + 6.0 * al * B1 * D1 +
         12.0 * be * B0 * B1 * D1 + 6.0 * be * B1 * B1 * D1 - 6.0 * mu * C1 * D1 +
         6.0 * s * C1 * C1 * D1;
  p[6] = -3.0 * v * B0 + 1.5 * al * B0 * B0 + be * B0 * B0 * B0 - 3.0 * v * B1 +
         3.0 * al * B0 * B1 + 3.0 * be * B0 * B0 * B1 + 1.5 * al * B1 * B1 +
         3.0 * be * B0 * B1 * B1 + be * B1 * B1 * B1;
  return p;
}

namespace {

// Summed monomial magnitudes of each printed equation, mirroring its terms.
std::array<double, 7> printed_system_scale(const CandidateVector& candidate,
                                           const PhysicalParameters& params) {
  const double al = std::abs(params.alpha);
  const double be = std::abs(params.beta);
  const double mu = std::abs(params.mu);
  const double s = std::abs(params.s);
  const double B0 = std::abs(candidate.B0);
  const double B1 = std::abs(candidate.B1);
  const double C1 = std::abs(candidate.C1);
  const double D1 = std::abs(candidate.D1_imag);
  const double v = std::abs(candidate.v);

  std::array<double, 7> sc{};
  sc[0] = 24 * v * B0 + 12 * al * B0 * B0 + 8 * be * B0 * B0 * B0 + 24 * mu * B1 * C1 +
          24 * v * D1 + 24 * al * B0 * D1 + 24 * be * B0 * B0 * D1 + 24 * s * C1 * C1 * D1 +
          12 * al * D1 * D1 + 24 * be * B0 * D1 * D1 + 8 * be * D1 * D1 * D1;
  sc[1] = 6 * v * D1 + 6 * al * B0 * D1 + 6 * be * B0 * B0 * D1 + 6 * al * B1 * D1 +
          12 * be * B0 * B1 * D1 + 6 * be * B1 * B1 * D1 + 6 * mu * C1 * D1 +
          6 * s * C1 * C1 * D1;
  sc[2] = 9 * v * B0 + 4.5 * al * B0 * B0 + 3 * be * B0 * B0 * B0 + 3 * v * B1 +
          3 * al * B0 * B1 + 3 * be * B0 * B0 * B1 + 1.5 * al * B1 * B1 +
          3 * be * B0 * B1 * B1 + 3 * be * B1 * B1 * B1 + 12 * mu * B1 * C1 +
          24 * s * B1 * C1 * C1 + 6 * al * D1 * D1 + 12 * be * B0 * D1 * D1 +
          12 * be * B1 * D1 * D1;
  sc[3] = 12 * v * D1 + 12 * al * B0 * D1 + 12 * be * B0 * B0 * D1 + 12 * be * B1 * B1 * D1 +
          36 * s * C1 * C1 * D1 + 8 * be * D1 * D1 * D1;
  sc[4] = sc[2];
  sc[5] = sc[1];
  sc[6] = 3 * v * B0 + 1.5 * al * B0 * B0 + be * B0 * B0 * B0 + 3 * v * B1 + 3 * al * B0 * B1 +
          3 * be * B0 * B0 * B1 + 1.5 * al * B1 * B1 + 3 * be * B0 * B1 * B1 +
          be * B1 * B1 * B1;
  return sc;
}

}  // namespace

std::vector<SystemComparisonRow> compare_with_printed_system(const CandidateVector& candidate,
                                                             const PhysicalParameters& params) {
  const SystemValues machine = extract_system(candidate, params);
  const std::array<Complex, 7> printed = printed_system(candidate, params);
  const std::array<double, 7> printed_scale = printed_system_scale(candidate, params);

  std::vector<SystemComparisonRow> rows;
  rows.reserve(7);
  for (int k = 0; k < 7; ++k) {
    SystemComparisonRow row;
    row.k = k;
    row.machine = machine.p[k];
    row.machine_relative = machine.relative(k);
    row.printed = printed[k];
    row.printed_relative = std::abs(printed[k]) / std::max(printed_scale[k], 1e-300);
    row.discrepancy = std::abs(row.machine_relative - row.printed_relative);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cbkdv
