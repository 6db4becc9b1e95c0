#pragma once

#include <array>
#include <vector>

#include "cbkdv/laurent.hpp"
#include "cbkdv/solution.hpp"

namespace cbkdv {

/// The five unknowns of the algebraic system.  D1 is constrained pure
/// imaginary and carried by its imaginary part.
struct CandidateVector {
  double B0 = 0.0;
  double B1 = 0.0;
  double C1 = 0.0;
  double D1_imag = 0.0;
  double v = 0.0;
};

CandidateVector to_candidate(const WaveCoefficients& c);

/// Coefficients P_0..P_6 of E^0..E^6 after substituting the ansatz into the
/// traveling-frame ODE and clearing denominators with (E + E^-1)^3 * E^3.
/// scale[k] bounds the summed monomial magnitudes that produced p[k]; the
/// meaningful "is this zero" test is p[k] against scale[k].
struct SystemValues {
  std::array<Complex, 7> p{};
  std::array<double, 7> scale{};

  double relative(int k) const;
  double max_relative() const;
};

/// Machine-generated system at a candidate.  Throws DegenerateWidth when
/// C1 = 0 and NonvanishingStrayTerms if exponents outside 0..6 survive
/// clearing (which would mean the reduction itself is broken).
SystemValues extract_system(const CandidateVector& candidate, const PhysicalParameters& params);

/// Same reduction with a fully complex D1 (search-mode plumbing).
SystemValues extract_system_complex_d1(double B0, double B1, double C1, Complex D1, double v,
                                       const PhysicalParameters& params);

/// The numerator polynomial itself, exponents 0..6.  Dividing its value at
/// E = exp(C1*xi) by (E + E^-1)^3 E^3 recovers the pointwise ODE residual.
LaurentPoly cleared_residual_poly(const CandidateVector& candidate,
                                  const PhysicalParameters& params);

/// The seven equations exactly as printed in the source literature, evaluated
/// at a candidate.  Kept verbatim, including any transcription faults: the
/// comparison report records both sides and never asserts which is correct.
std::array<Complex, 7> printed_system(const CandidateVector& candidate,
                                      const PhysicalParameters& params);

struct SystemComparisonRow {
  int k = 0;
  Complex machine;
  double machine_relative = 0.0;  // |machine| / machine cancellation scale
  Complex printed;
  double printed_relative = 0.0;  // |printed| / printed monomial scale
  double discrepancy = 0.0;       // |machine_relative - printed_relative|
};

/// Side-by-side evaluation of the machine-generated and printed systems.
std::vector<SystemComparisonRow> compare_with_printed_system(const CandidateVector& candidate,
                                                             const PhysicalParameters& params);

}  // namespace cbkdv
