#pragma once

#include "unruh_pair/coefficients.hpp"
#include "unruh_pair/gkls_oracle.hpp"
#include "unruh_pair/xstate.hpp"

namespace unruh {

struct ConcurrenceBreakdown {
  double k1 = 0.0;
  double k2 = 0.0;
  double c = 0.0;  // max(0, k1, k2)
};

// Closed-form X-state concurrence in the coupled basis:
//   K1 = sqrt((p_aa - p_ss)^2 + 4 Im(c_as)^2) - 2 sqrt(p_gg p_ee)
//   K2 = 2|c_ge| - sqrt((p_aa + p_ss)^2 - 4 Re(c_as)^2)
// Radicands down to -1e-12 are clipped to zero; anything more negative
// throws Error(InvalidState).
ConcurrenceBreakdown concurrence_x(const XState& state);

// Wootters concurrence of an arbitrary two-qubit density matrix.
double concurrence_general(const DenseState& state);

// a2^2 + d^2 > a1^2 - b1^2
bool generation_possible(const Coefficients& coeffs);

// K1'(0) for the |10> start: 4 sqrt(a2^2 + d^2) - 4 sqrt(a1^2 - b1^2).
double generation_rate_product(const Coefficients& coeffs);

// C'(0) for a start with C(0) = 0 can only be reported as 0 when K1'(0) < 0,
// since the concurrence is clamped at zero. Both numbers are kept.
struct InitialRate {
  double raw = 0.0;
  double clamped = 0.0;
};

InitialRate initial_rate_product(const Coefficients& coeffs);

// Closed-form C'(0) for cos(theta)|A> + sin(theta) e^{i phi}|S>. Throws
// Error(FormulaSingular) where cos^2 2theta + sin^2 2theta sin^2 phi vanishes.
double initial_rate_superposition(const Coefficients& coeffs, double theta, double phi);

// dC/dtau at 0+ from forward differences at h, h/2, h/4 with two levels of
// Richardson extrapolation.
double numerical_initial_rate(const XState& state0, const Coefficients& coeffs,
                              double h = 1e-5);

}  // namespace unruh
