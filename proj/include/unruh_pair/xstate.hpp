#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "unruh_pair/coefficients.hpp"

namespace unruh {

using cdouble = std::complex<double>;

// Two-atom density matrix in the coupled basis
//   |G> = |00>, |E> = |11>, |A> = (|10> - |01>)/sqrt2, |S> = (|10> + |01>)/sqrt2
// restricted to X form. c_as = <A|rho|S> and c_ge = <G|rho|E>; the
// conjugate elements are implied.
struct XState {
  double p_gg = 0.0;
  double p_ee = 0.0;
  double p_aa = 0.0;
  double p_ss = 0.0;
  cdouble c_as{0.0, 0.0};
  cdouble c_ge{0.0, 0.0};

  double trace() const { return p_gg + p_ee + p_aa + p_ss; }

  // Ordered (gg, ee, aa, ss), matching DiagonalGenerator rows.
  Eigen::Vector4d populations() const { return {p_gg, p_ee, p_aa, p_ss}; }

  // Throws Error(InvalidState) when trace, sign or X-block positivity fail
  // beyond the round-off slack (1e-10 trace, 1e-12 populations, 1e-10 blocks).
  void validate() const;
};

XState initial_product_eg();

// cos(theta)|A> + sin(theta) e^{i phi}|S> with the coherence fixed to
// c_as = cos(theta) sin(theta) e^{+i phi}. This is the phase for which the
// closed-form superposition rate matches the propagated concurrence; see
// initial_rate_superposition.
XState initial_superposition(double theta, double phi);

// Classical rate matrix acting on (p_gg, p_ee, p_aa, p_ss).
struct DiagonalGenerator {
  Eigen::Matrix4d m;
};

DiagonalGenerator diagonal_generator(const Coefficients& coeffs);

// exp(M tau) for a constant 4x4 generator. Uses the eigendecomposition when
// it is well conditioned and Eigen's scaling-and-squaring Pade otherwise.
class PopulationFlow {
 public:
  struct Mode {
    cdouble rate;              // eigenvalue
    Eigen::Vector4cd weight;   // contribution to p(tau) is weight * e^{rate tau}
  };

  explicit PopulationFlow(const DiagonalGenerator& generator);

  Eigen::Vector4d apply(const Eigen::Vector4d& p0, double tau) const;

  // Modal expansion of p(tau) for the given start, or nullopt when the
  // eigenbasis was rejected as ill-conditioned.
  std::optional<std::vector<Mode>> modes(const Eigen::Vector4d& p0) const;

  bool uses_eigenbasis() const { return eigen_ok_; }

 private:
  Eigen::Matrix4d m_;
  Eigen::Vector4cd values_;
  Eigen::Matrix4cd vectors_;
  Eigen::Matrix4cd inverse_;
  bool eigen_ok_ = false;
};

// Exact propagator for fixed coefficients. Construct once and share
// read-only across threads.
class XStatePropagator {
 public:
  explicit XStatePropagator(const Coefficients& coeffs);

  XState at(const XState& state0, double tau) const;

  const Coefficients& coeffs() const { return coeffs_; }
  const PopulationFlow& flow() const { return flow_; }

 private:
  Coefficients coeffs_;
  PopulationFlow flow_;
};

XState evolve(const XState& state0, const Coefficients& coeffs, double tau);

// n samples at uniform spacing on [0, tau_max], endpoints included.
std::vector<std::pair<double, XState>> trajectory(const XState& state0,
                                                  const Coefficients& coeffs,
                                                  double tau_max, int n);

// Trace-one nullspace of the diagonal generator with zero coherences.
// Throws Error(DegenerateNullspace) when the nullspace is not one-dimensional.
XState steady_state(const Coefficients& coeffs);

}  // namespace unruh
