#pragma once

// Full 4x4 GKLS integrator in the product basis, assembled term by term from
// the Kossakowski blocks C^(ab)_ij and the interaction block Omega^(12)_ij.
// It shares no code path with XStatePropagator and exists to validate it.

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "unruh_pair/coefficients.hpp"
#include "unruh_pair/xstate.hpp"

namespace unruh {

// Product-basis ordering used everywhere in this module:
//   index 0 = |11>, 1 = |10>, 2 = |01>, 3 = |00>   (|1> excited, |0> ground)
namespace product_basis {
inline constexpr int k11 = 0;
inline constexpr int k10 = 1;
inline constexpr int k01 = 2;
inline constexpr int k00 = 3;
}  // namespace product_basis

struct DenseState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
};

struct GklsData {
  // kossakowski[alpha][beta] is C^(alpha+1, beta+1), a 3x3 block over the
  // Pauli indices i, j in {1, 2, 3}.
  std::array<std::array<Eigen::Matrix3cd, 2>, 2> kossakowski;
  Eigen::Matrix3d omega12 = Eigen::Matrix3d::Zero();
  // sigma[alpha][i] = sigma_{i+1} acting on atom alpha+1.
  std::array<std::array<Eigen::Matrix4cd, 3>, 2> sigma;
  // Adds -i[(omega/2)(s3 x 1 + 1 x s3), rho] with omega = 1. Off by default:
  // the coupled-basis equations are written in the rotating frame.
  bool free_hamiltonian = false;
};

GklsData build_gkls(const Coefficients& coeffs, bool free_hamiltonian = false);

// d rho / d tau: dissipator plus +i sum Omega_ij [s_i x s_j, rho].
Eigen::Matrix4cd gkls_rhs(const Eigen::Matrix4cd& rho, const GklsData& data);

// The 16x16 superoperator L with vec(d rho) = L vec(rho) (column-major vec),
// obtained by applying gkls_rhs to each matrix unit.
Eigen::Matrix<cdouble, 16, 16> liouvillian(const GklsData& data);

// Fixed-step classical RK4 from 0 to tau_max. The run is repeated at dt/2;
// the two results must agree to 1e-8 elementwise or Error(NonConvergence) is
// thrown. dt is bounded by min(1/(40 a1), pi/(20|D|)).
DenseState integrate(const DenseState& rho0, const GklsData& data, double tau_max, double dt);

// Integrates through an increasing list of times, checking each segment.
std::vector<DenseState> integrate_samples(const DenseState& rho0, const GklsData& data,
                                          const std::vector<double>& times, double dt);

// min(1/(40 a1), pi/(20|D|)), read back from the assembled blocks.
double max_step(const GklsData& data);

// Throws Error(NotXForm) if an off-X element exceeds 1e-8.
XState to_xstate(const DenseState& state);
DenseState to_dense(const XState& state);

}  // namespace unruh
