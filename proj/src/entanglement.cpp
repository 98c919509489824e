#include "unruh_pair/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

constexpr double kRadicandSlack = 1e-12;

double clipped_sqrt(double radicand, const char* what) {
  if (radicand < -kRadicandSlack) {
    throw Error(ErrorCode::InvalidState,
                std::string("negative radicand in ") + what + ": " + std::to_string(radicand));
  }
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

ConcurrenceBreakdown concurrence_x(const XState& s) {
  const double im = s.c_as.imag();
  const double re = s.c_as.real();
  const double diff = s.p_aa - s.p_ss;
  const double sum = s.p_aa + s.p_ss;
  ConcurrenceBreakdown out;
  out.k1 = std::sqrt(diff * diff + 4.0 * im * im) -
           2.0 * clipped_sqrt(s.p_gg * s.p_ee, "K1 (p_gg p_ee)");
  out.k2 = 2.0 * std::abs(s.c_ge) - clipped_sqrt(sum * sum - 4.0 * re * re, "K2");
  out.c = std::max({0.0, out.k1, out.k2});
  return out;
}

double concurrence_general(const DenseState& state) {
  const Eigen::Matrix4cd& rho = state.rho;
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - cdouble(1.0)) > 1e-8) {
    throw Error(ErrorCode::InvalidState, "density matrix trace deviates from 1");
  }
  // rho = W W^dagger; the spin-flipped state is (Y W*)(Y W*)^dagger with
  // Y = sigma_y x sigma_y (real). The Wootters lambdas are the singular
  // values of W^dagger Y W*.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(0.5 * (rho + rho.adjoint()));
  const Eigen::Vector4d mu = eig.eigenvalues();
  if (mu.minCoeff() < -1e-8) {
    throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
  }
  const Eigen::Matrix4cd w = eig.eigenvectors() * mu.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  const Eigen::Matrix4cd x = w.adjoint() * y * w.conjugate();
  const Eigen::Vector4d lambda = Eigen::JacobiSVD<Eigen::Matrix4cd>(x).singularValues();
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

bool generation_possible(const Coefficients& k) {
  return k.a2 * k.a2 + k.d * k.d > k.thermal_gap_sq();
}

double generation_rate_product(const Coefficients& k) {
  return 4.0 * std::hypot(k.a2, k.d) - 4.0 * std::sqrt(std::max(k.thermal_gap_sq(), 0.0));
}

InitialRate initial_rate_product(const Coefficients& coeffs) {
  const double raw = generation_rate_product(coeffs);
  return {raw, std::max(raw, 0.0)};
}

double initial_rate_superposition(const Coefficients& k, double theta, double phi) {
  const double c2 = std::cos(2.0 * theta);
  const double s2 = std::sin(2.0 * theta);
  const double sp = std::sin(phi);
  const double weight = c2 * c2 + s2 * s2 * sp * sp;
  if (weight < 1e-12) {
    throw Error(ErrorCode::FormulaSingular,
                "closed-form rate is singular at this (theta, phi); use the numerical rate");
  }
  const double numerator =
      -4.0 * k.a1 * weight + 4.0 * k.a2 * c2 - 2.0 * k.d * s2 * s2 * std::sin(2.0 * phi);
  const double x = k.a1 - k.a2 * c2;
  const double y = k.b1 - k.b2 * c2;
  return numerator / std::sqrt(weight) - 4.0 * std::sqrt(std::max((x - y) * (x + y), 0.0));
}

double numerical_initial_rate(const XState& state0, const Coefficients& coeffs, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  }
  const XStatePropagator propagator(coeffs);
  const double c0 = concurrence_x(state0).c;
  auto slope = [&](double step) {
    return (concurrence_x(propagator.at(state0, step)).c - c0) / step;
  };
  const double d1 = slope(h);
  const double d2 = slope(0.5 * h);
  const double d4 = slope(0.25 * h);
  const double r1 = 2.0 * d2 - d1;
  const double r2 = 2.0 * d4 - d2;
  return (4.0 * r2 - r1) / 3.0;
}

}  // namespace unruh
