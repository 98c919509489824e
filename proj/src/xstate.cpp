#include "unruh_pair/xstate.hpp"

#include <cmath>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

constexpr double kTraceSlack = 1e-10;
constexpr double kPopulationSlack = 1e-12;
constexpr double kBlockSlack = 1e-10;
constexpr double kMaxEigenCondition = 1e8;
// Below this |M tau|_1 the flow is summed as a Taylor series, which keeps
// nearly empty populations accurate relative to their own size.
constexpr double kTaylorRadius = 0.125;

}  // namespace

void XState::validate() const {
  const double values[] = {p_gg, p_ee, p_aa, p_ss, c_as.real(), c_as.imag(),
                           c_ge.real(), c_ge.imag()};
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidState, "non-finite X-state element");
  }
  if (std::abs(trace() - 1.0) > kTraceSlack) {
    throw Error(ErrorCode::InvalidState, "trace deviates from 1 by " +
                                             std::to_string(trace() - 1.0));
  }
  if (p_gg < -kPopulationSlack || p_ee < -kPopulationSlack || p_aa < -kPopulationSlack ||
      p_ss < -kPopulationSlack) {
    throw Error(ErrorCode::InvalidState, "negative population");
  }
  if (std::norm(c_as) > p_aa * p_ss + kBlockSlack) {
    throw Error(ErrorCode::InvalidState, "|c_as|^2 exceeds p_aa p_ss");
  }
  if (std::norm(c_ge) > p_gg * p_ee + kBlockSlack) {
    throw Error(ErrorCode::InvalidState, "|c_ge|^2 exceeds p_gg p_ee");
  }
}

XState initial_product_eg() {
  XState s;
  s.p_aa = 0.5;
  s.p_ss = 0.5;
  s.c_as = 0.5;
  return s;
}

XState initial_superposition(double theta, double phi) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  XState x;
  x.p_aa = c * c;
  x.p_ss = s * s;
  x.c_as = c * s * std::polar(1.0, phi);
  return x;
}

DiagonalGenerator diagonal_generator(const Coefficients& k) {
  const double a1 = k.a1, a2 = k.a2, b1 = k.b1, b2 = k.b2;
  DiagonalGenerator g;
  // Rows/columns ordered (GG, EE, AA, SS).
  g.m << -4 * (a1 - b1), 0.0, 2 * (a1 + b1 - a2 - b2), 2 * (a1 + b1 + a2 + b2),
      0.0, -4 * (a1 + b1), 2 * (a1 - b1 - a2 + b2), 2 * (a1 - b1 + a2 - b2),
      2 * (a1 - b1 - a2 + b2), 2 * (a1 + b1 - a2 - b2), -4 * (a1 - a2), 0.0,
      2 * (a1 - b1 + a2 - b2), 2 * (a1 + b1 + a2 + b2), 0.0, -4 * (a1 + a2);
  return g;
}

PopulationFlow::PopulationFlow(const DiagonalGenerator& generator) : m_(generator.m) {
  Eigen::EigenSolver<Eigen::Matrix4d> solver(m_);
  if (solver.info() != Eigen::Success) return;
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
  Eigen::FullPivLU<Eigen::Matrix4cd> lu(vectors_);
  if (!lu.isInvertible()) return;
  inverse_ = lu.inverse();
  const double cond = vectors_.cwiseAbs().colwise().sum().maxCoeff() *
                      inverse_.cwiseAbs().colwise().sum().maxCoeff();
  if (!std::isfinite(cond) || cond > kMaxEigenCondition) return;
  const Eigen::Matrix4cd rebuilt = vectors_ * values_.asDiagonal() * inverse_;
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  eigen_ok_ = (rebuilt - m_.cast<cdouble>()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

Eigen::Vector4d PopulationFlow::apply(const Eigen::Vector4d& p0, double tau) const {
  if (m_.cwiseAbs().colwise().sum().maxCoeff() * tau <= kTaylorRadius) {
    Eigen::Vector4d sum = p0;
    Eigen::Vector4d term = p0;
    for (int k = 1; k <= 30; ++k) {
      term = (m_ * term) * (tau / k);
      sum += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-17 * sum.cwiseAbs().minCoeff()) break;
    }
    return sum;
  }
  if (eigen_ok_) {
    const Eigen::Vector4cd amplitudes = inverse_ * p0.cast<cdouble>();
    Eigen::Vector4cd decayed;
    for (int k = 0; k < 4; ++k) decayed[k] = amplitudes[k] * std::exp(values_[k] * tau);
    return (vectors_ * decayed).real();
  }
  const Eigen::Matrix4d scaled = m_ * tau;
  return scaled.exp() * p0;
}

std::optional<std::vector<PopulationFlow::Mode>> PopulationFlow::modes(
    const Eigen::Vector4d& p0) const {
  if (!eigen_ok_) return std::nullopt;
  const Eigen::Vector4cd amplitudes = inverse_ * p0.cast<cdouble>();
  std::vector<Mode> out;
  out.reserve(4);
  for (int k = 0; k < 4; ++k) {
    out.push_back({values_[k], vectors_.col(k) * amplitudes[k]});
  }
  return out;
}

XStatePropagator::XStatePropagator(const Coefficients& coeffs)
    : coeffs_(coeffs), flow_(diagonal_generator(coeffs)) {}

XState XStatePropagator::at(const XState& state0, double tau) const {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    throw Error(ErrorCode::InvalidArgument, "tau must be finite and non-negative");
  }
  if (tau == 0.0) return state0;
  const Eigen::Vector4d p = flow_.apply(state0.populations(), tau);
  XState out;
  out.p_gg = p[0];
  out.p_ee = p[1];
  out.p_aa = p[2];
  out.p_ss = p[3];
  out.c_as = state0.c_as * std::exp(cdouble(-4.0 * coeffs_.a1 * tau, -4.0 * coeffs_.d * tau));
  out.c_ge = state0.c_ge * std::exp(-4.0 * coeffs_.a1 * tau);
  return out;
}

XState evolve(const XState& state0, const Coefficients& coeffs, double tau) {
  return XStatePropagator(coeffs).at(state0, tau);
}

std::vector<std::pair<double, XState>> trajectory(const XState& state0,
                                                  const Coefficients& coeffs,
                                                  double tau_max, int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "trajectory needs at least 2 samples");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
    throw Error(ErrorCode::InvalidArgument, "tau_max must be positive");
  }
  const XStatePropagator propagator(coeffs);
  std::vector<std::pair<double, XState>> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double tau = k == n - 1 ? tau_max : tau_max * k / (n - 1);
    out.emplace_back(tau, propagator.at(state0, tau));
  }
  return out;
}

XState steady_state(const Coefficients& coeffs) {
  const DiagonalGenerator g = diagonal_generator(coeffs);
  Eigen::FullPivLU<Eigen::Matrix4d> lu(g.m);
  lu.setThreshold(1e-13);
  const Eigen::MatrixXd kernel = lu.kernel();
  if (lu.dimensionOfKernel() != 1) {
    throw Error(ErrorCode::DegenerateNullspace,
                "generator nullspace has dimension " +
                    std::to_string(lu.dimensionOfKernel()) + " (|f| = 1)");
  }
  Eigen::Vector4d p = kernel.col(0);
  p /= p.sum();
  XState out;
  out.p_gg = p[0];
  out.p_ee = p[1];
  out.p_aa = p[2];
  out.p_ss = p[3];
  out.validate();
  return out;
}

}  // namespace unruh
