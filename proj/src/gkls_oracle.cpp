#include "unruh_pair/gkls_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

using Matrix16cd = Eigen::Matrix<cdouble, 16, 16>;
using Vector16cd = Eigen::Matrix<cdouble, 16, 1>;

constexpr double kConvergenceTol = 1e-8;
constexpr double kOffXTol = 1e-8;
const cdouble kI{0.0, 1.0};

Eigen::Matrix2cd pauli(int i) {
  Eigen::Matrix2cd s;
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -kI, kI, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s.setIdentity(); break;
  }
  return s;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

// A delta_ij - i B eps_ij3 - A delta_3i delta_3j
Eigen::Matrix3cd kossakowski_block(double a, double b) {
  Eigen::Matrix3cd c = Eigen::Matrix3cd::Zero();
  c(0, 0) = a;
  c(1, 1) = a;
  c(0, 1) = -kI * b;
  c(1, 0) = kI * b;
  return c;
}

Vector16cd vec(const Eigen::Matrix4cd& m) {
  return Eigen::Map<const Vector16cd>(m.data());
}

Eigen::Matrix4cd unvec(const Vector16cd& v) {
  Eigen::Matrix4cd m;
  Eigen::Map<Vector16cd>(m.data()) = v;
  return m;
}

Vector16cd rk4(const Matrix16cd& l, Vector16cd y, double tau_max, long steps) {
  const double h = tau_max / static_cast<double>(steps);
  for (long s = 0; s < steps; ++s) {
    const Vector16cd k1 = l * y;
    const Vector16cd k2 = l * (y + 0.5 * h * k1);
    const Vector16cd k3 = l * (y + 0.5 * h * k2);
    const Vector16cd k4 = l * (y + h * k3);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

Eigen::Matrix4cd coupled_basis() {
  using namespace product_basis;
  const double r = std::numbers::sqrt2 / 2.0;
  // Columns are |G>, |E>, |A>, |S> expressed in the product basis.
  Eigen::Matrix4cd u = Eigen::Matrix4cd::Zero();
  u(k00, 0) = 1.0;
  u(k11, 1) = 1.0;
  u(k10, 2) = r;
  u(k01, 2) = -r;
  u(k10, 3) = r;
  u(k01, 3) = r;
  return u;
}

Vector16cd segment(const Matrix16cd& l, const Vector16cd& y0, double length, double dt) {
  if (length == 0.0) return y0;
  const long steps = std::max(1L, static_cast<long>(std::ceil(length / dt - 1e-9)));
  const Vector16cd coarse = rk4(l, y0, length, steps);
  const Vector16cd fine = rk4(l, y0, length, 2 * steps);
  const double diff = (coarse - fine).cwiseAbs().maxCoeff();
  if (!(diff <= kConvergenceTol)) {
    throw Error(ErrorCode::NonConvergence,
                "RK4 step-halving mismatch " + std::to_string(diff) + " exceeds 1e-8");
  }
  return fine;
}

void check_step(const GklsData& data, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::InvalidArgument, "dt must be positive");
  }
  if (dt > max_step(data)) {
    throw Error(ErrorCode::InvalidArgument,
                "dt exceeds min(1/(40 a1), pi/(20|D|)) = " + std::to_string(max_step(data)));
  }
}

}  // namespace

double max_step(const GklsData& data) {
  const double a1 = data.kossakowski[0][0](0, 0).real();
  const double d = data.omega12(0, 0);
  double bound = 1.0 / (40.0 * a1);
  if (d != 0.0) bound = std::min(bound, std::numbers::pi / (20.0 * std::abs(d)));
  return bound;
}

GklsData build_gkls(const Coefficients& coeffs, bool free_hamiltonian) {
  GklsData data;
  data.kossakowski[0][0] = kossakowski_block(coeffs.a1, coeffs.b1);
  data.kossakowski[1][1] = data.kossakowski[0][0];
  data.kossakowski[0][1] = kossakowski_block(coeffs.a2, coeffs.b2);
  data.kossakowski[1][0] = data.kossakowski[0][1];
  // D delta_ij - D delta_3i delta_3j
  data.omega12(0, 0) = coeffs.d;
  data.omega12(1, 1) = coeffs.d;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  for (int i = 0; i < 3; ++i) {
    data.sigma[0][i] = kron(pauli(i + 1), id);
    data.sigma[1][i] = kron(id, pauli(i + 1));
  }
  data.free_hamiltonian = free_hamiltonian;
  return data;
}

Eigen::Matrix4cd gkls_rhs(const Eigen::Matrix4cd& rho, const GklsData& data) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int alpha = 0; alpha < 2; ++alpha) {
    for (int beta = 0; beta < 2; ++beta) {
      const Eigen::Matrix3cd& c = data.kossakowski[alpha][beta];
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          if (c(i, j) == cdouble(0.0)) continue;
          const Eigen::Matrix4cd& si = data.sigma[alpha][i];
          const Eigen::Matrix4cd& sj = data.sigma[beta][j];
          const Eigen::Matrix4cd sisj = si * sj;
          out += 0.5 * c(i, j) * (2.0 * sj * rho * si - sisj * rho - rho * sisj);
        }
      }
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (data.omega12(i, j) == 0.0) continue;
      const Eigen::Matrix4cd h = data.sigma[0][i] * data.sigma[1][j];
      out += kI * data.omega12(i, j) * (h * rho - rho * h);
    }
  }
  if (data.free_hamiltonian) {
    const Eigen::Matrix4cd hs = 0.5 * (data.sigma[0][2] + data.sigma[1][2]);
    out += -kI * (hs * rho - rho * hs);
  }
  return out;
}

Matrix16cd liouvillian(const GklsData& data) {
  Matrix16cd l;
  for (int col = 0; col < 4; ++col) {
    for (int row = 0; row < 4; ++row) {
      Eigen::Matrix4cd unit = Eigen::Matrix4cd::Zero();
      unit(row, col) = 1.0;
      l.col(col * 4 + row) = vec(gkls_rhs(unit, data));
    }
  }
  return l;
}

DenseState integrate(const DenseState& rho0, const GklsData& data, double tau_max, double dt) {
  if (!(tau_max >= 0.0) || !std::isfinite(tau_max)) {
    throw Error(ErrorCode::InvalidArgument, "tau_max must be non-negative");
  }
  check_step(data, dt);
  if (tau_max == 0.0) return rho0;
  return {unvec(segment(liouvillian(data), vec(rho0.rho), tau_max, dt))};
}

std::vector<DenseState> integrate_samples(const DenseState& rho0, const GklsData& data,
                                          const std::vector<double>& times, double dt) {
  check_step(data, dt);
  const Matrix16cd l = liouvillian(data);
  std::vector<DenseState> out;
  out.reserve(times.size());
  Vector16cd y = vec(rho0.rho);
  double now = 0.0;
  for (double t : times) {
    if (!(t >= now) || !std::isfinite(t)) {
      throw Error(ErrorCode::InvalidArgument, "sample times must be non-decreasing and >= 0");
    }
    y = segment(l, y, t - now, dt);
    now = t;
    out.push_back({unvec(y)});
  }
  return out;
}

XState to_xstate(const DenseState& state) {
  using namespace product_basis;
  const Eigen::Matrix4cd& r = state.rho;
  const int off_x[][2] = {{k11, k10}, {k11, k01}, {k10, k00}, {k01, k00}};
  for (const auto& ij : off_x) {
    const double m = std::max(std::abs(r(ij[0], ij[1])), std::abs(r(ij[1], ij[0])));
    if (m > kOffXTol) {
      throw Error(ErrorCode::NotXForm,
                  "dense state left X form: off-X element of size " + std::to_string(m));
    }
  }
  const Eigen::Matrix4cd u = coupled_basis();
  const Eigen::Matrix4cd c = u.adjoint() * r * u;
  XState x;
  x.p_gg = c(0, 0).real();
  x.p_ee = c(1, 1).real();
  x.p_aa = c(2, 2).real();
  x.p_ss = c(3, 3).real();
  x.c_as = c(2, 3);
  x.c_ge = c(0, 1);
  return x;
}

DenseState to_dense(const XState& x) {
  Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
  c(0, 0) = x.p_gg;
  c(1, 1) = x.p_ee;
  c(2, 2) = x.p_aa;
  c(3, 3) = x.p_ss;
  c(2, 3) = x.c_as;
  c(3, 2) = std::conj(x.c_as);
  c(0, 1) = x.c_ge;
  c(1, 0) = std::conj(x.c_ge);
  const Eigen::Matrix4cd u = coupled_basis();
  return {u * c * u.adjoint()};
}

}  // namespace unruh
