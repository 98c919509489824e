#include "unruh_pair/coefficients.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

constexpr double kPi = std::numbers::pi;

void require_finite(double value, const char* name) {
  if (!std::isfinite(value)) {
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
  }
}

void require_separation(double separation) {
  require_finite(separation, "separation");
  if (separation <= 0.0) {
    throw Error(ErrorCode::SeparationNonpositive,
                "separation must be strictly positive (D diverges as 1/(omega L))");
  }
}

void require_accel(double accel) {
  require_finite(accel, "acceleration");
  if (accel < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "acceleration must be non-negative");
  }
}

// 2 (lambda/a) asinh(aL/2); tends to lambda*L as a*L -> 0.
double rindler_phase(double lambda, double accel, double separation) {
  const double u = accel * separation;
  if (u < 1e-6) {
    // asinh(u/2) = u/2 - u^3/48 + 3u^5/1280 - ...
    const double u2 = u * u;
    return lambda * separation * (1.0 - u2 / 24.0 + 3.0 * u2 * u2 / 640.0);
  }
  return 2.0 * lambda / accel * std::asinh(0.5 * u);
}

double separation_denominator(double accel, double separation) {
  const double u = accel * separation;
  return separation * std::sqrt(1.0 + 0.25 * u * u);
}

}  // namespace

void SimConfig::validate() const {
  require_accel(accel_ratio);
  require_separation(separation);
  require_finite(gamma0, "gamma0");
  if (gamma0 <= 0.0) {
    throw Error(ErrorCode::InvalidArgument, "gamma0 must be strictly positive");
  }
}

double coth_pi_over(double accel_ratio) {
  require_accel(accel_ratio);
  if (accel_ratio == 0.0) return 1.0;
  if (accel_ratio > 1e6) {
    // Laurent series of coth(x) at x = pi/a.
    return accel_ratio / kPi + kPi / (3.0 * accel_ratio);
  }
  // coth(x) = 1 + 2 e^{-2x} / (1 - e^{-2x})
  const double two_x = 2.0 * kPi / accel_ratio;
  return 1.0 + 2.0 * std::exp(-two_x) / -std::expm1(-two_x);
}

double spectral_density_same(double lambda, double accel) {
  require_finite(lambda, "lambda");
  require_accel(accel);
  if (accel == 0.0) {
    return lambda > 0.0 ? lambda / (2.0 * kPi) : 0.0;
  }
  if (lambda == 0.0) {
    // lambda / (1 - e^{-2 pi lambda / a}) -> a / (2 pi)
    return accel / (4.0 * kPi * kPi);
  }
  const double x = 2.0 * kPi * lambda / accel;
  // For large negative lambda the denominator overflows to -inf; the
  // quotient correctly underflows to +0.
  return lambda / (-std::expm1(-x)) / (2.0 * kPi);
}

double separation_factor(double lambda, double accel, double separation) {
  require_finite(lambda, "lambda");
  require_accel(accel);
  require_separation(separation);
  const double denom = separation_denominator(accel, separation);
  if (lambda == 0.0) {
    return rindler_phase(1.0, accel, separation) / denom;
  }
  return std::sin(rindler_phase(lambda, accel, separation)) / (lambda * denom);
}

double spectral_density_cross(double lambda, double accel, double separation) {
  return spectral_density_same(lambda, accel) *
         separation_factor(lambda, accel, separation);
}

double geometric_factor(double accel_ratio, double separation) {
  return separation_factor(1.0, accel_ratio, separation);
}

double interaction_strength(double accel_ratio, double separation) {
  require_accel(accel_ratio);
  require_separation(separation);
  return 0.25 * std::cos(rindler_phase(1.0, accel_ratio, separation)) /
         separation_denominator(accel_ratio, separation);
}

Coefficients coefficients(const SimConfig& config) {
  config.validate();
  const double quarter = 0.25 * config.gamma0;
  Coefficients c;
  c.f = geometric_factor(config.accel_ratio, config.separation);
  c.a1 = quarter * coth_pi_over(config.accel_ratio);
  c.b1 = quarter;
  c.a2 = c.f * c.a1;
  c.b2 = c.f * c.b1;
  c.d = config.include_interaction
            ? config.gamma0 * interaction_strength(config.accel_ratio, config.separation)
            : 0.0;
  return c;
}

}  // namespace unruh
