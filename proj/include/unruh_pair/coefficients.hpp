#pragma once

// Field-correlation spectra and GKLS rate constants for two atoms with equal
// proper acceleration a, separated by L perpendicular to the acceleration.
//
// Units: the atomic transition frequency is 1, so accelerations are a/omega,
// separations are omega*L, and every rate carries a factor of gamma0.

namespace unruh {

struct SimConfig {
  double accel_ratio = 1.0;       // a/omega >= 0; 0 is the inertial limit
  double separation = 1.0;        // omega*L > 0
  double gamma0 = 1.0;            // inertial spontaneous-emission rate
  bool include_interaction = true;

  // Throws Error(SeparationNonpositive) or Error(InvalidArgument).
  void validate() const;

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

struct Coefficients {
  double a1 = 0.0;
  double a2 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double d = 0.0;  // environment-induced interaction; keeps the cosine's sign
  double f = 0.0;  // geometric factor, a2/a1 == b2/b1 == f

  // a1^2 - b1^2 evaluated as a product to keep the small-a limit accurate.
  double thermal_gap_sq() const { return (a1 - b1) * (a1 + b1); }
};

// coth(pi/accel_ratio), stable from the inertial limit up to a/omega ~ 1e12.
double coth_pi_over(double accel_ratio);

// Fourier transform of the single-trajectory Wightman function,
// (1/2pi) lambda / (1 - exp(-2 pi lambda / a)).
double spectral_density_same(double lambda, double accel);

// Cross-trajectory transform: the same-trajectory spectrum times the
// separation factor evaluated at frequency lambda.
double spectral_density_cross(double lambda, double accel, double separation);

// sin(2(lambda/a) asinh(aL/2)) / (lambda L sqrt(1 + a^2 L^2 / 4)).
// Even in lambda; continuous at a = 0 and at lambda = 0.
double separation_factor(double lambda, double accel, double separation);

// separation_factor at lambda = omega = 1.
double geometric_factor(double accel_ratio, double separation);

// D / gamma0 = cos(2 asinh(aL/2)/a) / (4 L sqrt(1 + a^2 L^2 / 4)).
double interaction_strength(double accel_ratio, double separation);

Coefficients coefficients(const SimConfig& config);

}  // namespace unruh
