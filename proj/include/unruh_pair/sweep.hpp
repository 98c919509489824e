#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "unruh_pair/coefficients.hpp"
#include "unruh_pair/entanglement.hpp"
#include "unruh_pair/xstate.hpp"

namespace unruh {

enum class Spacing { Linear, Log };

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  Spacing spacing = Spacing::Linear;

  // Endpoints included; requires 0 < lo < hi and n >= 2.
  std::vector<double> points() const;
  void validate() const;
};

struct InitialSpec {
  enum class Kind { ProductEg, Superposition, Explicit };
  Kind kind = Kind::ProductEg;
  double theta = 0.0;
  double phi = 0.0;
  XState explicit_state{};

  XState state() const;
};

// Boolean generation verdicts over an (omega L, a/omega) grid. Node (i, j)
// has separation l_values[i] and acceleration a_values[j]; flat storage is
// index i * a_values.size() + j.
struct RegionMask {
  std::vector<double> l_values;
  std::vector<double> a_values;
  std::vector<std::uint8_t> with_d;
  std::vector<std::uint8_t> without_d;

  std::size_t index(std::size_t i, std::size_t j) const { return i * a_values.size() + j; }
};

RegionMask region_scan(const GridAxis& l_axis, const GridAxis& a_axis, double gamma0 = 1.0);

enum class SweepAxis { Accel, Separation };

struct SweepSeries {
  std::string name;
  std::vector<double> with_d;
  std::vector<double> without_d;
};

struct SweepResult {
  std::string axis_name;  // "a_over_omega" or "omega_l"
  std::vector<double> axis;
  std::string fixed_name;
  double fixed_value = 0.0;
  double gamma0 = 1.0;
  std::vector<SweepSeries> series;

  const SweepSeries& find(const std::string& name) const;
};

// Series "rate" (raw, what the figures plot) and "rate_clamped".
SweepResult rate_sweep(SweepAxis vary, double fixed_value, const GridAxis& axis,
                       const InitialSpec& initial, double gamma0 = 1.0);

struct MaxConcurrence {
  double c_max = 0.0;
  double tau_star = 0.0;
  double horizon = 0.0;  // horizon actually used after any doubling
};

struct MaxSearchOptions {
  int max_doublings = 3;
};

// Dense sampling at min(1/(40 a1), pi/(20|D|)) followed by golden-section
// refinement of the leading sampled peaks. The horizon is accepted when
// C(tau_max) < 1e-6 or an upper bound on C over [tau_max, inf) does not
// exceed the best value found; otherwise it is doubled, and
// Error(HorizonTooShort) is thrown once the doublings are exhausted.
MaxConcurrence max_concurrence(const XState& state0, const Coefficients& coeffs,
                               double tau_max, MaxSearchOptions options = {});

// Series "max_concurrence" and "tau_star".
SweepResult max_concurrence_sweep(SweepAxis vary, double fixed_value, const GridAxis& axis,
                                  const InitialSpec& initial, double tau_max = 20.0,
                                  double gamma0 = 1.0);

double asymptotic_concurrence(const Coefficients& coeffs, const XState& state0);

enum class Trend { MonotoneDecreasing, MonotoneIncreasing, NonMonotone };

struct CurveClass {
  Trend trend = Trend::NonMonotone;
  std::size_t argmax = 0;
};

struct MonotonicityReport {
  CurveClass with_d;
  CurveClass without_d;
};

CurveClass classify_curve(const std::vector<double>& curve);
MonotonicityReport monotonicity_report(const SweepResult& sweep, const std::string& series);

const char* trend_name(Trend trend);

// Worker count from UNRUH_PAIR_THREADS (0 or unset: hardware concurrency).
unsigned worker_count();

// Runs body(i) for i in [0, n). Results must be written by index; the first
// exception by index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  unsigned workers = worker_count());

}  // namespace unruh
