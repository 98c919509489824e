#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "unruh_pair/errors.hpp"
#include "unruh_pair/xstate.hpp"

namespace testing_support {

// Uniform populations on the simplex, coherences inside the positivity disc
// scaled by at most `fill`.
inline unruh::XState random_xstate(std::mt19937_64& rng, double fill = 0.999) {
  std::exponential_distribution<double> expo(1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double w[4];
  double total = 0.0;
  for (double& x : w) total += (x = expo(rng));
  unruh::XState s;
  s.p_gg = w[0] / total;
  s.p_ee = w[1] / total;
  s.p_aa = w[2] / total;
  s.p_ss = w[3] / total;
  const double two_pi = 2.0 * std::numbers::pi;
  s.c_as = std::polar(fill * unit(rng) * std::sqrt(s.p_aa * s.p_ss), two_pi * unit(rng));
  s.c_ge = std::polar(fill * unit(rng) * std::sqrt(s.p_gg * s.p_ee), two_pi * unit(rng));
  return s;
}

inline double max_abs_diff(const unruh::XState& x, const unruh::XState& y) {
  using std::abs;
  double m = 0.0;
  for (double d : {x.p_gg - y.p_gg, x.p_ee - y.p_ee, x.p_aa - y.p_aa, x.p_ss - y.p_ss,
                   abs(x.c_as - y.c_as), abs(x.c_ge - y.c_ge)}) {
    m = std::max(m, std::abs(d));
  }
  return m;
}

template <typename Fn>
unruh::ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const unruh::Error& e) {
    return e.code();
  }
  return static_cast<unruh::ErrorCode>(-1);
}

}  // namespace testing_support
