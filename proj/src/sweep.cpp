#include "unruh_pair/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <thread>

#include "unruh_pair/errors.hpp"
#include "unruh_pair/golden_section.hpp"

namespace unruh {
namespace {

constexpr double kHorizonFloor = 1e-6;
constexpr double kBoundSlack = 1e-12;

SimConfig point_config(SweepAxis vary, double fixed_value, double x, double gamma0,
                       bool with_d) {
  SimConfig cfg;
  cfg.accel_ratio = vary == SweepAxis::Accel ? x : fixed_value;
  cfg.separation = vary == SweepAxis::Accel ? fixed_value : x;
  cfg.gamma0 = gamma0;
  cfg.include_interaction = with_d;
  return cfg;
}

SweepResult sweep_skeleton(SweepAxis vary, double fixed_value, const GridAxis& axis,
                           double gamma0) {
  axis.validate();
  SweepResult r;
  r.axis_name = vary == SweepAxis::Accel ? "a_over_omega" : "omega_l";
  r.fixed_name = vary == SweepAxis::Accel ? "omega_l" : "a_over_omega";
  r.fixed_value = fixed_value;
  r.gamma0 = gamma0;
  r.axis = axis.points();
  // Validates the fixed parameter once, up front.
  point_config(vary, fixed_value, r.axis.front(), gamma0, true).validate();
  return r;
}

InitialRate initial_rate(const InitialSpec& initial, const Coefficients& coeffs) {
  switch (initial.kind) {
    case InitialSpec::Kind::ProductEg:
      return initial_rate_product(coeffs);
    case InitialSpec::Kind::Superposition: {
      double raw;
      try {
        raw = initial_rate_superposition(coeffs, initial.theta, initial.phi);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FormulaSingular) throw;
        raw = numerical_initial_rate(initial.state(), coeffs);
      }
      return {raw, raw};
    }
    case InitialSpec::Kind::Explicit: {
      const double raw = numerical_initial_rate(initial.explicit_state, coeffs);
      return {raw, raw};
    }
  }
  return {};
}

// Upper bound on C(tau) for all tau >= horizon. Two bounds on |p_aa - p_ss|
// are combined: the modal expansion (when the eigenbasis is usable), and L1
// contraction of the stochastic flow towards the stationary populations,
// which for a zero-sum deviation gives |d_aa - d_ss| <= |d|_1 / 2.
double tail_bound(const XStatePropagator& propagator, const XState& state0, double horizon) {
  double split = std::numeric_limits<double>::infinity();
  if (const auto modes = propagator.flow().modes(state0.populations())) {
    double modal = 0.0;
    for (const auto& mode : *modes) {
      if (mode.rate.real() > 1e-12) modal = std::numeric_limits<double>::infinity();
      modal += std::abs(mode.weight[2] - mode.weight[3]) *
               std::exp(std::min(mode.rate.real(), 0.0) * horizon);
    }
    split = modal;
  }
  const XState at = propagator.at(state0, horizon);
  const Eigen::Vector4d stationary = steady_state(propagator.coeffs()).populations();
  const double contraction = std::abs(stationary[2] - stationary[3]) +
                             0.5 * (at.populations() - stationary).cwiseAbs().sum();
  split = std::min(split, contraction);

  const double k1_bound = split + 2.0 * std::abs(at.c_as);
  const double k2_bound = 2.0 * std::abs(at.c_ge);
  return std::max(k1_bound, k2_bound);
}

}  // namespace

std::vector<double> GridAxis::points() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / (n - 1);
    out[k] = spacing == Spacing::Linear
                 ? lo + (hi - lo) * t
                 : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * t);
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

void GridAxis::validate() const {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::InvalidArgument, "grid range must satisfy 0 < lo < hi");
  }
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 2");
}

XState InitialSpec::state() const {
  switch (kind) {
    case Kind::ProductEg: return initial_product_eg();
    case Kind::Superposition: return initial_superposition(theta, phi);
    case Kind::Explicit: return explicit_state;
  }
  return {};
}

const SweepSeries& SweepResult::find(const std::string& name) const {
  for (const auto& s : series) {
    if (s.name == name) return s;
  }
  throw Error(ErrorCode::InvalidArgument, "sweep has no series named " + name);
}

RegionMask region_scan(const GridAxis& l_axis, const GridAxis& a_axis, double gamma0) {
  RegionMask mask;
  mask.l_values = l_axis.points();
  mask.a_values = a_axis.points();
  const std::size_t nl = mask.l_values.size();
  const std::size_t na = mask.a_values.size();
  mask.with_d.assign(nl * na, 0);
  mask.without_d.assign(nl * na, 0);
  parallel_for(nl, [&](std::size_t i) {
    for (std::size_t j = 0; j < na; ++j) {
      SimConfig cfg{mask.a_values[j], mask.l_values[i], gamma0, true};
      Coefficients k = coefficients(cfg);
      mask.with_d[mask.index(i, j)] = generation_possible(k);
      k.d = 0.0;
      mask.without_d[mask.index(i, j)] = generation_possible(k);
    }
  });
  return mask;
}

SweepResult rate_sweep(SweepAxis vary, double fixed_value, const GridAxis& axis,
                       const InitialSpec& initial, double gamma0) {
  SweepResult r = sweep_skeleton(vary, fixed_value, axis, gamma0);
  const std::size_t n = r.axis.size();
  SweepSeries raw{"rate", std::vector<double>(n), std::vector<double>(n)};
  SweepSeries clamped{"rate_clamped", std::vector<double>(n), std::vector<double>(n)};
  parallel_for(n, [&](std::size_t i) {
    for (bool with_d : {true, false}) {
      const Coefficients k = coefficients(point_config(vary, fixed_value, r.axis[i], gamma0, with_d));
      const InitialRate rate = initial_rate(initial, k);
      (with_d ? raw.with_d : raw.without_d)[i] = rate.raw;
      (with_d ? clamped.with_d : clamped.without_d)[i] = rate.clamped;
    }
  });
  r.series = {std::move(raw), std::move(clamped)};
  return r;
}

MaxConcurrence max_concurrence(const XState& state0, const Coefficients& coeffs,
                               double tau_max, MaxSearchOptions options) {
  state0.validate();
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) {
    throw Error(ErrorCode::InvalidArgument, "tau_max must be positive");
  }
  const XStatePropagator propagator(coeffs);
  auto conc = [&](double tau) { return concurrence_x(propagator.at(state0, tau)).c; };

  double dt = 1.0 / (40.0 * coeffs.a1);
  if (coeffs.d != 0.0) dt = std::min(dt, std::numbers::pi / (20.0 * std::abs(coeffs.d)));

  double horizon = tau_max;
  for (int attempt = 0; attempt <= options.max_doublings; ++attempt, horizon *= 2.0) {
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt));
    std::vector<double> taus(steps + 1);
    std::vector<double> values(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
      taus[k] = k == steps ? horizon : static_cast<double>(k) * dt;
      values[k] = conc(taus[k]);
    }
    const std::size_t best = static_cast<std::size_t>(
        std::max_element(values.begin(), values.end()) - values.begin());
    const double tail = values.back();
    if (!(tail < kHorizonFloor) &&
        tail_bound(propagator, state0, horizon) > values[best] + kBoundSlack) {
      continue;
    }

    MaxConcurrence out{values[best], taus[best], horizon};
    if (values[best] <= 0.0) return out;

    // Refine the highest sampled local maxima; the best sample may sit on a
    // neighbouring oscillation peak.
    std::vector<std::size_t> peaks;
    for (std::size_t k = 0; k <= steps; ++k) {
      const bool left = k == 0 || values[k] >= values[k - 1];
      const bool right = k == steps || values[k] >= values[k + 1];
      if (left && right && values[k] > 0.0) peaks.push_back(k);
    }
    std::sort(peaks.begin(), peaks.end(), [&](std::size_t a, std::size_t b) {
      return values[a] != values[b] ? values[a] > values[b] : a < b;
    });
    if (peaks.size() > 4) peaks.resize(4);
    for (std::size_t k : peaks) {
      const double lo = k == 0 ? 0.0 : taus[k - 1];
      const double hi = k == steps ? horizon : taus[k + 1];
      const Extremum e = golden_section_maximize(conc, lo, hi, 1e-12 * std::max(1.0, hi));
      if (e.value > out.c_max) {
        out.c_max = e.value;
        out.tau_star = e.x;
      }
    }
    return out;
  }
  throw Error(ErrorCode::HorizonTooShort,
              "concurrence has not provably peaked by tau = " + std::to_string(horizon / 2.0));
}

SweepResult max_concurrence_sweep(SweepAxis vary, double fixed_value, const GridAxis& axis,
                                  const InitialSpec& initial, double tau_max, double gamma0) {
  SweepResult r = sweep_skeleton(vary, fixed_value, axis, gamma0);
  const std::size_t n = r.axis.size();
  const XState state0 = initial.state();
  SweepSeries cmax{"max_concurrence", std::vector<double>(n), std::vector<double>(n)};
  SweepSeries tstar{"tau_star", std::vector<double>(n), std::vector<double>(n)};
  parallel_for(n, [&](std::size_t i) {
    for (bool with_d : {true, false}) {
      const Coefficients k = coefficients(point_config(vary, fixed_value, r.axis[i], gamma0, with_d));
      const MaxConcurrence m = max_concurrence(state0, k, tau_max);
      (with_d ? cmax.with_d : cmax.without_d)[i] = m.c_max;
      (with_d ? tstar.with_d : tstar.without_d)[i] = m.tau_star;
    }
  });
  r.series = {std::move(cmax), std::move(tstar)};
  return r;
}

double asymptotic_concurrence(const Coefficients& coeffs, const XState& state0) {
  state0.validate();
  // Coherences decay at 4 a1 > 0; only the unique stationary populations remain.
  return concurrence_x(steady_state(coeffs)).c;
}

CurveClass classify_curve(const std::vector<double>& curve) {
  if (curve.size() < 8) {
    throw Error(ErrorCode::InvalidArgument, "monotonicity needs at least 8 points");
  }
  double scale = 0.0;
  for (double v : curve) scale = std::max(scale, std::abs(v));
  const double tol = 1e-9 * scale;
  bool decreasing = true;
  bool increasing = true;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    const double step = curve[k] - curve[k - 1];
    if (step > tol) decreasing = false;
    if (step < -tol) increasing = false;
  }
  CurveClass out;
  out.argmax = static_cast<std::size_t>(std::max_element(curve.begin(), curve.end()) - curve.begin());
  out.trend = decreasing   ? Trend::MonotoneDecreasing
              : increasing ? Trend::MonotoneIncreasing
                           : Trend::NonMonotone;
  return out;
}

MonotonicityReport monotonicity_report(const SweepResult& sweep, const std::string& series) {
  const SweepSeries& s = sweep.find(series);
  return {classify_curve(s.with_d), classify_curve(s.without_d)};
}

const char* trend_name(Trend trend) {
  switch (trend) {
    case Trend::MonotoneDecreasing: return "monotone-decreasing";
    case Trend::MonotoneIncreasing: return "monotone-increasing";
    case Trend::NonMonotone: return "non-monotone";
  }
  return "unknown";
}

unsigned worker_count() {
  if (const char* env = std::getenv("UNRUH_PAIR_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned workers) {
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(n, 1)));
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](unsigned w) {
    for (std::size_t i = w; i < n; i += workers) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace unruh
