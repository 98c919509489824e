#include "unruh_pair/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "unruh_pair/entanglement.hpp"
#include "unruh_pair/errors.hpp"
#include "unruh_pair/gkls_oracle.hpp"
#include "unruh_pair/sweep.hpp"

namespace unruh {
namespace {

Table coeffs_table(const RunConfig& cfg) {
  const Coefficients k = coefficients(cfg.sim);
  Table t;
  t.add_column("a1", {k.a1});
  t.add_column("a2", {k.a2});
  t.add_column("b1", {k.b1});
  t.add_column("b2", {k.b2});
  t.add_column("d", {k.d});
  t.add_column("f", {k.f});
  t.add_column("generation_possible", {generation_possible(k) ? 1.0 : 0.0});
  return t;
}

Table evolve_table(const RunConfig& cfg) {
  const auto traj = trajectory(cfg.init.state(), coefficients(cfg.sim), cfg.tau_max, cfg.samples);
  std::vector<double> tau, c, k1, k2, gg, ee, aa, ss, re, im;
  for (const auto& [t, s] : traj) {
    const ConcurrenceBreakdown b = concurrence_x(s);
    tau.push_back(t);
    c.push_back(b.c);
    k1.push_back(b.k1);
    k2.push_back(b.k2);
    gg.push_back(s.p_gg);
    ee.push_back(s.p_ee);
    aa.push_back(s.p_aa);
    ss.push_back(s.p_ss);
    re.push_back(s.c_as.real());
    im.push_back(s.c_as.imag());
  }
  Table t;
  t.add_column("tau", tau);
  t.add_column("c", c);
  t.add_column("k1", k1);
  t.add_column("k2", k2);
  t.add_column("p_gg", gg);
  t.add_column("p_ee", ee);
  t.add_column("p_aa", aa);
  t.add_column("p_ss", ss);
  t.add_column("re_as", re);
  t.add_column("im_as", im);
  return t;
}

Table rate_table(const RunConfig& cfg) {
  const Coefficients k = coefficients(cfg.sim);
  const XState s0 = cfg.init.state();
  const double numerical = numerical_initial_rate(s0, k, cfg.fd_step);
  double analytic = std::numeric_limits<double>::quiet_NaN();
  double clamped = analytic;
  double singular = 0.0;
  switch (cfg.init.kind) {
    case InitialSpec::Kind::ProductEg: {
      const InitialRate r = initial_rate_product(k);
      analytic = r.raw;
      clamped = r.clamped;
      break;
    }
    case InitialSpec::Kind::Superposition:
      try {
        analytic = initial_rate_superposition(k, cfg.init.theta, cfg.init.phi);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::FormulaSingular) throw;
        singular = 1.0;
        analytic = numerical;
      }
      clamped = analytic;
      break;
    case InitialSpec::Kind::Explicit:
      analytic = numerical;
      clamped = numerical;
      break;
  }
  Table t;
  t.add_column("analytic", {analytic});
  t.add_column("analytic_clamped", {clamped});
  t.add_column("numerical", {numerical});
  t.add_column("formula_singular", {singular});
  t.add_column("generation_possible", {generation_possible(k) ? 1.0 : 0.0});
  return t;
}

Table region_table(const RunConfig& cfg) {
  const GridAxis l_axis{cfg.l_max / cfg.grid, cfg.l_max, cfg.grid, Spacing::Linear};
  const GridAxis a_axis{cfg.a_max / cfg.grid, cfg.a_max, cfg.grid, Spacing::Linear};
  const RegionMask mask = region_scan(l_axis, a_axis, cfg.sim.gamma0);
  std::vector<double> l, a, on, off;
  for (std::size_t i = 0; i < mask.l_values.size(); ++i) {
    for (std::size_t j = 0; j < mask.a_values.size(); ++j) {
      l.push_back(mask.l_values[i]);
      a.push_back(mask.a_values[j]);
      on.push_back(mask.with_d[mask.index(i, j)]);
      off.push_back(mask.without_d[mask.index(i, j)]);
    }
  }
  Table t;
  t.add_column("omega_l", l);
  t.add_column("a_over_omega", a);
  t.add_column("with_d", on);
  t.add_column("without_d", off);
  return t;
}

Table sweep_table(const RunConfig& cfg) {
  const SweepAxis vary = cfg.vary == "accel" ? SweepAxis::Accel : SweepAxis::Separation;
  const double fixed = vary == SweepAxis::Accel ? cfg.sim.separation : cfg.sim.accel_ratio;
  const GridAxis axis{cfg.from, cfg.to, cfg.samples,
                      cfg.spacing == "log" ? Spacing::Log : Spacing::Linear};
  SweepResult r;
  std::string series;
  if (cfg.quantity == "maxc") {
    r = max_concurrence_sweep(vary, fixed, axis, cfg.init, cfg.tau_max, cfg.sim.gamma0);
    series = "max_concurrence";
  } else {
    r = rate_sweep(vary, fixed, axis, cfg.init, cfg.sim.gamma0);
    series = cfg.quantity == "rate" ? "rate" : "rate_clamped";
  }
  const SweepSeries& s = r.find(series);
  Table t;
  t.add_column("x", r.axis);
  t.add_column("value_with_d", s.with_d);
  t.add_column("value_without_d", s.without_d);
  return t;
}

Table maxc_table(const RunConfig& cfg) {
  const MaxConcurrence m = max_concurrence(cfg.init.state(), coefficients(cfg.sim), cfg.tau_max);
  Table t;
  t.add_column("c_max", {m.c_max});
  t.add_column("tau_star", {m.tau_star});
  t.add_column("horizon", {m.horizon});
  return t;
}

Table steady_table(const RunConfig& cfg) {
  const Coefficients k = coefficients(cfg.sim);
  const XState s = steady_state(k);
  Table t;
  t.add_column("p_gg", {s.p_gg});
  t.add_column("p_ee", {s.p_ee});
  t.add_column("p_aa", {s.p_aa});
  t.add_column("p_ss", {s.p_ss});
  t.add_column("concurrence", {concurrence_x(s).c});
  return t;
}

Table oracle_table(const RunConfig& cfg) {
  const Coefficients k = coefficients(cfg.sim);
  const XState s0 = cfg.init.state();
  const GklsData data = build_gkls(k, cfg.free_hamiltonian);
  std::vector<double> times(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) times[i] = cfg.tau_max * i / (cfg.samples - 1);
  times.back() = cfg.tau_max;
  const auto dense = integrate_samples(to_dense(s0), data, times, cfg.dt);
  const XStatePropagator propagator(k);
  std::vector<double> c_x, c_dense, diff;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const XState x = propagator.at(s0, times[i]);
    const XState y = to_xstate(dense[i]);
    c_x.push_back(concurrence_x(x).c);
    c_dense.push_back(concurrence_general(dense[i]));
    diff.push_back(std::max({std::abs(x.p_gg - y.p_gg), std::abs(x.p_ee - y.p_ee),
                             std::abs(x.p_aa - y.p_aa), std::abs(x.p_ss - y.p_ss),
                             std::abs(x.c_as - y.c_as), std::abs(x.c_ge - y.c_ge)}));
  }
  Table t;
  t.add_column("tau", times);
  t.add_column("c_xstate", c_x);
  t.add_column("c_dense", c_dense);
  t.add_column("max_abs_diff", diff);
  return t;
}

}  // namespace

Table run_command(const RunConfig& cfg) {
  if (cfg.command == "coeffs") return coeffs_table(cfg);
  if (cfg.command == "evolve") return evolve_table(cfg);
  if (cfg.command == "rate") return rate_table(cfg);
  if (cfg.command == "region") return region_table(cfg);
  if (cfg.command == "sweep") return sweep_table(cfg);
  if (cfg.command == "maxc") return maxc_table(cfg);
  if (cfg.command == "steady") return steady_table(cfg);
  if (cfg.command == "oracle") return oracle_table(cfg);
  throw Error(ErrorCode::Usage, "unknown command '" + cfg.command + "'");
}

std::string gnuplot_hint(const RunConfig& cfg) {
  const std::string file = cfg.out.empty() || cfg.out == "-" ? "data.csv" : cfg.out;
  const std::string head = "# gnuplot -p -e \"set datafile separator ','; set key autotitle columnhead; ";
  if (cfg.command == "evolve") return head + "plot '" + file + "' using 1:2 with lines\"\n";
  if (cfg.command == "oracle") return head + "set logscale y; plot '" + file + "' using 1:4 with lines\"\n";
  if (cfg.command == "region") {
    return head + "plot '" + file + "' using 1:2:($3+$4) with image\"\n";
  }
  if (cfg.command == "sweep") {
    return head + "set logscale x; plot '" + file + "' using 1:2 with lines, '' using 1:3 with lines dt 4\"\n";
  }
  return "# single-row output; no plot\n";
}

}  // namespace unruh
