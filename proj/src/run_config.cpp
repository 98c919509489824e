#include "unruh_pair/run_config.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "unruh_pair/errors.hpp"

namespace unruh {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string> kCommands = {"coeffs", "evolve", "rate",   "region",
                                         "sweep",  "maxc",   "steady", "oracle"};

std::string init_name(InitialSpec::Kind kind) {
  switch (kind) {
    case InitialSpec::Kind::ProductEg: return "product-eg";
    case InitialSpec::Kind::Superposition: return "superposition";
    case InitialSpec::Kind::Explicit: return "explicit";
  }
  return "product-eg";
}

InitialSpec::Kind init_kind(const std::string& name) {
  if (name == "product-eg") return InitialSpec::Kind::ProductEg;
  if (name == "superposition") return InitialSpec::Kind::Superposition;
  if (name == "explicit") return InitialSpec::Kind::Explicit;
  throw Error(ErrorCode::Usage, "unknown initial state '" + name + "'");
}

std::vector<double> xstate_elements(const XState& x) {
  return {x.p_gg, x.p_ee, x.p_aa, x.p_ss, x.c_as.real(), x.c_as.imag(), x.c_ge.real(),
          x.c_ge.imag()};
}

XState xstate_from(const std::vector<double>& v) {
  if (v.size() != 8) {
    throw Error(ErrorCode::Usage,
                "xstate needs 8 values: p_gg,p_ee,p_aa,p_ss,re_as,im_as,re_ge,im_ge");
  }
  XState x;
  x.p_gg = v[0];
  x.p_ee = v[1];
  x.p_aa = v[2];
  x.p_ss = v[3];
  x.c_as = {v[4], v[5]};
  x.c_ge = {v[6], v[7]};
  return x;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::Usage, "cannot parse number '" + item + "' in --xstate");
    }
  }
  return out;
}

void require_one_of(const std::string& value, const std::set<std::string>& allowed,
                    const char* what) {
  if (!allowed.count(value)) {
    throw Error(ErrorCode::Usage, std::string("unknown ") + what + " '" + value + "'");
  }
}

template <typename T>
void take(const json& j, const char* key, T& field) {
  try {
    field = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Usage, std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

void RunConfig::finalize() {
  if (help) return;
  require_one_of(command, kCommands, "command");
  require_one_of(format, {"csv", "json"}, "format");
  require_one_of(vary, {"accel", "sep"}, "sweep axis");
  require_one_of(spacing, {"log", "linear"}, "spacing");
  require_one_of(quantity, {"rate", "rate-clamped", "maxc"}, "quantity");
  sim.validate();
  if (samples == 0) samples = command == "sweep" ? 200 : 401;
  if (from == 0.0 && to == 0.0) {
    from = vary == "accel" ? 0.01 : 0.05;
    to = vary == "accel" ? 20.0 : 50.0;
  }
  if (samples < 2) throw Error(ErrorCode::InvalidArgument, "--samples must be at least 2");
  if (grid < 2) throw Error(ErrorCode::InvalidArgument, "--grid must be at least 2");
  if (!(tau_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "--tau-max must be positive");
  if (!(from > 0.0) || !(to > from)) {
    throw Error(ErrorCode::InvalidArgument, "sweep range must satisfy 0 < from < to");
  }
  if (!(l_max > 0.0) || !(a_max > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "region window must be positive");
  }
  if (!(dt > 0.0) || !(fd_step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "--dt and --fd-step must be positive");
  }
  if (init.kind == InitialSpec::Kind::Explicit) init.explicit_state.validate();
}

bool operator==(const RunConfig& a, const RunConfig& b) {
  return to_json(a) == to_json(b);
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = c.command;
  j["accel"] = c.sim.accel_ratio;
  j["sep"] = c.sim.separation;
  j["gamma0"] = c.sim.gamma0;
  j["with_d"] = c.sim.include_interaction;
  j["init"] = init_name(c.init.kind);
  j["theta"] = c.init.theta;
  j["phi"] = c.init.phi;
  j["xstate"] = xstate_elements(c.init.explicit_state);
  j["tau_max"] = c.tau_max;
  j["samples"] = c.samples;
  j["grid"] = c.grid;
  j["l_max"] = c.l_max;
  j["a_max"] = c.a_max;
  j["vary"] = c.vary;
  j["from"] = c.from;
  j["to"] = c.to;
  j["spacing"] = c.spacing;
  j["quantity"] = c.quantity;
  j["dt"] = c.dt;
  j["fd_step"] = c.fd_step;
  j["free_hamiltonian"] = c.free_hamiltonian;
  j["out"] = c.out;
  j["format"] = c.format;
  j["gnuplot_hint"] = c.gnuplot_hint;
  return j;
}

void apply_json(const json& j, RunConfig& c) {
  if (!j.is_object()) throw Error(ErrorCode::Usage, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "command") take(j, "command", c.command);
    else if (key == "accel") take(j, "accel", c.sim.accel_ratio);
    else if (key == "sep") take(j, "sep", c.sim.separation);
    else if (key == "gamma0") take(j, "gamma0", c.sim.gamma0);
    else if (key == "with_d") take(j, "with_d", c.sim.include_interaction);
    else if (key == "init") {
      std::string name;
      take(j, "init", name);
      c.init.kind = init_kind(name);
    } else if (key == "theta") take(j, "theta", c.init.theta);
    else if (key == "phi") take(j, "phi", c.init.phi);
    else if (key == "xstate") {
      std::vector<double> v;
      take(j, "xstate", v);
      c.init.explicit_state = xstate_from(v);
    } else if (key == "tau_max") take(j, "tau_max", c.tau_max);
    else if (key == "samples") take(j, "samples", c.samples);
    else if (key == "grid") take(j, "grid", c.grid);
    else if (key == "l_max") take(j, "l_max", c.l_max);
    else if (key == "a_max") take(j, "a_max", c.a_max);
    else if (key == "vary") take(j, "vary", c.vary);
    else if (key == "from") take(j, "from", c.from);
    else if (key == "to") take(j, "to", c.to);
    else if (key == "spacing") take(j, "spacing", c.spacing);
    else if (key == "quantity") take(j, "quantity", c.quantity);
    else if (key == "dt") take(j, "dt", c.dt);
    else if (key == "fd_step") take(j, "fd_step", c.fd_step);
    else if (key == "free_hamiltonian") take(j, "free_hamiltonian", c.free_hamiltonian);
    else if (key == "out") take(j, "out", c.out);
    else if (key == "format") take(j, "format", c.format);
    else if (key == "gnuplot_hint") take(j, "gnuplot_hint", c.gnuplot_hint);
    else if (key == "version") continue;
    else throw Error(ErrorCode::Usage, "unknown config key '" + key + "'");
  }
}

RunConfig from_json(const json& j) {
  RunConfig c;
  apply_json(j, c);
  return c;
}

RunConfig parse_cli(const std::vector<std::string>& args) {
  RunConfig flags;
  std::string init = "product-eg";
  std::string xstate;
  std::string config_path;
  bool with_d = false;
  bool no_d = false;

  CLI::App app{"Entanglement dynamics of two uniformly accelerated atoms", "unruh_pair"};
  app.require_subcommand(1);
  app.fallthrough();

  struct Binding {
    CLI::Option* option;
    std::function<void(RunConfig&)> copy;
  };
  std::vector<Binding> bindings;
  auto bind = [&](CLI::Option* opt, std::function<void(RunConfig&)> copy) {
    bindings.push_back({opt, std::move(copy)});
  };

  app.add_option("--config", config_path, "JSON file with the same keys as the flags");
  bind(app.add_option("--accel", flags.sim.accel_ratio, "a/omega (>= 0)"),
       [&](RunConfig& c) { c.sim.accel_ratio = flags.sim.accel_ratio; });
  bind(app.add_option("--sep", flags.sim.separation, "omega L (> 0)"),
       [&](RunConfig& c) { c.sim.separation = flags.sim.separation; });
  bind(app.add_option("--gamma0", flags.sim.gamma0, "spontaneous emission rate"),
       [&](RunConfig& c) { c.sim.gamma0 = flags.sim.gamma0; });
  auto* with_d_opt = app.add_flag("--with-d", with_d, "include the interatomic interaction D");
  auto* no_d_opt = app.add_flag("--no-d", no_d, "neglect the interatomic interaction D");
  bind(app.add_option("--init", init, "product-eg | superposition | explicit"),
       [&](RunConfig& c) { c.init.kind = init_kind(init); });
  auto* theta_opt = app.add_option("--theta", flags.init.theta, "superposition weight (rad)");
  bind(theta_opt, [&](RunConfig& c) { c.init.theta = flags.init.theta; });
  auto* phi_opt = app.add_option("--phi", flags.init.phi, "superposition phase (rad)");
  bind(phi_opt, [&](RunConfig& c) { c.init.phi = flags.init.phi; });
  auto* xstate_opt =
      app.add_option("--xstate", xstate, "p_gg,p_ee,p_aa,p_ss,re_as,im_as,re_ge,im_ge");
  bind(xstate_opt,
       [&](RunConfig& c) { c.init.explicit_state = xstate_from(parse_list(xstate)); });
  bind(app.add_option("--tau-max", flags.tau_max, "time horizon in 1/gamma0"),
       [&](RunConfig& c) { c.tau_max = flags.tau_max; });
  bind(app.add_option("--samples", flags.samples, "number of samples / sweep points"),
       [&](RunConfig& c) { c.samples = flags.samples; });
  bind(app.add_option("--grid", flags.grid, "region grid resolution per axis"),
       [&](RunConfig& c) { c.grid = flags.grid; });
  bind(app.add_option("--l-max", flags.l_max, "region window: largest omega L"),
       [&](RunConfig& c) { c.l_max = flags.l_max; });
  bind(app.add_option("--a-max", flags.a_max, "region window: largest a/omega"),
       [&](RunConfig& c) { c.a_max = flags.a_max; });
  bind(app.add_option("--vary", flags.vary, "sweep axis: accel | sep"),
       [&](RunConfig& c) { c.vary = flags.vary; });
  bind(app.add_option("--from", flags.from, "sweep start"),
       [&](RunConfig& c) { c.from = flags.from; });
  bind(app.add_option("--to", flags.to, "sweep end"), [&](RunConfig& c) { c.to = flags.to; });
  bind(app.add_option("--spacing", flags.spacing, "sweep spacing: log | linear"),
       [&](RunConfig& c) { c.spacing = flags.spacing; });
  bind(app.add_option("--quantity", flags.quantity, "sweep quantity: rate | rate-clamped | maxc"),
       [&](RunConfig& c) { c.quantity = flags.quantity; });
  bind(app.add_option("--dt", flags.dt, "oracle RK4 step"),
       [&](RunConfig& c) { c.dt = flags.dt; });
  bind(app.add_option("--fd-step", flags.fd_step, "finite-difference step"),
       [&](RunConfig& c) { c.fd_step = flags.fd_step; });
  bind(app.add_flag("--free-hamiltonian", flags.free_hamiltonian,
                    "oracle: keep the free atomic Hamiltonian (lab frame)"),
       [&](RunConfig& c) { c.free_hamiltonian = flags.free_hamiltonian; });
  bind(app.add_option("--out", flags.out, "output path (default stdout)"),
       [&](RunConfig& c) { c.out = flags.out; });
  bind(app.add_option("--format", flags.format, "csv | json"),
       [&](RunConfig& c) { c.format = flags.format; });
  bind(app.add_flag("--gnuplot-hint", flags.gnuplot_hint, "print a plotting one-liner"),
       [&](RunConfig& c) { c.gnuplot_hint = flags.gnuplot_hint; });

  app.add_subcommand("coeffs", "print the GKLS coefficients");
  app.add_subcommand("evolve", "trajectory of the state and its concurrence");
  app.add_subcommand("rate", "analytic and numerical C'(0)");
  app.add_subcommand("region", "generation region mask over (omega L, a/omega)");
  app.add_subcommand("sweep", "rate or max-concurrence curves along one axis");
  app.add_subcommand("maxc", "maximum concurrence during evolution");
  app.add_subcommand("steady", "stationary state");
  app.add_subcommand("oracle", "compare against the dense GKLS integrator");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    RunConfig help;
    help.help = true;
    help.help_text = app.help();
    return help;
  } catch (const CLI::ParseError& e) {
    throw Error(ErrorCode::Usage, e.what());
  }

  if (with_d_opt->count() > 0 && no_d_opt->count() > 0) {
    throw Error(ErrorCode::ConflictingFlags, "--with-d and --no-d are mutually exclusive");
  }

  RunConfig config;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error(ErrorCode::Io, "cannot read config file " + config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Usage, std::string("config file is not valid JSON: ") + e.what());
    }
    apply_json(j, config);
  }
  for (const auto& b : bindings) {
    if (b.option->count() > 0) b.copy(config);
  }
  if (with_d) config.sim.include_interaction = true;
  if (no_d) config.sim.include_interaction = false;
  config.command = app.get_subcommands().front()->get_name();

  const bool angles_given = theta_opt->count() > 0 || phi_opt->count() > 0;
  if (angles_given && config.init.kind != InitialSpec::Kind::Superposition) {
    throw Error(ErrorCode::ConflictingFlags, "--theta/--phi require --init superposition");
  }
  if (xstate_opt->count() > 0 && config.init.kind != InitialSpec::Kind::Explicit) {
    throw Error(ErrorCode::ConflictingFlags, "--xstate requires --init explicit");
  }
  config.finalize();
  return config;
}

}  // namespace unruh
