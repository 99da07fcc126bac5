#include "cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "qpiston/csv.hpp"
#include "qpiston/errors.hpp"
#include "qpiston/langevin.hpp"
#include "qpiston/sweep.hpp"
#include "qpiston/units.hpp"

namespace qpiston::cli {

namespace {

constexpr const char* kUnits =
    "Units: lengths x in L = N kB T / F0, energies and work in N kB T, time tau in gamma L / F0.\n"
    "alpha = 1 + kappa X_M / F0 is the dimensionless potential slope; epsilon = |kappa| eps_bar / F0\n"
    "is the standard deviation of alpha induced by the membrane state.";

constexpr const char* kStateHelp =
    "States: gaussian (--alpha0, --epsilon), coherent (--nbar), thermal (--nbar),\n"
    "squeezed (--nbar, --r; needs nbar >= sinh^2 r), fock (--n or integer --nbar),\n"
    "phase-randomized (--nbar, --tau).";

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string normalize_name(std::string name) {
  for (char& c : name) {
    if (c == '-') c = '_';
  }
  return name;
}

sweep::ParamValue parse_value(const std::string& text) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec == std::errc() && ptr == end) return v;
  return text;
}

std::pair<std::string, std::string> split_assignment(const std::string& text, const char* what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw InputError(std::string(what) + " must look like name=value: " + text);
  return {text.substr(0, eq), text.substr(eq + 1)};
}

// "lo:hi:points" is an evenly spaced grid; otherwise a comma-separated list.
sweep::Axis parse_axis(const std::string& text) {
  const auto [name, grid] = split_assignment(text, "--axis");
  sweep::Axis axis{normalize_name(name), {}};
  if (std::count(grid.begin(), grid.end(), ':') == 2) {
    std::istringstream in(grid);
    std::string lo, hi, points;
    std::getline(in, lo, ':');
    std::getline(in, hi, ':');
    std::getline(in, points);
    const auto a = parse_value(lo);
    const auto b = parse_value(hi);
    const auto n = parse_value(points);
    if (!std::holds_alternative<double>(a) || !std::holds_alternative<double>(b) ||
        !std::holds_alternative<double>(n) || std::get<double>(n) < 1 ||
        std::get<double>(n) != static_cast<int>(std::get<double>(n))) {
      throw InputError("bad grid lo:hi:points in --axis " + text);
    }
    axis.values = sweep::linspace(std::get<double>(a), std::get<double>(b), static_cast<int>(std::get<double>(n)));
    return axis;
  }
  std::istringstream in(grid);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) axis.values.push_back(parse_value(item));
  }
  if (axis.values.empty()) throw InputError("empty grid in --axis " + text);
  return axis;
}

int exit_code_for(const std::string& status) {
  if (status == "ok" || status == "divergent-moment") return kOk;
  if (status == to_string(ErrorKind::IntegrationFailure) || status == to_string(ErrorKind::DivergentWork)) {
    return kNumericalFailure;
  }
  return kInvalidInput;
}

int exit_code_for(ErrorKind kind) { return exit_code_for(std::string(to_string(kind))); }

CLI::Option* scalar(CLI::Option* opt) {
  return opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
}

struct Output {
  std::string path = "-";
  std::string config;
};

void add_common(CLI::App* sub, Output& o) {
  scalar(sub->add_option("--out,-o", o.path, "output file, '-' for stdout"))->capture_default_str();
  scalar(sub->add_option("--config", o.config, "key = value file mirroring the long flags; flags win"));
}

struct StateOptions {
  std::string state = "gaussian";
  std::optional<double> alpha0, epsilon, nbar, r, tau;
  std::optional<int> n;
  std::optional<double> kappa, f0, membrane_mean, membrane_std;

  void add(CLI::App* sub) {
    scalar(sub->add_option("--state", state, "gaussian|coherent|thermal|squeezed|fock|phase-randomized"))
        ->check(CLI::IsMember({"gaussian", "coherent", "thermal", "squeezed", "fock", "phase-randomized"}))
        ->capture_default_str();
    scalar(sub->add_option("--alpha0", alpha0, "mean slope of a gaussian p(alpha) (default 1)"));
    scalar(sub->add_option("--epsilon", epsilon, "std of a gaussian p(alpha) (default 0)"));
    scalar(sub->add_option("--nbar", nbar, "mean photon number"));
    scalar(sub->add_option("--n", n, "Fock level"));
    scalar(sub->add_option("--r", r, "squeezing parameter"));
    scalar(sub->add_option("--tau", tau, "phase standard deviation (rad)"));
    scalar(sub->add_option("--kappa", kappa, "physical coupling; with --membrane-mean/--membrane-std sets a gaussian"));
    scalar(sub->add_option("--f0", f0, "physical ambient force F0 (default 1)"));
    scalar(sub->add_option("--membrane-mean", membrane_mean, "physical membrane mean position X0"));
    scalar(sub->add_option("--membrane-std", membrane_std, "physical membrane position std eps_bar"));
  }

  void fill(sweep::ParamMap& p) const {
    if (kappa) {
      if (state != "gaussian") throw InputError("--kappa derives a gaussian state; drop --state " + state);
      if (alpha0 || epsilon) throw InputError("give either --kappa with membrane moments or --alpha0/--epsilon");
      units::DimensionalParams d;
      d.kappa = *kappa;
      d.F0 = f0.value_or(1.0);
      d.X0 = membrane_mean.value_or(0.0);
      d.eps_bar = membrane_std.value_or(0.0);
      d.validate();
      p["alpha0"] = units::alpha0_from(d);
      p["epsilon"] = units::epsilon_from(d);
      return;
    }
    p["state"] = state;
    if (alpha0) p["alpha0"] = *alpha0;
    if (epsilon) p["epsilon"] = *epsilon;
    if (nbar) p["nbar"] = *nbar;
    if (n) p["n"] = static_cast<double>(*n);
    if (r) p["r"] = *r;
    if (tau) p["tau"] = *tau;
  }
};

// Slope either given directly or from physical coupling and membrane position.
struct SlopeOptions {
  std::optional<double> alpha, kappa, f0, membrane_position;

  void add(CLI::App* sub) {
    scalar(sub->add_option("--alpha", alpha, "dimensionless slope alpha"));
    scalar(sub->add_option("--kappa", kappa, "physical coupling; with --membrane-position gives alpha"));
    scalar(sub->add_option("--f0", f0, "physical ambient force F0 (default 1)"));
    scalar(sub->add_option("--membrane-position", membrane_position, "physical membrane position X_M"));
  }

  double value() const {
    if (kappa) {
      if (alpha) throw InputError("give either --alpha or --kappa with --membrane-position");
      units::DimensionalParams d;
      d.kappa = *kappa;
      d.F0 = f0.value_or(1.0);
      d.XM = membrane_position.value_or(0.0);
      d.validate();
      return units::alpha_from(d);
    }
    if (!alpha) throw InputError("--alpha is required");
    return *alpha;
  }
};

// Expands `key = value` lines into flags placed ahead of the command line
// flags, so explicit flags take precedence.
std::vector<std::string> config_arguments(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read config file " + path);
  std::vector<std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InputError(path + ":" + std::to_string(lineno) + ": expected key = value");
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(0, 1);
    for (char& c : key) {
      if (c == '_') c = '-';
    }
    const CLI::Option* opt = key == "config" ? nullptr : sub->get_option_no_throw("--" + key);
    if (!opt) throw InputError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "' for " + sub->get_name());
    if (opt->get_expected_min() == 0) {
      if (value == "true" || value == "1" || value == "yes" || value == "on") out.push_back("--" + key);
    } else if (opt->get_positional()) {
      throw InputError(path + ":" + std::to_string(lineno) + ": '" + key + "' is positional");
    } else {
      out.push_back("--" + key);
      out.push_back(value);
    }
  }
  return out;
}

std::optional<std::string> find_config(const std::vector<std::string>& args) {
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) return args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

// Runs a one-axis sweep and writes it; the exit code follows the worst row.
int emit_sweep(const sweep::SweepSpec& spec, const std::vector<std::string>& drop_columns, std::ostream& data,
               std::ostream& err) {
  auto table = sweep::run_sweep(spec);
  for (const auto& col : drop_columns) {
    const auto it = std::find(table.output_columns.begin(), table.output_columns.end(), col);
    if (it == table.output_columns.end()) continue;
    const auto idx = static_cast<std::size_t>(it - table.output_columns.begin());
    table.output_columns.erase(it);
    for (auto& row : table.rows) row.values.erase(row.values.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  sweep::write_csv(data, spec, table);
  int code = kOk;
  for (const auto& row : table.rows) {
    if (row.status == "divergent-moment") {
      err << "warning: moment diverges as alpha -> 0; value is cut-regularized\n";
    } else if (row.status != "ok") {
      err << "error: " << row.status << ": " << row.message << '\n';
    }
    code = std::max(code, exit_code_for(row.status));
  }
  return code;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-state driven piston: equilibrium statistics and isothermal work.\n" + std::string(kUnits),
               "qpiston"};
  app.set_version_flag("--version", std::string(QPISTON_VERSION));
  app.require_subcommand(1);
  app.footer(kUnits);

  Output o;
  StateOptions state;
  SlopeOptions slope;
  std::vector<double> xs;
  std::string n_particles_text;
  int n_particles = 0;
  double tol = 0.0;
  std::int64_t mc_samples = 0;
  std::uint64_t seed = 0;
  int threads = 1;
  bool whole_ensemble = false;

  auto* potential = app.add_subcommand("potential", "potential v(x) = alpha x - ln x on a grid of x");
  potential->footer(std::string(kUnits) + "\nv is in units of N kB T; no minimum exists for alpha <= 0.");
  add_common(potential, o);
  slope.add(potential);
  double x_max = 5.0;
  int points = 61;
  potential->add_option("--x", xs, "positions (default: --points values on (0, --x-max])")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  scalar(potential->add_option("--x-max", x_max, "upper end of the default grid"))->capture_default_str();
  scalar(potential->add_option("--points", points, "size of the default grid"))->capture_default_str();

  auto* equilibrium = app.add_subcommand("equilibrium", "Gamma law of the piston position for sharp alpha");
  equilibrium->footer(std::string(kUnits) +
                      "\nWithout --x prints mean (N+1)/(alpha N), variance (N+1)/(alpha N)^2 and SNR sqrt(N+1);"
                      "\nwith --x prints pdf and cdf at those positions.");
  add_common(equilibrium, o);
  slope.add(equilibrium);
  scalar(equilibrium->add_option("--n-particles,-N", n_particles, "gas particle count N"))->required();
  equilibrium->add_option("--x", xs, "positions")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);

  auto* mixture = app.add_subcommand("mixture", "piston position law averaged over the membrane's p(alpha)");
  mixture->footer(std::string(kUnits) + "\n" + kStateHelp +
                  "\nOnly alpha > 0 contributes; results are conditioned on success (divided by p_s)."
                  "\nWithout --x prints mean, std, SNR; moments of 1/alpha diverge at alpha -> 0 and are"
                  "\nreported cut-regularized with status divergent-moment.");
  add_common(mixture, o);
  state.add(mixture);
  n_particles = 500;
  scalar(mixture->add_option("--n-particles,-N", n_particles, "gas particle count N"))->capture_default_str();
  mixture->add_option("--x", xs, "positions")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  scalar(mixture->add_option("--tol", tol, "quadrature tolerance (default 1e-8)"));

  auto* work = app.add_subcommand("work", "mean isothermal work extracted on the successful subensemble");
  work->footer(std::string(kUnits) + "\n" + kStateHelp +
               "\nw_bar = -((N+1)/N) <ln alpha> over alpha > 0, in units of N kB T; N = inf drops the"
               "\npiston's own share. --whole-ensemble adds w_whole = w_bar p_s (failed runs count as zero).");
  add_common(work, o);
  state.add(work);
  n_particles_text = "inf";
  scalar(work->add_option("--n-particles,-N", n_particles_text, "gas particle count N or 'inf'"))
      ->capture_default_str();
  scalar(work->add_option("--tol", tol, "quadrature tolerance (default 1e-10)"));
  scalar(work->add_option("--mc-samples", mc_samples, "use Monte Carlo with this many raw draws of alpha"));
  scalar(work->add_option("--seed", seed, "Monte Carlo seed"))->capture_default_str();
  scalar(work->add_flag("--whole-ensemble", whole_ensemble, "also report w_bar p_s"));

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a target over a parameter grid, CSV out");
  std::string target;
  std::vector<std::string> axes;
  std::vector<std::string> sets;
  {
    std::string targets;
    for (const auto& t : sweep::target_names()) targets += (targets.empty() ? "" : ", ") + t;
    sweep_cmd->footer(std::string(kUnits) + "\nTargets: " + targets +
                      "\nAxes: --axis name=lo:hi:points or --axis name=v1,v2,...; first axis varies slowest."
                      "\nFixed values: --set name=value. Names accept '-' or '_'. n_particles may be 'inf'.");
  }
  add_common(sweep_cmd, o);
  scalar(sweep_cmd->add_option("--target", target, "operation to evaluate"))->required();
  sweep_cmd->add_option("--axis", axes, "grid axis")->required()->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  sweep_cmd->add_option("--set", sets, "fixed parameter")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  scalar(sweep_cmd->add_option("--seed", seed, "base seed; grid point i uses a derived stream"))
      ->capture_default_str();
  scalar(sweep_cmd->add_option("--threads", threads, "worker threads, 0 = all cores"))->capture_default_str();

  auto* lang = app.add_subcommand("langevin", "simulate the overdamped piston and compare with the Gamma law");
  lang->footer(std::string(kUnits) +
               "\nIntegrates dx/dtau = -alpha + 1/x + sqrt(2/N) xi with explicit Euler steps, rejecting steps"
               "\nthat would reach x <= 0. Defaults: dt = 0.05/(alpha N), burn-in 10 and thinning 4"
               "\nrelaxation times (1/alpha^2 in tau), x0 = (N+1)/(alpha N). Retained = samples x ensemble.");
  add_common(lang, o);
  slope.add(lang);
  int lang_n = 0;
  std::optional<double> dt, x0;
  std::optional<std::int64_t> burn_in, thin;
  std::int64_t samples = 1000, ensemble = 1;
  std::string dump;
  scalar(lang->add_option("--n-particles,-N", lang_n, "gas particle count N"))->required();
  scalar(lang->add_option("--dt", dt, "time step in tau units, at most 0.1/(alpha N)"));
  scalar(lang->add_option("--burn-in", burn_in, "steps discarded per walker"));
  scalar(lang->add_option("--thin", thin, "steps between retained samples"));
  scalar(lang->add_option("--samples", samples, "retained samples per walker"))->capture_default_str();
  scalar(lang->add_option("--ensemble", ensemble, "independent walkers"))->capture_default_str();
  scalar(lang->add_option("--x0", x0, "initial position"));
  scalar(lang->add_option("--seed", seed, "seed; walker i uses stream (seed, i)"))->capture_default_str();
  scalar(lang->add_option("--threads", threads, "worker threads, 0 = all cores"))->capture_default_str();
  scalar(lang->add_option("--dump", dump, "write retained samples as CSV walker,step,x"));

  auto* figure = app.add_subcommand("figure", "write the dataset of a named figure preset");
  std::string figure_name;
  {
    std::string names;
    for (const auto& f : sweep::figure_names()) names += (names.empty() ? "" : ", ") + f;
    figure->footer(std::string(kUnits) + "\nPresets: " + names);
  }
  add_common(figure, o);
  figure->add_option("name", figure_name, "preset name")->required();
  scalar(figure->add_option("--seed", seed, "base seed"))->capture_default_str();
  scalar(figure->add_option("--threads", threads, "worker threads, 0 = all cores"))->capture_default_str();

  std::vector<std::string> argv = args;
  try {
    if (!argv.empty() && argv.front().rfind("-", 0) != 0) {
      if (const auto path = find_config(argv)) {
        CLI::App* sub = app.get_subcommand_no_throw(argv.front());
        if (sub) {
          auto injected = config_arguments(sub, *path);
          argv.insert(argv.begin() + 1, injected.begin(), injected.end());
        }
      }
    }
    std::vector<std::string> reversed(argv.rbegin(), argv.rend());
    app.parse(reversed);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }

  std::ofstream file;
  std::ostream* data = &out;
  auto open_output = [&]() -> bool {
    if (o.path.empty() || o.path == "-") return true;
    file.open(o.path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot write " << o.path << '\n';
      return false;
    }
    data = &file;
    return true;
  };

  try {
    if (*potential) {
      sweep::SweepSpec spec;
      spec.target = "potential";
      spec.fixed = {{"alpha", slope.value()}};
      if (xs.empty()) {
        if (points < 1 || !(x_max > 0.0)) throw InputError("--points must be >= 1 and --x-max > 0");
        for (int i = 1; i <= points; ++i) xs.push_back(x_max * i / points);
      }
      spec.axes = {{"x", {xs.begin(), xs.end()}}};
      if (!open_output()) return kInvalidInput;
      return emit_sweep(spec, {}, *data, err);
    }
    if (*equilibrium) {
      sweep::SweepSpec spec;
      const double alpha = slope.value();
      spec.fixed = {{"n_particles", static_cast<double>(n_particles)}};
      if (xs.empty()) {
        spec.target = "gamma_moments";
        spec.axes = {{"alpha", {alpha}}};
      } else {
        spec.target = "gamma_pdf";
        spec.fixed["alpha"] = alpha;
        spec.axes = {{"x", {xs.begin(), xs.end()}}};
      }
      if (!open_output()) return kInvalidInput;
      return emit_sweep(spec, {}, *data, err);
    }
    if (*mixture) {
      sweep::SweepSpec spec;
      state.fill(spec.fixed);
      spec.fixed["n_particles"] = static_cast<double>(n_particles);
      if (mixture->count("--tol")) spec.fixed["tol"] = tol;
      if (xs.empty()) {
        spec.target = "mixture_moments";
        spec.axes = {{"n_particles", {spec.fixed["n_particles"]}}};
        spec.fixed.erase("n_particles");
      } else {
        spec.target = "mixture_pdf";
        spec.axes = {{"x", {xs.begin(), xs.end()}}};
      }
      if (!open_output()) return kInvalidInput;
      return emit_sweep(spec, {}, *data, err);
    }
    if (*work) {
      sweep::SweepSpec spec;
      state.fill(spec.fixed);
      spec.seed = seed;
      const auto np = parse_value(n_particles_text);
      std::vector<std::string> drop;
      if (work->count("--mc-samples")) {
        spec.target = "mean_work_mc";
        spec.fixed["samples"] = static_cast<double>(mc_samples);
      } else {
        spec.target = "mean_work";
        if (work->count("--tol")) spec.fixed["tol"] = tol;
        if (!whole_ensemble) drop.push_back("w_whole");
      }
      spec.axes = {{"n_particles", {np}}};
      if (!open_output()) return kInvalidInput;
      return emit_sweep(spec, drop, *data, err);
    }
    if (*sweep_cmd) {
      sweep::SweepSpec spec;
      spec.target = target;
      spec.seed = seed;
      spec.threads = threads;
      for (const auto& a : axes) spec.axes.push_back(parse_axis(a));
      for (const auto& s : sets) {
        const auto [name, value] = split_assignment(s, "--set");
        spec.fixed[normalize_name(name)] = parse_value(value);
      }
      spec.validate();
      if (!open_output()) return kInvalidInput;
      const auto table = sweep::run_sweep(spec);
      sweep::write_csv(*data, spec, table);
      return kOk;
    }
    if (*lang) {
      auto c = langevin::LangevinConfig::defaults(lang_n, slope.value(), dt);
      c.samples = samples;
      c.ensemble = ensemble;
      if (burn_in) c.burn_in = *burn_in;
      if (thin) c.thin = *thin;
      if (x0) c.x0 = *x0;
      c.seed = seed;
      c.threads = threads;
      c.validate();
      if (!open_output()) return kInvalidInput;

      std::ofstream dump_file;
      langevin::SampleSink sink;
      if (!dump.empty()) {
        dump_file.open(dump, std::ios::binary | std::ios::trunc);
        if (!dump_file) {
          err << "error: cannot write " << dump << '\n';
          return kInvalidInput;
        }
        csv::write_row(dump_file, {"walker", "step", "x"});
        sink = [&dump_file](std::int64_t w, std::int64_t step, double x) {
          dump_file << w << ',' << step << ',' << csv::format_double(x) << '\n';
        };
      }
      const auto s = langevin::run(c, sink);
      const double n = c.n_particles;
      const double target_mean = (n + 1.0) / (c.alpha * n);
      csv::write_metadata(*data, {{"tool", std::string("qpiston ") + QPISTON_VERSION},
                                  {"n_particles", std::to_string(c.n_particles)},
                                  {"alpha", csv::format_double(c.alpha)},
                                  {"dt", csv::format_double(c.dt)},
                                  {"burn_in", std::to_string(c.burn_in)},
                                  {"thin", std::to_string(c.thin)},
                                  {"samples", std::to_string(c.samples)},
                                  {"ensemble", std::to_string(c.ensemble)},
                                  {"x0", csv::format_double(c.x0)},
                                  {"seed", std::to_string(c.seed)}});
      csv::write_row(*data, {"mean", "variance", "snr", "mean_stderr", "variance_stderr", "snr_stderr",
                             "ks_statistic", "ks_critical_1pct", "retained", "rejected_steps", "gamma_mean",
                             "gamma_variance", "gamma_snr"});
      csv::write_row(*data, {csv::format_double(s.mean), csv::format_double(s.variance), csv::format_double(s.snr),
                             csv::format_double(s.mean_stderr), csv::format_double(s.variance_stderr),
                             csv::format_double(s.snr_stderr), csv::format_double(s.ks_statistic),
                             csv::format_double(s.ks_critical_1pct), std::to_string(s.retained),
                             std::to_string(s.rejected_steps), csv::format_double(target_mean),
                             csv::format_double(target_mean * target_mean / (n + 1.0)),
                             csv::format_double(std::sqrt(n + 1.0))});
      if (s.warning) err << "warning: " << *s.warning << '\n';
      return kOk;
    }
    if (*figure) {
      auto spec = sweep::figure_preset(figure_name);
      spec.seed = seed;
      spec.threads = threads;
      if (!open_output()) return kInvalidInput;
      const auto table = sweep::run_sweep(spec);
      sweep::write_csv(*data, spec, table);
      return kOk;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kInvalidInput;
}

}  // namespace qpiston::cli
