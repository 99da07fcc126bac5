#include "qpiston/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

#include "qpiston/csv.hpp"
#include "qpiston/equilibrium.hpp"
#include "qpiston/errors.hpp"
#include "qpiston/langevin.hpp"
#include "qpiston/quad.hpp"
#include "qpiston/rng.hpp"
#include "qpiston/states.hpp"
#include "qpiston/work.hpp"

namespace qpiston::sweep {

namespace {

using Outputs = std::vector<std::optional<double>>;

const std::vector<std::string> kStateParams = {"state", "alpha0", "epsilon", "nbar", "n", "r", "tau"};

std::vector<std::string> with_state(std::vector<std::string> extra) {
  std::vector<std::string> out = kStateParams;
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

struct TargetInfo {
  std::vector<std::string> params;
  std::vector<std::string> outputs;
};

const std::map<std::string, TargetInfo>& targets() {
  static const std::map<std::string, TargetInfo> table = {
      {"potential", {{"x", "alpha"}, {"v"}}},
      {"gamma_pdf", {{"x", "alpha", "n_particles"}, {"pdf", "cdf"}}},
      {"gamma_moments", {{"alpha", "n_particles"}, {"mean", "variance", "snr"}}},
      {"mixture_pdf", {with_state({"x", "n_particles", "tol"}), {"pdf", "p_s"}}},
      {"mixture_moments", {with_state({"n_particles", "tol"}), {"mean", "std", "snr", "p_s", "mean_sensitivity"}}},
      {"mean_work", {with_state({"n_particles", "tol"}), {"w_bar", "p_s", "w_whole", "quad_error"}}},
      {"mean_work_mc", {with_state({"n_particles", "samples"}), {"w_bar", "p_s", "mc_stderr", "accepted"}}},
      {"success_probability", {with_state({"tol"}), {"p_s"}}},
      {"langevin",
       {{"alpha", "n_particles", "dt", "samples", "ensemble", "burn_in", "thin", "x0"},
        {"mean", "variance", "snr", "mean_stderr", "ks_statistic", "ks_critical", "rejected_steps"}}},
  };
  return table;
}

const TargetInfo& info(const std::string& target) {
  const auto it = targets().find(target);
  if (it == targets().end()) fail(ErrorKind::InvalidParameter, "unknown sweep target '" + target + "'");
  return it->second;
}

const ParamValue* find(const ParamMap& p, const std::string& key) {
  const auto it = p.find(key);
  return it == p.end() ? nullptr : &it->second;
}

double number(const ParamMap& p, const std::string& key, std::optional<double> fallback = std::nullopt) {
  const ParamValue* v = find(p, key);
  if (!v) {
    if (fallback) return *fallback;
    fail(ErrorKind::InvalidParameter, "missing parameter '" + key + "'");
  }
  if (const auto* d = std::get_if<double>(v)) return *d;
  fail(ErrorKind::InvalidParameter, "parameter '" + key + "' must be numeric, got '" + std::get<std::string>(*v) + "'");
}

std::int64_t integer(const ParamMap& p, const std::string& key, std::optional<std::int64_t> fallback = std::nullopt) {
  const ParamValue* v = find(p, key);
  if (!v && fallback) return *fallback;
  const double d = number(p, key);
  if (!std::isfinite(d) || d != std::floor(d) || std::abs(d) > 9e15) {
    fail(ErrorKind::InvalidParameter, "parameter '" + key + "' must be an integer");
  }
  return static_cast<std::int64_t>(d);
}

std::string text(const ParamMap& p, const std::string& key, const std::string& fallback) {
  const ParamValue* v = find(p, key);
  if (!v) return fallback;
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  return csv::format_double(std::get<double>(*v));
}

bool is_infinite(const ParamValue& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s == "inf" || *s == "infinity";
  return std::isinf(std::get<double>(v)) && std::get<double>(v) > 0.0;
}

work::ParticleNumber particles(const ParamMap& p, bool default_infinite) {
  const ParamValue* v = find(p, "n_particles");
  if (!v) {
    if (default_infinite) return work::ParticleNumber::infinite();
    fail(ErrorKind::InvalidParameter, "missing parameter 'n_particles'");
  }
  if (is_infinite(*v)) return work::ParticleNumber::infinite();
  return work::ParticleNumber::finite(integer(p, "n_particles"));
}

int finite_particles(const ParamMap& p, std::int64_t fallback) {
  if (const ParamValue* v = find(p, "n_particles"); v && is_infinite(*v)) {
    fail(ErrorKind::InvalidParameter, "this target needs a finite n_particles");
  }
  const std::int64_t n = integer(p, "n_particles", fallback);
  require(n >= 1 && n <= 1000000000, ErrorKind::InvalidParameter, "n_particles must be in [1, 1e9]");
  return static_cast<int>(n);
}

states::AlphaDistribution build_state(const ParamMap& p) {
  const std::string name = text(p, "state", "gaussian");
  if (name == "gaussian") {
    return states::AlphaDistribution::gaussian(number(p, "alpha0", 1.0), number(p, "epsilon", 0.0));
  }
  const double nbar = find(p, "nbar") ? number(p, "nbar") : 0.0;
  int n = 0;
  if (name == "fock") {
    const std::int64_t level = find(p, "n") ? integer(p, "n") : integer(p, "nbar");
    require(level >= 0 && level <= 2000, ErrorKind::InvalidParameter, "Fock level must be in [0, 2000]");
    n = static_cast<int>(level);
  } else {
    require(find(p, "nbar") != nullptr, ErrorKind::InvalidParameter, "missing parameter 'nbar'");
  }
  const double r = name == "squeezed" ? number(p, "r") : 0.0;
  const double tau = name == "phase-randomized" ? number(p, "tau") : 0.0;
  return states::from_preset(states::make_preset(name, nbar, n, r, tau));
}

quad::Options tolerance(const ParamMap& p, double fallback) {
  const double tol = number(p, "tol", fallback);
  require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidParameter, "tol must be in (0, 1)");
  return quad::Options{tol};
}

PointResult compute(const std::string& target, const ParamMap& p, std::uint64_t seed) {
  PointResult r{"ok", {}, {}};
  if (target == "potential") {
    r.values = {equilibrium::potential(number(p, "x"), number(p, "alpha"))};
  } else if (target == "gamma_pdf") {
    const equilibrium::GammaEquilibrium eq(finite_particles(p, 1), number(p, "alpha"));
    const double x = number(p, "x");
    r.values = {equilibrium::gamma_pdf(x, eq), equilibrium::gamma_cdf(x, eq)};
  } else if (target == "gamma_moments") {
    const auto m = equilibrium::gamma_moments(equilibrium::GammaEquilibrium(finite_particles(p, 1), number(p, "alpha")));
    r.values = {m.mean, m.variance, m.snr};
  } else if (target == "mixture_pdf") {
    const auto dist = build_state(p);
    const double pdf = equilibrium::mixture_pdf(dist, finite_particles(p, 500), number(p, "x"),
                                                tolerance(p, quad::kNestedTol).tol);
    r.values = {pdf, work::success_probability(dist)};
  } else if (target == "mixture_moments") {
    const auto m = equilibrium::mixture_moments(build_state(p), finite_particles(p, 500),
                                                tolerance(p, quad::kNestedTol).tol);
    r.values = {m.mean, m.std, m.snr, m.p_s, m.mean_sensitivity};
    if (m.divergent()) r.status = "divergent-moment";
  } else if (target == "mean_work") {
    const auto w = work::mean_work(build_state(p), particles(p, true), tolerance(p, quad::kDefaultTol).tol);
    r.values = {w.w_bar, w.p_s, w.whole_ensemble(), w.quad_error};
  } else if (target == "mean_work_mc") {
    const auto w = work::mean_work_mc(build_state(p), particles(p, true), integer(p, "samples", 1000000), seed);
    r.values = {w.w_bar, w.p_s, w.mc_stderr, static_cast<double>(w.accepted)};
  } else if (target == "success_probability") {
    const auto dist = build_state(p);
    r.values = {find(p, "tol") ? work::success_probability_by_quadrature(dist, tolerance(p, 1e-10).tol).value
                               : work::success_probability(dist)};
  } else if (target == "langevin") {
    const int n = finite_particles(p, 50);
    const double alpha = number(p, "alpha");
    auto c = langevin::LangevinConfig::defaults(n, alpha, find(p, "dt") ? std::optional(number(p, "dt")) : std::nullopt);
    c.samples = integer(p, "samples", c.samples);
    c.ensemble = integer(p, "ensemble", c.ensemble);
    c.burn_in = integer(p, "burn_in", c.burn_in);
    c.thin = integer(p, "thin", c.thin);
    c.x0 = number(p, "x0", c.x0);
    c.seed = seed;
    const auto s = langevin::run(c);
    r.values = {s.mean,         s.variance,         s.snr, s.mean_stderr, s.ks_statistic, s.ks_critical_1pct,
                static_cast<double>(s.rejected_steps)};
  } else {
    info(target);
  }
  return r;
}

}  // namespace

const std::vector<std::string>& target_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : targets()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::vector<std::string>& parameter_names(const std::string& target) { return info(target).params; }
const std::vector<std::string>& output_columns(const std::string& target) { return info(target).outputs; }

PointResult evaluate(const std::string& target, const ParamMap& params, std::uint64_t seed) {
  const auto& accepted = parameter_names(target);
  for (const auto& [key, _] : params) {
    if (std::find(accepted.begin(), accepted.end(), key) == accepted.end()) {
      fail(ErrorKind::InvalidParameter, "parameter '" + key + "' is not accepted by target '" + target + "'");
    }
  }
  PointResult r;
  try {
    r = compute(target, params, seed);
  } catch (const Error& e) {
    return {std::string(to_string(e.kind())), Outputs(output_columns(target).size()), e.what()};
  }
  for (const auto& v : r.values) {
    if (v && !std::isfinite(*v)) {
      return {std::string(to_string(ErrorKind::IntegrationFailure)), Outputs(r.values.size()), "non-finite output"};
    }
  }
  return r;
}

void SweepSpec::validate() const {
  const auto& accepted = parameter_names(target);
  auto known = [&](const std::string& key) {
    if (std::find(accepted.begin(), accepted.end(), key) == accepted.end()) {
      fail(ErrorKind::InvalidParameter, "parameter '" + key + "' is not accepted by target '" + target + "'");
    }
  };
  require(!axes.empty(), ErrorKind::InvalidParameter, "a sweep needs at least one axis");
  std::set<std::string> seen;
  for (const auto& axis : axes) {
    known(axis.name);
    require(!axis.values.empty(), ErrorKind::InvalidParameter, "axis grids must be nonempty");
    require(seen.insert(axis.name).second, ErrorKind::InvalidParameter, "axis declared twice");
    require(!fixed.contains(axis.name), ErrorKind::InvalidParameter, "parameter both swept and fixed");
  }
  for (const auto& [key, _] : fixed) known(key);
  require(threads >= 0, ErrorKind::InvalidParameter, "threads must be non-negative");
}

std::size_t SweepSpec::size() const {
  std::size_t n = 1;
  for (const auto& axis : axes) n *= axis.values.size();
  return n;
}

SweepTable run_sweep(const SweepSpec& spec) {
  spec.validate();
  SweepTable table;
  for (const auto& axis : spec.axes) table.axis_columns.push_back(axis.name);
  table.output_columns = output_columns(spec.target);
  const std::size_t total = spec.size();
  table.rows.resize(total);

  auto point_of = [&](std::size_t index) {
    std::vector<ParamValue> point(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& values = spec.axes[a].values;
      point[a] = values[index % values.size()];
      index /= values.size();
    }
    return point;
  };

  auto evaluate_row = [&](std::size_t i) {
    SweepRow& row = table.rows[i];
    row.point = point_of(i);
    ParamMap params = spec.fixed;
    for (std::size_t a = 0; a < spec.axes.size(); ++a) params[spec.axes[a].name] = row.point[a];
    PointResult r;
    try {
      r = evaluate(spec.target, params, rng::derive_seed(spec.seed, i));
    } catch (const std::exception&) {
      r = {"internal-error", Outputs(table.output_columns.size()), {}};
    }
    row.status = std::move(r.status);
    row.values = std::move(r.values);
    row.message = std::move(r.message);
  };

  int threads = spec.threads == 0 ? static_cast<int>(std::thread::hardware_concurrency()) : spec.threads;
  threads = static_cast<int>(std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, total));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) evaluate_row(i);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return table;
}

std::string format_value(const ParamValue& v) {
  if (const auto* d = std::get_if<double>(&v)) return csv::format_double(*d);
  return std::get<std::string>(v);
}

void write_csv(std::ostream& out, const SweepSpec& spec, const SweepTable& table) {
  std::vector<std::pair<std::string, std::string>> meta;
  meta.emplace_back("tool", std::string("qpiston ") + QPISTON_VERSION);
  if (!spec.name.empty()) meta.emplace_back("preset", spec.name);
  meta.emplace_back("target", spec.target);
  for (const auto& axis : spec.axes) {
    std::string grid;
    for (std::size_t i = 0; i < axis.values.size(); ++i) grid += (i ? " " : "") + format_value(axis.values[i]);
    meta.emplace_back("axis " + axis.name, grid);
  }
  for (const auto& [key, value] : spec.fixed) meta.emplace_back("fixed " + key, format_value(value));
  meta.emplace_back("seed", std::to_string(spec.seed));
  csv::write_metadata(out, meta);

  std::vector<std::string> header = table.axis_columns;
  header.insert(header.end(), table.output_columns.begin(), table.output_columns.end());
  header.push_back("status");
  csv::write_row(out, header);
  for (const auto& row : table.rows) {
    std::vector<std::string> fields;
    for (const auto& v : row.point) fields.push_back(format_value(v));
    for (const auto& v : row.values) fields.push_back(v ? csv::format_double(*v) : std::string());
    fields.push_back(row.status);
    csv::write_row(out, fields);
  }
}

std::vector<ParamValue> linspace(double lo, double hi, int points) {
  require(points >= 1, ErrorKind::InvalidParameter, "linspace needs at least one point");
  std::vector<ParamValue> out;
  for (int i = 0; i < points; ++i) {
    out.emplace_back(points == 1 ? lo : lo + (hi - lo) * i / (points - 1));
  }
  return out;
}

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = {"fig2", "fig3", "fig4", "fig5",  "fig6",
                                                 "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"};
  return names;
}

SweepSpec figure_preset(const std::string& name) {
  constexpr int kPoints = 61;
  SweepSpec s;
  s.name = name;
  auto values = [](std::initializer_list<double> v) { return std::vector<ParamValue>(v.begin(), v.end()); };
  auto labels = [](std::initializer_list<const char*> v) {
    std::vector<ParamValue> out;
    for (const char* s : v) out.emplace_back(std::string(s));
    return out;
  };
  std::vector<ParamValue> nbar;
  for (int i = 0; i <= 20; ++i) nbar.emplace_back(static_cast<double>(i));

  if (name == "fig2") {
    s.target = "potential";
    s.axes = {{"alpha", values({-1.0, 0.0, 0.5, 1.0, 1.5})}, {"x", linspace(0.1, 6.1, kPoints)}};
  } else if (name == "fig3") {
    s.target = "gamma_pdf";
    s.axes = {{"alpha", values({0.5, 1.0, 1.5})}, {"x", linspace(0.4, 2.8, kPoints)}};
    s.fixed = {{"n_particles", 500.0}};
  } else if (name == "fig4") {
    s.target = "mixture_pdf";
    s.axes = {{"epsilon", values({0.0, 0.1, 0.5, 1.0})}, {"x", linspace(0.05, 3.05, kPoints)}};
    s.fixed = {{"alpha0", 1.0}, {"n_particles", 500.0}};
  } else if (name == "fig5" || name == "fig6") {
    s.target = "mixture_moments";
    s.axes = {{"epsilon", linspace(0.0, 30.0, kPoints)}};
    s.fixed = {{"alpha0", 1.0}, {"n_particles", 500.0}};
  } else if (name == "fig7") {
    s.target = "mean_work";
    s.axes = {{"n_particles", {ParamValue(std::string("inf")), ParamValue(1000.0)}}, {"epsilon", linspace(0.0, 6.0, kPoints)}};
    s.fixed = {{"alpha0", 1.0}};
  } else if (name == "fig8") {
    s.target = "mean_work";
    s.axes = {{"epsilon", values({0.0, 1.5, 3.0})}, {"alpha0", linspace(-10.0, 50.0, kPoints)}};
    s.fixed = {{"n_particles", std::string("inf")}};
  } else if (name == "fig9" || name == "fig10") {
    s.target = "mean_work";
    s.axes = {{"nbar", nbar}, {"state", labels({"coherent", "thermal", "fock"})}};
    s.fixed = {{"n_particles", std::string("inf")}};
  } else if (name == "fig11" || name == "fig12") {
    s.target = "mean_work";
    s.axes = {{"nbar", nbar}, {"state", labels({"coherent", "thermal", "fock", "squeezed", "phase-randomized"})}};
    s.fixed = {{"n_particles", std::string("inf")}, {"r", 2.0}, {"tau", std::numbers::pi / 4.0}};
  } else {
    fail(ErrorKind::InvalidParameter, "unknown figure preset '" + name + "'");
  }
  return s;
}

}  // namespace qpiston::sweep
