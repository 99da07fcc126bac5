#include "qpiston/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qpiston/errors.hpp"
#include "qpiston/hermite.hpp"
#include "qpiston/special.hpp"

namespace qpiston::states {

namespace {

constexpr double kBulkSigmas = 12.0;
constexpr int kPhasePanels = 512;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double fock_log_norm(int n) {
  return -n * std::numbers::ln2 - special::log_gamma(n + 1.0) - std::log(kSqrtTwoPi);
}

double fock_density(int n, double alpha) {
  const double y = alpha - 1.0;
  const auto h = hermite::physicists_log(n, y / std::numbers::sqrt2);
  if (h.sign == 0) return 0.0;
  return std::exp(2.0 * h.log_abs + fock_log_norm(n) - 0.5 * y * y);
}

double phase_cutoff_for(double tau) {
  return std::min(std::max(6.0 * tau, std::numbers::pi), 8.5 * tau);
}

double phase_randomized_density(double nbar, double tau, double alpha) {
  // Even in phi: integrate [0, U] and double.
  static constexpr double kNode = 0.77459666924148337704;  // sqrt(3/5)
  static constexpr double kWEdge = 5.0 / 9.0;
  static constexpr double kWMid = 8.0 / 9.0;

  const double cutoff = phase_cutoff_for(tau);
  const double amplitude = 2.0 * std::sqrt(nbar);
  const double inv_two_tau2 = 0.5 / (tau * tau);
  auto integrand = [&](double phi) {
    const double z = alpha - 1.0 - amplitude * std::cos(phi);
    return std::exp(-phi * phi * inv_two_tau2 - 0.5 * z * z);
  };
  const double h = cutoff / kPhasePanels;
  double sum = 0.0;
  for (int i = 0; i < kPhasePanels; ++i) {
    const double c = (i + 0.5) * h;
    const double d = 0.5 * h * kNode;
    sum += kWEdge * (integrand(c - d) + integrand(c + d)) + kWMid * integrand(c);
  }
  sum *= 0.5 * h;
  // Phase weight 1/(sqrt(2 pi) tau) and alpha weight 1/sqrt(2 pi), renormalized
  // by the phase mass kept inside [-U, U].
  const double kept = std::erf(cutoff / (std::numbers::sqrt2 * tau));
  return 2.0 * sum / (2.0 * std::numbers::pi * tau * kept);
}

std::vector<double> make_breakpoints(const AlphaDistribution::Variant& v, std::pair<double, double> bulk) {
  std::vector<double> pts{bulk.first, bulk.second};
  std::visit(Overloaded{
                 [&](const PointMass& pm) { pts.push_back(pm.alpha0); },
                 [&](const Gaussian& g) {
                   for (double k : {-6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0}) pts.push_back(g.alpha0 + k * g.epsilon);
                 },
                 [&](const Fock& f) {
                   pts.push_back(1.0);
                   for (double t : hermite::roots(f.n)) pts.push_back(1.0 + std::numbers::sqrt2 * t);
                 },
                 [&](const PhaseRandomizedCoherent& pr) {
                   const double amp = 2.0 * std::sqrt(pr.nbar);
                   const double lo = 1.0 + amp * std::cos(std::min(phase_cutoff_for(pr.tau), std::numbers::pi));
                   const double hi = 1.0 + amp;
                   for (double p : {lo - 6.0, lo - 3.0, lo, 1.0, hi, hi + 3.0, hi + 6.0}) pts.push_back(p);
                 },
             },
             v);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

AlphaDistribution::AlphaDistribution(Variant v)
    : variant_(std::move(v)),
      breakpoints_(std::make_shared<const std::vector<double>>(make_breakpoints(variant_, bulk()))) {}

AlphaDistribution AlphaDistribution::point_mass(double alpha0) {
  require(std::isfinite(alpha0), ErrorKind::InvalidParameter, "alpha0 must be finite");
  return AlphaDistribution(PointMass{alpha0});
}

AlphaDistribution AlphaDistribution::gaussian(double alpha0, double epsilon) {
  require(std::isfinite(alpha0), ErrorKind::InvalidParameter, "alpha0 must be finite");
  require(epsilon >= 0.0 && std::isfinite(epsilon), ErrorKind::InvalidParameter,
          "epsilon must be finite and non-negative");
  if (epsilon == 0.0) return point_mass(alpha0);
  return AlphaDistribution(Gaussian{alpha0, epsilon});
}

AlphaDistribution AlphaDistribution::fock(int n) {
  require(n >= 0 && n <= 2000, ErrorKind::InvalidParameter, "Fock number must be in [0, 2000]");
  return AlphaDistribution(Fock{n});
}

AlphaDistribution AlphaDistribution::phase_randomized(double nbar, double tau) {
  require(nbar >= 0.0 && std::isfinite(nbar), ErrorKind::InvalidParameter,
          "nbar must be finite and non-negative");
  require(tau > 0.0 && std::isfinite(tau), ErrorKind::InvalidParameter, "tau must be positive");
  return AlphaDistribution(PhaseRandomizedCoherent{nbar, tau});
}

double AlphaDistribution::density(double alpha) const {
  return std::visit(
      Overloaded{
          [](const PointMass&) -> double {
            fail(ErrorKind::DegenerateDistribution,
                 "point-mass (epsilon = 0) distribution has no pointwise density");
          },
          [alpha](const Gaussian& g) { return special::normal_pdf((alpha - g.alpha0) / g.epsilon) / g.epsilon; },
          [alpha](const Fock& f) { return fock_density(f.n, alpha); },
          [alpha](const PhaseRandomizedCoherent& pr) { return phase_randomized_density(pr.nbar, pr.tau, alpha); },
      },
      variant_);
}

std::pair<double, double> AlphaDistribution::bulk() const {
  return std::visit(
      Overloaded{
          [](const PointMass& pm) { return std::pair{pm.alpha0, pm.alpha0}; },
          [](const Gaussian& g) {
            return std::pair{g.alpha0 - kBulkSigmas * g.epsilon, g.alpha0 + kBulkSigmas * g.epsilon};
          },
          [](const Fock& f) {
            const double half = std::numbers::sqrt2 * (std::sqrt(2.0 * f.n + 1.0) + 9.0);
            return std::pair{1.0 - half, 1.0 + half};
          },
          [](const PhaseRandomizedCoherent& pr) {
            const double amp = 2.0 * std::sqrt(pr.nbar);
            const double lo = 1.0 + amp * std::cos(std::min(phase_cutoff_for(pr.tau), std::numbers::pi));
            return std::pair{lo - kBulkSigmas, 1.0 + amp + kBulkSigmas};
          },
      },
      variant_);
}

double AlphaDistribution::phase_cutoff() const {
  const auto* pr = std::get_if<PhaseRandomizedCoherent>(&variant_);
  return pr ? phase_cutoff_for(pr->tau) : 0.0;
}

std::string AlphaDistribution::describe() const {
  std::ostringstream out;
  out.precision(12);
  std::visit(Overloaded{
                 [&](const PointMass& pm) { out << "point-mass(alpha0=" << pm.alpha0 << ")"; },
                 [&](const Gaussian& g) { out << "gaussian(alpha0=" << g.alpha0 << ", eps=" << g.epsilon << ")"; },
                 [&](const Fock& f) { out << "fock(n=" << f.n << ")"; },
                 [&](const PhaseRandomizedCoherent& pr) {
                   out << "phase-randomized(nbar=" << pr.nbar << ", tau=" << pr.tau << ")";
                 },
             },
             variant_);
  return out.str();
}

AlphaDistribution from_preset(const StatePreset& preset) {
  return std::visit(
      Overloaded{
          [](const Coherent& c) {
            require(c.nbar >= 0.0, ErrorKind::InvalidParameter, "nbar must be non-negative");
            return AlphaDistribution::gaussian(1.0 + 2.0 * std::sqrt(c.nbar), 1.0);
          },
          [](const Thermal& t) {
            require(t.nbar >= 0.0, ErrorKind::InvalidParameter, "nbar must be non-negative");
            return AlphaDistribution::gaussian(1.0, std::sqrt(1.0 + 2.0 * t.nbar));
          },
          [](const SqueezedCoherent& s) {
            const double sh = std::sinh(s.r);
            const double displacement = s.nbar - sh * sh;
            require(displacement >= 0.0, ErrorKind::InvalidParameter,
                    "squeezed state needs nbar >= sinh^2(r)");
            return AlphaDistribution::gaussian(1.0 + 2.0 * std::sqrt(displacement), std::exp(-s.r));
          },
          [](const FockPreset& f) { return AlphaDistribution::fock(f.n); },
          [](const PhaseRandomized& p) { return AlphaDistribution::phase_randomized(p.nbar, p.tau); },
      },
      preset);
}

StatePreset make_preset(const std::string& name, double nbar, int n, double r, double tau) {
  if (name == "coherent") return Coherent{nbar};
  if (name == "thermal") return Thermal{nbar};
  if (name == "squeezed") return SqueezedCoherent{nbar, r};
  if (name == "fock") return FockPreset{n};
  if (name == "phase-randomized") return PhaseRandomized{nbar, tau};
  fail(ErrorKind::InvalidParameter, "unknown state '" + name +
                                        "' (expected coherent, thermal, fock, squeezed, phase-randomized)");
}

quad::IntegrationResult integrate_weighted(const AlphaDistribution& dist, const quad::Integrand& f,
                                           double lower, quad::Options opts,
                                           const std::vector<double>& extra_points) {
  if (const auto* pm = std::get_if<PointMass>(&dist.variant())) {
    if (pm->alpha0 > lower) return {f(pm->alpha0), 0.0, 1};
    return {};
  }

  const double bulk_lo = dist.bulk().first;
  std::vector<double> pts;
  if (std::isfinite(lower)) pts.push_back(lower);
  for (double p : dist.breakpoints()) {
    if (p > lower) pts.push_back(p);
  }
  for (double p : extra_points) {
    if (p > lower && std::isfinite(p)) pts.push_back(p);
  }
  if (pts.empty()) pts.push_back(std::max(lower, bulk_lo));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  auto weighted = [&](double a) {
    const double fa = f(a);
    if (fa == 0.0) return 0.0;
    return fa * dist.density(a);
  };

  quad::IntegrationResult total;
  if (!std::isfinite(lower)) total += quad::integrate_semi_infinite_left(weighted, pts.front(), opts);
  total += quad::integrate_pieces(weighted, pts, opts);
  // Breakpoints always contain bulk_hi, so the tail starts at or beyond it.
  total += quad::integrate_semi_infinite(weighted, pts.back(), opts);
  return total;
}

Moments moments(const AlphaDistribution& dist, double tol) {
  if (const auto* pm = std::get_if<PointMass>(&dist.variant())) return {pm->alpha0, 0.0};
  const quad::Options opts{tol};
  const double inf = -std::numeric_limits<double>::infinity();
  const double mass = integrate_weighted(dist, [](double) { return 1.0; }, inf, opts).value;
  const double mean = integrate_weighted(dist, [](double a) { return a; }, inf, opts).value / mass;
  const double variance =
      integrate_weighted(dist, [mean](double a) { return (a - mean) * (a - mean); }, inf, opts).value / mass;
  return {mean, variance};
}

AlphaSampler::AlphaSampler(AlphaDistribution dist) : dist_(std::move(dist)) {
  const auto* f = std::get_if<Fock>(&dist_.variant());
  if (!f) return;
  proposal_std_ = 1.2 * std::sqrt(2.0 * f->n + 1.0);
  const auto [lo, hi] = dist_.bulk();
  constexpr int kScan = 40000;
  double ratio = 0.0;
  for (int i = 0; i <= kScan; ++i) {
    const double a = lo + (hi - lo) * i / kScan;
    const double z = (a - 1.0) / proposal_std_;
    const double q = std::exp(-0.5 * z * z) / (proposal_std_ * kSqrtTwoPi);
    if (q > 0.0) ratio = std::max(ratio, dist_.density(a) / q);
  }
  envelope_ = 1.02 * ratio;
}

}  // namespace qpiston::states
