#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qpiston/quad.hpp"

namespace qpiston::states {

inline constexpr double kSqrtTwoPi = 2.50662827463100050242;

/// Deterministic membrane: all mass at alpha0.
struct PointMass {
  double alpha0;
};

struct Gaussian {
  double alpha0;
  double epsilon;  ///< > 0; zero width is a PointMass
};

/// Position density of the n-th oscillator eigenstate in alpha units:
/// vacuum variance 1, centered at alpha = 1.
struct Fock {
  int n;
};

/// Coherent state of mean photon number nbar averaged over a Gaussian
/// phase of standard deviation tau.
struct PhaseRandomizedCoherent {
  double nbar;
  double tau;
};

/// Membrane-induced distribution p(alpha) of the potential slope, over the
/// whole real line. Rectification to alpha > 0 happens in the consumers.
/// Immutable; copies share precomputed tables.
class AlphaDistribution {
 public:
  using Variant = std::variant<PointMass, Gaussian, Fock, PhaseRandomizedCoherent>;

  static AlphaDistribution point_mass(double alpha0);
  /// epsilon == 0 yields the point-mass variant.
  static AlphaDistribution gaussian(double alpha0, double epsilon);
  static AlphaDistribution fock(int n);
  static AlphaDistribution phase_randomized(double nbar, double tau);

  const Variant& variant() const noexcept { return variant_; }
  bool is_point_mass() const noexcept { return std::holds_alternative<PointMass>(variant_); }

  /// p(alpha). Throws DegenerateDistribution for the point-mass variant.
  double density(double alpha) const;

  /// Interval outside of which the density is below ~1e-30 of its peak scale.
  std::pair<double, double> bulk() const;

  /// Sorted abscissae inside the bulk where integrands built on p(alpha)
  /// should be split: peak neighbourhoods, Fock density zeros.
  const std::vector<double>& breakpoints() const noexcept { return *breakpoints_; }

  /// Short human-readable description, e.g. "gaussian(alpha0=1, eps=0.5)".
  std::string describe() const;

  /// Upper phase limit actually used by the phase-randomized density.
  double phase_cutoff() const;

 private:
  explicit AlphaDistribution(Variant v);

  Variant variant_;
  std::shared_ptr<const std::vector<double>> breakpoints_;
};

/// Radiation state presets compared at equal mean photon number.
struct Coherent {
  double nbar;
};
struct Thermal {
  double nbar;
};
struct SqueezedCoherent {
  double nbar;
  double r;
};
struct FockPreset {
  int n;
};
struct PhaseRandomized {
  double nbar;
  double tau;
};

using StatePreset = std::variant<Coherent, Thermal, SqueezedCoherent, FockPreset, PhaseRandomized>;

/// coherent: alpha0 = 1 + 2 sqrt(nbar), eps = 1
/// thermal:  alpha0 = 1, eps = sqrt(1 + 2 nbar)
/// squeezed: alpha0 = 1 + 2 sqrt(nbar - sinh^2 r), eps = e^-r
AlphaDistribution from_preset(const StatePreset& preset);

/// Parses a preset name (coherent, thermal, fock, squeezed, phase-randomized).
/// Parameters not used by the named state are ignored.
StatePreset make_preset(const std::string& name, double nbar, int n, double r, double tau);

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of p(alpha) by quadrature over the whole real line.
Moments moments(const AlphaDistribution& dist, double tol = quad::kDefaultTol);

/// Integral of f(alpha) p(alpha) over [lower, inf), split at the
/// distribution's breakpoints plus `extra_points`, with a semi-infinite tail
/// beyond the bulk. lower may be -inf.
quad::IntegrationResult integrate_weighted(const AlphaDistribution& dist, const quad::Integrand& f,
                                           double lower, quad::Options opts = {},
                                           const std::vector<double>& extra_points = {});

/// Draws alpha from p(alpha). Point mass, Gaussian and phase-randomized use
/// direct composition; Fock uses rejection from a Gaussian envelope.
class AlphaSampler {
 public:
  explicit AlphaSampler(AlphaDistribution dist);

  template <class Rng>
  double operator()(Rng& rng) const;

  /// Envelope constant of the Fock rejection step (1 for exact samplers).
  double envelope() const noexcept { return envelope_; }

 private:
  AlphaDistribution dist_;
  double envelope_ = 1.0;
  double proposal_std_ = 1.0;
};

template <class Rng>
double AlphaSampler::operator()(Rng& rng) const {
  const auto& v = dist_.variant();
  if (const auto* pm = std::get_if<PointMass>(&v)) return pm->alpha0;
  if (const auto* g = std::get_if<Gaussian>(&v)) return g->alpha0 + g->epsilon * rng.normal();
  if (const auto* pr = std::get_if<PhaseRandomizedCoherent>(&v)) {
    const double cutoff = dist_.phase_cutoff();
    double phi = 0.0;
    do {
      phi = pr->tau * rng.normal();
    } while (phi > cutoff || phi < -cutoff);
    return 1.0 + 2.0 * std::sqrt(pr->nbar) * std::cos(phi) + rng.normal();
  }
  // Fock: proposal N(1, proposal_std^2), accept with p / (M q).
  for (;;) {
    const double z = rng.normal();
    const double alpha = 1.0 + proposal_std_ * z;
    const double q = std::exp(-0.5 * z * z) / (proposal_std_ * kSqrtTwoPi);
    if (rng.uniform() * envelope_ * q < dist_.density(alpha)) return alpha;
  }
}

}  // namespace qpiston::states
