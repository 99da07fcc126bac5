#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qpiston/errors.hpp"
#include "qpiston/rng.hpp"
#include "qpiston/states.hpp"

using namespace qpiston;
using states::AlphaDistribution;

namespace {

double full_line(const AlphaDistribution& d, double lo, double hi, auto&& f) {
  return oracle::simpson([&](double a) { return f(a) * d.density(a); }, lo, hi, 200000);
}

}  // namespace

TEST(States, GaussianDensity) {
  const auto d = AlphaDistribution::gaussian(1.5, 0.7);
  for (double a : {-1.0, 0.0, 1.5, 3.0}) EXPECT_NEAR(d.density(a), oracle::gaussian_pdf(a, 1.5, 0.7), 1e-15);
  const auto m = states::moments(d);
  EXPECT_NEAR(m.mean, 1.5, 1e-10);
  EXPECT_NEAR(m.variance, 0.49, 1e-10);
}

TEST(States, ZeroWidthIsPointMass) {
  const auto d = AlphaDistribution::gaussian(2.0, 0.0);
  EXPECT_TRUE(d.is_point_mass());
  EXPECT_THROW(d.density(2.0), Error);
  const auto m = states::moments(d);
  EXPECT_EQ(m.mean, 2.0);
  EXPECT_EQ(m.variance, 0.0);
}

TEST(States, RejectsBadParameters) {
  EXPECT_THROW(AlphaDistribution::gaussian(1.0, -0.1), Error);
  EXPECT_THROW(AlphaDistribution::fock(-1), Error);
  EXPECT_THROW(AlphaDistribution::phase_randomized(-1.0, 0.5), Error);
  EXPECT_THROW(AlphaDistribution::phase_randomized(1.0, 0.0), Error);
  EXPECT_THROW(states::make_preset("cat", 1, 0, 0, 0), Error);
}

TEST(States, FockMatchesExplicitDensity) {
  for (int n : {0, 1, 3, 7}) {
    const auto d = AlphaDistribution::fock(n);
    for (double a : {-2.0, 0.3, 1.0, 2.2, 4.5}) {
      EXPECT_NEAR(d.density(a), oracle::fock_pdf(n, a), 1e-13) << n << " " << a;
    }
  }
}

TEST(States, FockMoments) {
  for (int n : {0, 2, 5, 30}) {
    const auto d = AlphaDistribution::fock(n);
    const auto m = states::moments(d);
    EXPECT_NEAR(m.mean, 1.0, 1e-9);
    EXPECT_NEAR(m.variance, 2.0 * n + 1.0, 1e-8 * (2.0 * n + 1.0));
  }
}

TEST(States, FockNormalizedByOracle) {
  const auto d = AlphaDistribution::fock(4);
  EXPECT_NEAR(full_line(d, -12, 14, [](double) { return 1.0; }), 1.0, 1e-12);
}

TEST(States, PresetParameters) {
  const auto coh = states::from_preset(states::Coherent{4.0});
  EXPECT_NEAR(coh.density(5.0), oracle::gaussian_pdf(5.0, 5.0, 1.0), 1e-15);
  const auto th = states::from_preset(states::Thermal{2.0});
  EXPECT_NEAR(th.density(0.0), oracle::gaussian_pdf(0.0, 1.0, std::sqrt(5.0)), 1e-15);
  const double r = 2.0;
  const double nbar = 20.0;
  const auto sq = states::from_preset(states::SqueezedCoherent{nbar, r});
  const double centre = 1.0 + 2.0 * std::sqrt(nbar - std::sinh(r) * std::sinh(r));
  EXPECT_NEAR(sq.density(centre), oracle::gaussian_pdf(centre, centre, std::exp(-r)), 1e-12);
}

TEST(States, SqueezingNeedsEnoughPhotons) {
  try {
    states::from_preset(states::SqueezedCoherent{10.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
}

TEST(States, VacuumPresetsCoincide) {
  const auto a = states::from_preset(states::Coherent{0.0});
  const auto b = states::from_preset(states::Thermal{0.0});
  const auto c = states::from_preset(states::FockPreset{0});
  for (double x : {-1.0, 0.5, 1.0, 2.0}) {
    EXPECT_NEAR(a.density(x), b.density(x), 1e-16);
    EXPECT_NEAR(a.density(x), c.density(x), 1e-15);
  }
}

TEST(States, PhaseRandomizedAgainstDirectPhaseAverage) {
  const double nbar = 9.0;
  const double tau = std::numbers::pi / 4.0;
  const auto d = AlphaDistribution::phase_randomized(nbar, tau);
  const double cut = d.phase_cutoff();
  const double mass = std::erf(cut / (std::numbers::sqrt2 * tau));
  for (double a : {-3.0, 0.0, 2.0, 5.0, 7.0}) {
    const double ref = oracle::simpson(
                           [&](double phi) {
                             return oracle::gaussian_pdf(phi, 0.0, tau) *
                                    oracle::gaussian_pdf(a, 1.0 + 2.0 * std::sqrt(nbar) * std::cos(phi), 1.0);
                           },
                           -cut, cut, 20000) /
                       mass;
    EXPECT_NEAR(d.density(a), ref, 1e-11) << a;
  }
}

TEST(States, PhaseRandomizedMoments) {
  const double nbar = 4.0;
  const double tau = 0.3;
  const auto m = states::moments(AlphaDistribution::phase_randomized(nbar, tau));
  const double c1 = std::exp(-0.5 * tau * tau);
  const double c2 = 0.5 * (1.0 + std::exp(-2.0 * tau * tau));
  EXPECT_NEAR(m.mean, 1.0 + 2.0 * std::sqrt(nbar) * c1, 1e-7);
  EXPECT_NEAR(m.variance, 1.0 + 4.0 * nbar * (c2 - c1 * c1), 1e-7);
}

TEST(States, SamplerMoments) {
  const AlphaDistribution dists[] = {AlphaDistribution::gaussian(0.5, 2.0), AlphaDistribution::fock(3),
                                     AlphaDistribution::phase_randomized(4.0, 0.8)};
  for (const auto& d : dists) {
    const states::AlphaSampler sampler(d);
    const auto exact = states::moments(d);
    const int n = 200000;
    double s1 = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      rng::StreamRng stream(42, static_cast<std::uint64_t>(i));
      const double a = sampler(stream);
      s1 += a;
      s2 += a * a;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    EXPECT_NEAR(mean, exact.mean, 4.0 * std::sqrt(exact.variance / n)) << d.describe();
    EXPECT_NEAR(var, exact.variance, 0.02 * exact.variance) << d.describe();
  }
}

TEST(States, FockSamplerHistogram) {
  // Rejection sampler against the oracle mass of the n = 1 density below 0.
  const auto d = AlphaDistribution::fock(1);
  const states::AlphaSampler sampler(d);
  const double exact = full_line(d, -12.0, 0.0, [](double) { return 1.0; });
  const int n = 200000;
  int below = 0;
  for (int i = 0; i < n; ++i) {
    rng::StreamRng stream(3, static_cast<std::uint64_t>(i));
    if (sampler(stream) < 0.0) ++below;
  }
  EXPECT_NEAR(static_cast<double>(below) / n, exact, 4.0 * std::sqrt(exact * (1 - exact) / n));
}

TEST(States, WeightedIntegralRespectsLowerLimit) {
  const auto d = AlphaDistribution::gaussian(0.0, 1.0);
  const auto r = states::integrate_weighted(d, [](double) { return 1.0; }, 0.0);
  EXPECT_NEAR(r.value, 0.5, 1e-12);
  const auto pm = AlphaDistribution::point_mass(2.0);
  EXPECT_EQ(states::integrate_weighted(pm, [](double a) { return a * a; }, 0.0).value, 4.0);
  EXPECT_EQ(states::integrate_weighted(pm, [](double a) { return a * a; }, 3.0).value, 0.0);
}
