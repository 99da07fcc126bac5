#include <gtest/gtest.h>

#include <sstream>

#include "qpiston/errors.hpp"
#include "qpiston/sweep.hpp"
#include "qpiston/work.hpp"

using namespace qpiston;
using sweep::ParamValue;
using sweep::SweepSpec;

namespace {

std::string to_csv(const SweepSpec& spec) {
  std::ostringstream out;
  sweep::write_csv(out, spec, sweep::run_sweep(spec));
  return out.str();
}

}  // namespace

TEST(Sweep, Cardinality) {
  SweepSpec s;
  s.target = "mean_work";
  s.axes = {{"epsilon", {0.5, 1.0}}};
  s.fixed = {{"alpha0", 1.0}};
  const auto t = sweep::run_sweep(s);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].status, "ok");
  EXPECT_NEAR(*t.rows[0].values[0], work::mean_work(states::AlphaDistribution::gaussian(1.0, 0.5),
                                                     work::ParticleNumber::infinite())
                                        .w_bar,
              0.0);
}

TEST(Sweep, LexicographicOrder) {
  SweepSpec s;
  s.target = "gamma_moments";
  s.axes = {{"alpha", {1.0, 2.0}}, {"n_particles", {1.0, 10.0, 100.0}}};
  const auto t = sweep::run_sweep(s);
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(std::get<double>(t.rows[0].point[0]), 1.0);
  EXPECT_EQ(std::get<double>(t.rows[2].point[1]), 100.0);
  EXPECT_EQ(std::get<double>(t.rows[3].point[0]), 2.0);
  EXPECT_EQ(std::get<double>(t.rows[3].point[1]), 1.0);
}

TEST(Sweep, ErrorRowsKeepGoing) {
  SweepSpec s;
  s.target = "mean_work";
  s.axes = {{"alpha0", {-5.0, 1.0}}};
  s.fixed = {{"epsilon", 0.01}};
  const auto t = sweep::run_sweep(s);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].status, "no-stable-ensemble");
  for (const auto& v : t.rows[0].values) EXPECT_FALSE(v.has_value());
  EXPECT_EQ(t.rows[1].status, "ok");
}

TEST(Sweep, CsvShape) {
  SweepSpec s;
  s.target = "mean_work";
  s.axes = {{"alpha0", {-5.0, 1.0}}};
  s.fixed = {{"epsilon", 0.01}};
  const std::string csv = to_csv(s);
  EXPECT_NE(csv.find("# seed: 0\n"), std::string::npos);
  EXPECT_NE(csv.find("alpha0,w_bar,p_s,w_whole,quad_error,status\n"), std::string::npos);
  EXPECT_NE(csv.find("-5,,,,,no-stable-ensemble\n"), std::string::npos);
  EXPECT_EQ(csv.find("nan"), std::string::npos);
}

TEST(Sweep, DivergentMomentIsAStatus) {
  SweepSpec s;
  s.target = "mixture_moments";
  s.axes = {{"epsilon", {0.05, 5.0}}};
  s.fixed = {{"alpha0", 1.0}, {"n_particles", 500.0}};
  const auto t = sweep::run_sweep(s);
  EXPECT_EQ(t.rows[0].status, "ok");
  EXPECT_EQ(t.rows[1].status, "divergent-moment");
}

TEST(Sweep, Validation) {
  SweepSpec s;
  s.target = "mean_work";
  EXPECT_THROW(s.validate(), Error);
  s.axes = {{"bogus", {1.0}}};
  EXPECT_THROW(s.validate(), Error);
  s.axes = {{"epsilon", {}}};
  EXPECT_THROW(s.validate(), Error);
  s.axes = {{"epsilon", {1.0}}};
  s.fixed = {{"epsilon", 1.0}};
  EXPECT_THROW(s.validate(), Error);
  s.fixed.clear();
  s.target = "nope";
  EXPECT_THROW(s.validate(), Error);
}

TEST(Sweep, ParallelMatchesSerial) {
  auto s = sweep::figure_preset("fig7");
  s.threads = 1;
  const std::string serial = to_csv(s);
  s.threads = 4;
  EXPECT_EQ(to_csv(s), serial);
}

TEST(Sweep, MonteCarloSeedsPerPoint) {
  SweepSpec s;
  s.target = "mean_work_mc";
  s.axes = {{"epsilon", {1.0, 1.0}}};
  s.fixed = {{"samples", 1000.0}};
  s.seed = 3;
  const auto t = sweep::run_sweep(s);
  EXPECT_NE(*t.rows[0].values[0], *t.rows[1].values[0]);
  EXPECT_EQ(to_csv(s), to_csv(s));
}

TEST(Sweep, Fig9Dataset) {
  const auto s = sweep::figure_preset("fig9");
  const auto t = sweep::run_sweep(s);
  ASSERT_EQ(t.rows.size(), 63u);
  for (const auto& row : t.rows) EXPECT_EQ(row.status, "ok");
  const auto state = [](const sweep::SweepRow& r) { return std::get<std::string>(r.point[1]); };
  EXPECT_EQ(state(t.rows[0]), "coherent");
  EXPECT_EQ(state(t.rows[2]), "fock");
  // Vacuum row: all three states coincide.
  EXPECT_EQ(*t.rows[0].values[0], *t.rows[1].values[0]);
}

TEST(Sweep, EveryPresetRuns) {
  for (const auto& name : sweep::figure_names()) {
    const auto s = sweep::figure_preset(name);
    EXPECT_NO_THROW(s.validate()) << name;
    for (const auto& axis : s.axes) {
      const bool continuous = axis.values.size() > 30;
      if (continuous) EXPECT_EQ(axis.values.size(), 61u) << name << " " << axis.name;
    }
  }
  EXPECT_THROW(sweep::figure_preset("fig13"), Error);
}

TEST(Sweep, Linspace) {
  const auto v = sweep::linspace(0.0, 1.0, 5);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(std::get<double>(v[4]), 1.0);
  EXPECT_EQ(std::get<double>(v[1]), 0.25);
  EXPECT_EQ(sweep::format_value(ParamValue(0.1 + 0.2)), "0.3");
  EXPECT_EQ(sweep::format_value(ParamValue(std::string("fock"))), "fock");
}
