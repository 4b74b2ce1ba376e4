#include <gtest/gtest.h>

#include <cmath>
#include <mutex>

#include "oracles.hpp"
#include "photonfilter/errors.hpp"
#include "photonfilter/master_ensemble.hpp"

using namespace photonfilter;

namespace {

SimConfig coarse_grid() {
  SimConfig cfg;
  cfg.dt = 1e-2;
  return cfg;
}

}  // namespace

TEST(MasterEquation, QuietBeforeOnset) {
  const SeriesND me = integrate_master(coarse_grid());
  for (std::size_t k = 0; me.times[k] <= 3.0; ++k) ASSERT_EQ(me.values[k], 0.0);
}

TEST(MasterEquation, MatchedPulseClosedForm) {
  const SeriesND me = integrate_master(coarse_grid());
  double worst = 0.0;
  for (std::size_t k = 0; k < me.times.size(); ++k)
    worst = std::max(worst, std::abs(me.values[k] - oracle::resonant_absorption(0.1, 0.1, 3.0, me.times[k])));
  EXPECT_LE(worst, 1e-8);
  const auto peak = std::max_element(me.values.begin(), me.values.end()) - me.values.begin();
  EXPECT_NEAR(me.times[peak], 23.0, 1e-9);
  EXPECT_NEAR(me.values[peak], 4.0 * std::exp(-2.0), 1e-8);
}

TEST(MasterEquation, MismatchedPulseClosedForm) {
  SimConfig cfg = coarse_grid();
  cfg.gamma = 0.35;
  cfg.kappa = 0.15;
  cfg.t0 = 2.37;  // off-grid onset
  const SeriesND me = integrate_master(cfg);
  for (std::size_t k = 0; k < me.times.size(); ++k)
    ASSERT_NEAR(me.values[k], oracle::resonant_absorption(0.15, 0.35, 2.37, me.times[k]), 1e-8)
        << "t=" << me.times[k];
}

TEST(MasterEquation, FourthOrderConvergence) {
  SimConfig cfg = coarse_grid();
  cfg.gamma = 0.3;
  cfg.t_end = 43.0;
  auto error = [&](double dt) {
    cfg.dt = dt;
    const SeriesND me = integrate_master(cfg);
    double worst = 0.0;
    for (std::size_t k = 0; k < me.times.size(); ++k)
      worst = std::max(worst, std::abs(me.values[k] - oracle::resonant_absorption(0.1, 0.3, 3.0, me.times[k])));
    return worst;
  };
  const double ratio = error(0.2) / error(0.1);
  EXPECT_GT(ratio, 12.0);
  EXPECT_LT(ratio, 20.0);
}

TEST(MasterEquation, FasterCavityEmptiesSooner) {
  SimConfig fast = coarse_grid();
  SimConfig slow = coarse_grid();
  fast.kappa = 0.2;
  fast.gamma = 0.2;
  slow.kappa = 0.05;
  slow.gamma = 0.05;
  fast.dt = slow.dt = 0.1;
  const SeriesND a = integrate_master(fast);
  const SeriesND b = integrate_master(slow);
  for (std::size_t k = a.times.size() - 200; k < a.times.size(); ++k) EXPECT_LT(a.values[k], b.values[k]);
}

TEST(AnalyticOracle, Examples) {
  const SimConfig cfg;
  EXPECT_EQ(analytic_mean_photon(cfg, 2.0), 0.0);
  EXPECT_EQ(analytic_mean_photon(cfg, 3.0), 0.0);
  EXPECT_NEAR(analytic_mean_photon(cfg, 23.0), 0.541341, 1e-6);
  EXPECT_NEAR(analytic_mean_photon(cfg, 23.0), 4.0 * std::exp(-2.0), 1e-14);
}

TEST(AnalyticOracle, DetuningReducesAbsorption) {
  SimConfig tuned;
  SimConfig detuned;
  detuned.delta = 1.0;
  for (double t : {5.0, 13.0, 23.0, 60.0}) EXPECT_LT(analytic_mean_photon(detuned, t), analytic_mean_photon(tuned, t));
}

TEST(AnalyticOracle, DetunedAgainstSimpson) {
  SimConfig cfg;
  cfg.delta = 0.6;
  cfg.gamma = 0.2;
  const double t = 31.0;
  const Complex rate{0.05, 0.6};
  auto part = [&](bool imag) {
    return oracle::simpson(
        [&](double s) {
          const Complex v = std::exp(-rate * (t - s)) * std::sqrt(0.2) * std::exp(-0.1 * (s - 3.0));
          return imag ? v.imag() : v.real();
        },
        3.0, t, 20000);
  };
  const double re = part(false), im = part(true);
  EXPECT_NEAR(analytic_mean_photon(cfg, t), 0.1 * (re * re + im * im), 1e-12);
}

TEST(AnalyticOracle, DetunedMasterEquationAgrees) {
  SimConfig cfg = coarse_grid();
  cfg.delta = 0.4;
  cfg.t_end = 60.0;
  const SeriesND me = integrate_master(cfg);
  double worst = 0.0;
  for (std::size_t k = 0; k < me.times.size(); k += 7)
    worst = std::max(worst, std::abs(me.values[k] - analytic_mean_photon(cfg, me.times[k])));
  EXPECT_LE(worst, 1e-7);
}

TEST(Ensemble, SingleTrajectory) {
  SimConfig cfg;
  cfg.t_end = 20.0;
  const EnsembleStats s = run_ensemble(cfg, Detector::homodyne, Engine::moments, 1, 4);
  const Trajectory t = simulate_trajectory(cfg, Detector::homodyne, Engine::moments, trajectory_seed(4, 0));
  EXPECT_EQ(s.count, 1u);
  EXPECT_EQ(s.mean, t.n_cond);
  for (double e : s.std_error) EXPECT_EQ(e, 0.0);
}

TEST(Ensemble, MeanAndStandardErrorAgainstDirectSums) {
  SimConfig cfg;
  cfg.t_end = 15.0;
  const std::size_t m = 37;
  std::vector<std::vector<double>> rows(m);
  std::mutex mu;
  for_each_trajectory(cfg, Detector::photocount, Engine::moments, m, 21, 1, [&](std::size_t i, Trajectory&& t) {
    std::lock_guard lock(mu);
    rows[i] = std::move(t.n_cond);
  });
  const EnsembleStats s = run_ensemble(cfg, Detector::photocount, Engine::moments, m, 21);
  for (std::size_t k = 0; k < s.times.size(); k += 97) {
    long double sum = 0.0L;
    for (const auto& r : rows) sum += r[k];
    const long double mean = sum / m;
    long double ss = 0.0L;
    for (const auto& r : rows) ss += (r[k] - mean) * (r[k] - mean);
    const double se = std::sqrt(static_cast<double>(ss / (m - 1)) / m);
    EXPECT_NEAR(s.mean[k], static_cast<double>(mean), 1e-13);
    EXPECT_NEAR(s.std_error[k], se, 1e-12);
    EXPECT_GE(s.std_error[k], 0.0);
  }
}

TEST(Ensemble, OtherSeries) {
  SimConfig cfg;
  cfg.t_end = 10.0;
  EnsembleOptions opts;
  opts.series = TrajectorySeries::norm;
  const EnsembleStats s = run_ensemble(cfg, Detector::homodyne, Engine::moments, 20, 1, opts);
  for (double v : s.mean) EXPECT_NEAR(v, 1.0, 1e-12);
}

TEST(Ensemble, RejectsEmptyEnsemble) {
  EXPECT_THROW(run_ensemble(SimConfig{}, Detector::homodyne, Engine::moments, 0, 1), ConfigError);
}

TEST(ExpectedCountMean, MatchesMonteCarlo) {
  SimConfig cfg;
  cfg.t_end = 40.0;
  cfg.dt = 1e-2;
  const SeriesND exact = expected_count_mean(cfg);
  const EnsembleStats mc = run_ensemble(cfg, Detector::photocount, Engine::moments, 3000, 13);
  std::size_t within = 0;
  for (std::size_t k = 0; k < exact.times.size(); ++k)
    within += std::abs(exact.values[k] - mc.mean[k]) <= 4.0 * mc.std_error[k] + 1e-15 ? 1 : 0;
  EXPECT_GE(static_cast<double>(within) / exact.times.size(), 0.99);
}

TEST(ExpectedCountMean, ConvergesToMasterEquation) {
  SimConfig cfg;
  cfg.t_end = 60.0;
  auto gap = [&](double dt) {
    cfg.dt = dt;
    return sup_deviation(expected_count_mean(cfg).values, integrate_master(cfg).values);
  };
  const double coarse = gap(0.04);
  const double fine = gap(0.02);
  EXPECT_NEAR(coarse / fine, 2.0, 0.25);
}

TEST(SupDeviation, CommonPrefix) {
  EXPECT_EQ(sup_deviation({1.0, 2.0, 3.0}, {1.5, 2.0}), 0.5);
  EXPECT_EQ(sup_deviation({}, {1.0}), 0.0);
}
