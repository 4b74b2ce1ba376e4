#pragma once

// Deterministic master-equation reference, its quadrature oracle, and
// ensemble statistics over filtered trajectories.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "photonfilter/config.hpp"
#include "photonfilter/sde_engine.hpp"

namespace photonfilter {

/// Mean photon number against time.
struct SeriesND {
  std::vector<double> times;
  std::vector<double> values;
};

struct EnsembleStats {
  std::vector<double> times;
  std::vector<double> mean;
  /// Standard error of the mean; zero for a single trajectory.
  std::vector<double> std_error;
  std::size_t count = 0;
};

/// <n>(t) from fourth-order Runge-Kutta on the drift of the moment hierarchy,
/// on the cfg grid. Steps straddling the photon onset are split there, so the
/// pulse discontinuity does not degrade the order.
SeriesND integrate_master(const SimConfig& cfg);

/// kappa |int_{t0}^{t} exp(-(i delta + kappa/2)(t - s)) xi(s) ds|^2 by adaptive
/// Gauss-Kronrod quadrature. Independent of the hierarchy integrator.
double analytic_mean_photon(const SimConfig& cfg, double t);

/// Exact expectation of the photon-counting ensemble mean of n_cond on the
/// cfg grid: the no-click path weighted by its survival probability
/// prod_j (1 - nu_j dt). Exact for the discrete scheme because a trajectory
/// clicks at most once and carries n = 0 afterwards.
SeriesND expected_count_mean(const SimConfig& cfg);

/// Which per-trajectory series an ensemble averages.
enum class TrajectorySeries { photon_number, record, rate, norm, vacuum_norm };

struct EnsembleOptions {
  TrajectorySeries series = TrajectorySeries::photon_number;
  std::size_t workers = 0;  // 0 selects default_workers()
};

/// Pointwise mean and standard error over `count` trajectories seeded from
/// `master_seed`. The reduction order depends only on trajectory indices, so
/// the result is bit-identical for any worker count.
EnsembleStats run_ensemble(const SimConfig& cfg, Detector detector, Engine engine,
                           std::size_t count, std::uint64_t master_seed,
                           const EnsembleOptions& options = {});

/// max_k |a[k] - b[k]| over the common prefix.
double sup_deviation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace photonfilter
