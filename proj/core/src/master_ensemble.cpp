#include "photonfilter/master_ensemble.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parallel.hpp"
#include "photonfilter/errors.hpp"
#include "photonfilter/filter_moments.hpp"
#include "photonfilter/wavepacket.hpp"

namespace photonfilter {

namespace {

// Trajectories per reduction block. Fixed, so sums never depend on threading.
constexpr std::size_t kBlockSize = 16;

MomentState rk4_step(const MomentState& s, const CavityRates& c, const Wavepacket& pulse,
                     double a, double b) {
  // Inside [a, b] the pulse is either off everywhere or smooth everywhere.
  const bool on = a >= pulse.t0();
  auto xi = [&](double t) { return on ? pulse.xi(t) : Complex{}; };
  const double h = b - a;
  const double mid = a + 0.5 * h;
  const MomentState k1 = moment_drift(s, c, xi(a));
  const MomentState k2 = moment_drift(s + (0.5 * h) * k1, c, xi(mid));
  const MomentState k3 = moment_drift(s + (0.5 * h) * k2, c, xi(mid));
  const MomentState k4 = moment_drift(s + h * k3, c, xi(b));
  return s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

const std::vector<double>& pick(const Trajectory& t, TrajectorySeries which) {
  switch (which) {
    case TrajectorySeries::photon_number: return t.n_cond;
    case TrajectorySeries::record: return t.record;
    case TrajectorySeries::rate: return t.rate;
    case TrajectorySeries::norm: return t.norm;
    case TrajectorySeries::vacuum_norm: break;
  }
  return t.vacuum_norm;
}

struct BlockSums {
  std::vector<double> sum;
  std::vector<double> sum_sq;
};

}  // namespace

SeriesND integrate_master(const SimConfig& cfg) {
  cfg.validate();
  const SimGrid grid = SimGrid::from(cfg);
  const Wavepacket pulse(cfg.gamma, cfg.t0);
  const CavityRates rates{cfg.kappa, cfg.delta};

  SeriesND out{grid.times(), std::vector<double>(grid.steps + 1)};
  MomentState s = init_moments();
  out.values[0] = s.s11.n.real();
  for (std::size_t k = 0; k < grid.steps; ++k) {
    const double a = out.times[k];
    const double b = out.times[k + 1];
    if (a < pulse.t0() && pulse.t0() < b) {
      s = rk4_step(s, rates, pulse, a, pulse.t0());
      s = rk4_step(s, rates, pulse, pulse.t0(), b);
    } else {
      s = rk4_step(s, rates, pulse, a, b);
    }
    if (!s.finite()) throw DivergenceError("master equation is not finite", b);
    out.values[k + 1] = s.s11.n.real();
  }
  return out;
}

double analytic_mean_photon(const SimConfig& cfg, double t) {
  if (t <= cfg.t0) return 0.0;
  const Wavepacket pulse(cfg.gamma, cfg.t0);
  const Complex rate{0.5 * cfg.kappa, cfg.delta};
  auto kernel = [&](double s) { return std::exp(-rate * (t - s)) * pulse.xi(s); };

  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  constexpr unsigned kMaxDepth = 15;
  constexpr double kTolerance = 1e-12;
  const double re = Quadrature::integrate([&](double s) { return kernel(s).real(); }, cfg.t0, t,
                                          kMaxDepth, kTolerance);
  const double im = Quadrature::integrate([&](double s) { return kernel(s).imag(); }, cfg.t0, t,
                                          kMaxDepth, kTolerance);
  return cfg.kappa * (re * re + im * im);
}

SeriesND expected_count_mean(const SimConfig& cfg) {
  cfg.validate();
  const SimGrid grid = SimGrid::from(cfg);
  // Uniforms of 1 never click.
  const std::vector<double> never(grid.steps, 1.0);
  const Trajectory dark =
      simulate_trajectory_on_path(cfg, Detector::photocount, Engine::moments, never);

  SeriesND out{dark.times, std::vector<double>(grid.steps + 1)};
  double survival = 1.0;
  for (std::size_t k = 0; k <= grid.steps; ++k) {
    out.values[k] = survival * dark.n_cond[k];
    if (dark.rate[k] >= kIntensityFloor) survival *= 1.0 - dark.rate[k] * cfg.dt;
  }
  return out;
}

EnsembleStats run_ensemble(const SimConfig& cfg, Detector detector, Engine engine,
                           std::size_t count, std::uint64_t master_seed,
                           const EnsembleOptions& options) {
  cfg.validate();
  if (count < 1) throw ConfigError("ensemble needs at least one trajectory");
  const SimGrid grid = SimGrid::from(cfg);
  const std::size_t n = grid.steps + 1;
  const std::size_t workers = options.workers == 0 ? default_workers() : options.workers;
  const std::size_t blocks = (count + kBlockSize - 1) / kBlockSize;

  std::vector<double> sum(n, 0.0), sum_sq(n, 0.0);

  // Process `workers` blocks at a time and fold them in block order.
  for (std::size_t first = 0; first < blocks; first += workers) {
    const std::size_t round = std::min(workers, blocks - first);
    std::vector<BlockSums> partial(round);
    detail::parallel_for(round, workers, [&](std::size_t r) {
      BlockSums& acc = partial[r];
      acc.sum.assign(n, 0.0);
      acc.sum_sq.assign(n, 0.0);
      const std::size_t begin = (first + r) * kBlockSize;
      const std::size_t end = std::min(count, begin + kBlockSize);
      for (std::size_t i = begin; i < end; ++i) {
        Trajectory traj;
        try {
          traj = simulate_trajectory(cfg, detector, engine, trajectory_seed(master_seed, i));
        } catch (const DivergenceError& e) {
          throw e.in_trajectory(i);
        }
        const std::vector<double>& v = pick(traj, options.series);
        for (std::size_t k = 0; k < n; ++k) {
          acc.sum[k] += v[k];
          acc.sum_sq[k] += v[k] * v[k];
        }
      }
    });
    for (const BlockSums& p : partial)
      for (std::size_t k = 0; k < n; ++k) {
        sum[k] += p.sum[k];
        sum_sq[k] += p.sum_sq[k];
      }
  }

  EnsembleStats stats;
  stats.times = grid.times();
  stats.count = count;
  stats.mean.resize(n);
  stats.std_error.assign(n, 0.0);
  const double m = static_cast<double>(count);
  for (std::size_t k = 0; k < n; ++k) {
    stats.mean[k] = sum[k] / m;
    if (count > 1) {
      const double var = std::max(0.0, (sum_sq[k] - sum[k] * sum[k] / m) / (m - 1.0));
      stats.std_error[k] = std::sqrt(var / m);
    }
  }
  return stats;
}

double sup_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

}  // namespace photonfilter
