#pragma once

// Time grid, reproducible noise streams and the trajectory driver that runs
// either filter engine under either detection scheme.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

#include "photonfilter/config.hpp"
#include "photonfilter/filter_generic.hpp"
#include "photonfilter/filter_moments.hpp"

namespace photonfilter {

/// Uniform grid t_start + k dt, k = 0..steps.
struct SimGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double dt = 0.0;
  std::size_t steps = 0;

  /// Throws ConfigError unless (t_end - t_start)/dt is an integer >= 1 to
  /// within 1e-12 in time.
  static SimGrid make(double t_start, double t_end, double dt);
  static SimGrid from(const SimConfig& cfg) { return make(cfg.t_start, cfg.t_end, cfg.dt); }

  double time(std::size_t k) const noexcept { return t_start + static_cast<double>(k) * dt; }
  std::vector<double> times() const;
};

/// Seed of trajectory `index` within an ensemble: a splitmix64 hash of both
/// values, so streams do not depend on scheduling.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

/// One independent random stream.
class NoiseStream {
 public:
  explicit NoiseStream(std::uint64_t seed);

  double standard_normal() { return normal_(engine_); }
  /// Uniform on [0, 1).
  double uniform() { return std::generate_canonical<double, 53>(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_;
};

/// Gaussian increment with mean 0 and variance dt.
double wiener_increment(NoiseStream& stream, double dt);

/// Bernoulli draw with probability nu * dt. Consumes exactly one uniform
/// regardless of nu. Throws GridTooCoarseError if nu * dt > 0.1.
bool jump_draw(NoiseStream& stream, double nu, double dt);
/// Same decision for an externally supplied uniform sample.
bool jump_decision(double uniform, double nu, double dt);

struct Trajectory {
  std::vector<double> times;
  /// Conditional photon number pi11(n).
  std::vector<double> n_cond;
  /// Homodyne: record increment dY over the step ending at times[k] (0 at k = 0).
  /// Photon counting: cumulative count at times[k].
  std::vector<double> record;
  /// Homodyne gain K or counting intensity nu (clamped at 0) at times[k].
  std::vector<double> rate;
  /// pi11(I) and pi00(I).
  std::vector<double> norm;
  std::vector<double> vacuum_norm;
  std::vector<double> jumps;
  std::uint64_t seed = 0;
};

enum class NoiseMode {
  stochastic,
  /// Martingale increments forced to zero: dW = 0 for homodyne, compensated
  /// dN = 0 for counting. Both reduce to the master equation.
  drift_only,
};

/// Filter state at one grid point, projected onto {n, a, a^dag, I}.
struct StepObservation {
  std::size_t step;
  double t;
  const MomentState& moments;
  /// Homodyne gain or counting intensity before clamping.
  Complex raw_rate;
};

using StepObserver = std::function<void(const StepObservation&)>;

struct TrajectoryOptions {
  NoiseMode mode = NoiseMode::stochastic;
  StepObserver observer;
};

/// pi_ij(n), pi_ij(a), pi_ij(a^dag), pi_ij(I) of a generic filter state.
MomentState tracked_moments(const GenericFilterState& state);

/// Runs one seeded trajectory from the vacuum cavity. Filter errors are
/// re-raised as DivergenceError carrying the time of the failing step.
Trajectory simulate_trajectory(const SimConfig& cfg, Detector detector, Engine engine,
                               std::uint64_t seed, const TrajectoryOptions& options = {});

/// Same, driven by a pre-drawn noise path of length steps: Wiener increments
/// for homodyne, uniforms in [0, 1) for photon counting.
Trajectory simulate_trajectory_on_path(const SimConfig& cfg, Detector detector, Engine engine,
                                       std::span<const double> noise,
                                       const TrajectoryOptions& options = {});

/// Runs trajectories 0..count-1 of an ensemble on up to `workers` threads and
/// hands each finished trajectory to `sink` (called concurrently; must be
/// thread-safe). A failure is re-raised with its trajectory index.
void for_each_trajectory(const SimConfig& cfg, Detector detector, Engine engine,
                         std::size_t count, std::uint64_t master_seed, std::size_t workers,
                         const std::function<void(std::size_t, Trajectory&&)>& sink);

/// Default worker count: hardware concurrency, at least 1.
std::size_t default_workers();

}  // namespace photonfilter
