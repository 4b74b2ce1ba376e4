#include "photonfilter/sde_engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "parallel.hpp"
#include "photonfilter/errors.hpp"
#include "photonfilter/wavepacket.hpp"

namespace photonfilter {

namespace {

constexpr double kGridTolerance = 1e-12;
constexpr double kMaxJumpProbability = 0.1;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform interface over the two filters.
class MomentEngine {
 public:
  explicit MomentEngine(const SimConfig& cfg)
      : rates_{cfg.kappa, cfg.delta}, state_(init_moments()) {}

  double homodyne(Complex xi, double dt, double dW) {
    auto step = homodyne_moment_step(state_, rates_, xi, dt, dW);
    state_ = step.state;
    return step.dY;
  }
  void photocount(const StepPulse& xi, double dt, bool jump) {
    if (!jump && spent()) return;
    state_ = photocount_moment_step(state_, rates_, xi, dt, jump);
  }
  void drift(Complex xi, double dt) { state_ = moment_drift_step(state_, rates_, xi, dt); }
  double gain(Complex xi) const { return moment_homodyne_gain(state_, rates_, xi); }
  Complex raw_gain(Complex xi) const { return raw_moment_homodyne_gain(state_, rates_, xi); }
  double intensity(Complex xi) const { return moment_count_intensity(state_, rates_, xi); }
  Complex raw_intensity(Complex xi) const { return raw_moment_count_intensity(state_, rates_, xi); }
  const MomentState& moments() const { return state_; }

 private:
  // After a click only pi11(I) is non-zero. Every rate of the counting flow
  // vanishes there, so the Runge-Kutta step would return the state unchanged.
  bool spent() const {
    const Complex zero{};
    const Moments none{};
    return state_.s11.n == zero && state_.s11.a == zero && state_.s11.ad == zero &&
           state_.s10 == none && state_.s01 == none && state_.s00 == none;
  }

  CavityRates rates_;
  MomentState state_;
};

class GenericEngine {
 public:
  explicit GenericEngine(const SimConfig& cfg)
      : model_(SLHModel::cavity(cfg.fock_dim, cfg.kappa, cfg.delta)),
        state_(init_filter(FockKet::basis(cfg.fock_dim, 0))),
        moments_(tracked_moments(state_)) {}

  double homodyne(Complex xi, double dt, double dW) {
    auto step = homodyne_step(state_, model_, xi, dt, dW);
    update(std::move(step.state));
    return step.dY;
  }
  void photocount(const StepPulse& xi, double dt, bool jump) {
    update(photocount_step(state_, model_, xi, dt, jump));
  }
  void drift(Complex xi, double dt) { update(drift_step(state_, model_, xi, dt)); }
  double gain(Complex xi) const { return homodyne_gain(state_, model_, xi); }
  Complex raw_gain(Complex xi) const { return raw_homodyne_gain(state_, model_, xi); }
  double intensity(Complex xi) const { return count_intensity(state_, model_, xi); }
  Complex raw_intensity(Complex xi) const { return raw_count_intensity(state_, model_, xi); }
  const MomentState& moments() const { return moments_; }

 private:
  void update(GenericFilterState next) {
    state_ = std::move(next);
    moments_ = tracked_moments(state_);
  }

  SLHModel model_;
  GenericFilterState state_;
  MomentState moments_;
};

class StreamNoise {
 public:
  explicit StreamNoise(std::uint64_t seed) : stream_(seed) {}
  double gaussian(std::size_t, double dt) { return wiener_increment(stream_, dt); }
  bool jump(std::size_t, double nu, double dt) { return jump_draw(stream_, nu, dt); }

 private:
  NoiseStream stream_;
};

class PathNoise {
 public:
  explicit PathNoise(std::span<const double> path) : path_(path) {}
  double gaussian(std::size_t k, double) const { return path_[k]; }
  bool jump(std::size_t k, double nu, double dt) const { return jump_decision(path_[k], nu, dt); }

 private:
  std::span<const double> path_;
};

template <typename FilterEngine, typename Noise>
Trajectory drive(const SimConfig& cfg, Detector detector, Noise& noise,
                 const TrajectoryOptions& options) {
  cfg.validate();
  const SimGrid grid = SimGrid::from(cfg);
  const Wavepacket pulse(cfg.gamma, cfg.t0);
  const bool stochastic = options.mode == NoiseMode::stochastic;

  Trajectory traj;
  const std::size_t n = grid.steps + 1;
  traj.times = grid.times();
  traj.n_cond.resize(n);
  traj.record.assign(n, 0.0);
  traj.rate.resize(n);
  traj.norm.resize(n);
  traj.vacuum_norm.resize(n);

  FilterEngine filter(cfg);
  double counts = 0.0;

  // A pulse switching on inside a step is seen from the next grid point on,
  // as for the Euler schemes that sample it at the step start.
  auto step_pulse = [&](double t) {
    if (t < pulse.t0()) return StepPulse{};
    return StepPulse{pulse.xi(t), pulse.xi(t + 0.5 * cfg.dt), pulse.xi(t + cfg.dt)};
  };

  auto observe = [&](std::size_t k, Complex xi) {
    const MomentState& m = filter.moments();
    traj.n_cond[k] = m.s11.n.real();
    traj.norm[k] = m.s11.id.real();
    traj.vacuum_norm[k] = m.s00.id.real();
    Complex raw;
    if (detector == Detector::homodyne) {
      raw = filter.raw_gain(xi);
      traj.rate[k] = filter.gain(xi);
    } else {
      raw = filter.raw_intensity(xi);
      // Without clicks nothing divides by nu, and the Euler master-equation
      // iterate may dip below zero where the output field goes dark.
      traj.rate[k] = stochastic ? filter.intensity(xi)
                                : std::max(0.0, require_real(raw, "counting intensity"));
    }
    if (options.observer) options.observer(StepObservation{k, traj.times[k], m, raw});
  };

  std::size_t k = 0;
  try {
    for (; k < grid.steps; ++k) {
      const double t = traj.times[k];
      const Complex xi = pulse.xi(t);
      observe(k, xi);
      if (detector == Detector::homodyne) {
        const double dW = stochastic ? noise.gaussian(k, cfg.dt) : 0.0;
        traj.record[k + 1] = filter.homodyne(xi, cfg.dt, dW);
      } else if (!stochastic) {
        filter.drift(xi, cfg.dt);
        traj.record[k + 1] = counts;
      } else {
        const double nu = traj.rate[k];
        bool jump = noise.jump(k, nu, cfg.dt);
        if (nu < kIntensityFloor) jump = false;
        filter.photocount(step_pulse(t), cfg.dt, jump);
        if (jump) {
          counts += 1.0;
          traj.jumps.push_back(t + cfg.dt);
        }
        traj.record[k + 1] = counts;
      }
    }
    observe(grid.steps, pulse.xi(traj.times[grid.steps]));
  } catch (const DivergenceError& e) {
    throw e.at_time(traj.times[k]);
  } catch (const GridTooCoarseError& e) {
    throw GridTooCoarseError(std::string(e.what()) + " at t=" + std::to_string(traj.times[k]));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw DivergenceError(e.what(), traj.times[k]);
  }
  return traj;
}

template <typename Noise>
Trajectory dispatch(const SimConfig& cfg, Detector detector, Engine engine, Noise& noise,
                    const TrajectoryOptions& options) {
  if (engine == Engine::moments) return drive<MomentEngine>(cfg, detector, noise, options);
  return drive<GenericEngine>(cfg, detector, noise, options);
}

}  // namespace

SimGrid SimGrid::make(double t_start, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("time step must be > 0");
  const double span = t_end - t_start;
  if (!(span > 0.0)) throw ConfigError("grid end must follow its start");
  const double ratio = std::round(span / dt);
  if (ratio < 1.0 || std::abs(ratio * dt - span) > kGridTolerance * std::max(1.0, span))
    throw ConfigError("grid span " + std::to_string(span) + " is not a multiple of dt " +
                      std::to_string(dt));
  return SimGrid{t_start, t_end, dt, static_cast<std::size_t>(ratio)};
}

std::vector<double> SimGrid::times() const {
  std::vector<double> out(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) out[k] = time(k);
  return out;
}

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

NoiseStream::NoiseStream(std::uint64_t seed) : engine_(seed) {}

double wiener_increment(NoiseStream& stream, double dt) {
  return std::sqrt(dt) * stream.standard_normal();
}

bool jump_decision(double uniform, double nu, double dt) {
  const double p = nu * dt;
  if (p > kMaxJumpProbability)
    throw GridTooCoarseError("jump probability " + std::to_string(p) + " per step exceeds 0.1");
  return uniform < p;
}

bool jump_draw(NoiseStream& stream, double nu, double dt) {
  return jump_decision(stream.uniform(), nu, dt);
}

MomentState tracked_moments(const GenericFilterState& state) {
  const std::size_t d = state.dim();
  const ComplexMatrix n = number_op(d);
  const ComplexMatrix a = annihilation(d);
  const ComplexMatrix ad = creation(d);
  MomentState m{};
  for (Block b : {Block::b11, Block::b10, Block::b01, Block::b00})
    m[b] = {state.pi(b, n), state.pi(b, a), state.pi(b, ad), state[b].trace()};
  return m;
}

Trajectory simulate_trajectory(const SimConfig& cfg, Detector detector, Engine engine,
                               std::uint64_t seed, const TrajectoryOptions& options) {
  StreamNoise noise(seed);
  Trajectory t = dispatch(cfg, detector, engine, noise, options);
  t.seed = seed;
  return t;
}

Trajectory simulate_trajectory_on_path(const SimConfig& cfg, Detector detector, Engine engine,
                                       std::span<const double> noise,
                                       const TrajectoryOptions& options) {
  const SimGrid grid = SimGrid::from(cfg);
  if (options.mode == NoiseMode::stochastic && noise.size() < grid.steps)
    throw ConfigError("noise path shorter than the grid");
  PathNoise path(noise);
  return dispatch(cfg, detector, engine, path, options);
}

void for_each_trajectory(const SimConfig& cfg, Detector detector, Engine engine,
                         std::size_t count, std::uint64_t master_seed, std::size_t workers,
                         const std::function<void(std::size_t, Trajectory&&)>& sink) {
  cfg.validate();
  detail::parallel_for(count, workers, [&](std::size_t i) {
    try {
      sink(i, simulate_trajectory(cfg, detector, engine, trajectory_seed(master_seed, i)));
    } catch (const DivergenceError& e) {
      throw e.in_trajectory(i);
    }
  });
}

std::size_t default_workers() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace photonfilter
