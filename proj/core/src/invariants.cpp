#include "photonfilter/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "parallel.hpp"
#include "photonfilter/errors.hpp"
#include "photonfilter/master_ensemble.hpp"
#include "photonfilter/operators.hpp"
#include "photonfilter/sde_engine.hpp"

namespace photonfilter {

namespace {

constexpr double kConjugationTol = 1e-9;
constexpr double kRealityTol = 1e-9;
constexpr double kNormTol = 1e-3;
constexpr double kIntensityTol = 1e-10;
constexpr double kFrozenTol = 1e-9;
constexpr double kEquivalenceTol = 1e-9;
constexpr double kCountTol = 0.03;
constexpr double kCommutatorTol = 1e-12;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string measured(double value, const char* relation, double tol) {
  return sci(value) + " " + relation + " " + sci(tol);
}

std::vector<double> noise_path(Detector detector, std::uint64_t seed, std::size_t steps,
                               double dt) {
  NoiseStream stream(seed);
  std::vector<double> path(steps);
  for (double& x : path)
    x = detector == Detector::homodyne ? wiener_increment(stream, dt) : stream.uniform();
  return path;
}

double max_gap(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) worst = std::max(worst, std::abs(a[k] - b[k]));
  return worst;
}

// Uniform in [0, 1) that clicks when one of the two finer steps clicks.
std::vector<double> coarsen_uniforms(const std::vector<double>& fine) {
  std::vector<double> coarse(fine.size() / 2);
  for (std::size_t k = 0; k < coarse.size(); ++k) {
    const double m = std::min(fine[2 * k], fine[2 * k + 1]);
    coarse[k] = 1.0 - (1.0 - m) * (1.0 - m);
  }
  return coarse;
}

struct StepExtremes {
  double conjugation = 0.0;
  double imaginary = 0.0;
  double norm = 0.0;
  double frozen = 0.0;
  double min_intensity = std::numeric_limits<double>::infinity();

  void merge(const StepExtremes& o) {
    conjugation = std::max(conjugation, o.conjugation);
    imaginary = std::max(imaginary, o.imaginary);
    norm = std::max(norm, o.norm);
    frozen = std::max(frozen, o.frozen);
    min_intensity = std::min(min_intensity, o.min_intensity);
  }
};

StepExtremes scan_trajectories(const SimConfig& cfg, Detector detector, std::size_t count,
                               std::uint64_t master_seed, std::size_t workers) {
  std::vector<StepExtremes> per(count);
  detail::parallel_for(count, workers, [&](std::size_t i) {
    StepExtremes& e = per[i];
    TrajectoryOptions options;
    options.observer = [&](const StepObservation& obs) {
      const MomentState& m = obs.moments;
      e.conjugation = std::max({e.conjugation, std::abs(m.s10.ad - std::conj(m.s01.a)),
                                std::abs(m.s01.ad - std::conj(m.s10.a)),
                                std::abs(m.s10.id - std::conj(m.s01.id))});
      e.imaginary = std::max({e.imaginary, std::abs(obs.raw_rate.imag()),
                              std::abs(m.s11.n.imag()), std::abs(m.s00.n.imag())});
      e.norm = std::max(e.norm, std::abs(m.s11.id - 1.0));
      e.frozen = std::max({e.frozen, std::abs(m.s00.n), std::abs(m.s00.a), std::abs(m.s00.ad),
                           std::abs(m.s10.n), std::abs(m.s01.n)});
      if (detector == Detector::photocount)
        e.min_intensity = std::min(e.min_intensity, obs.raw_rate.real());
    };
    try {
      simulate_trajectory(cfg, detector, Engine::moments, trajectory_seed(master_seed, i),
                          options);
    } catch (const DivergenceError& err) {
      throw err.in_trajectory(i);
    }
  });
  StepExtremes all;
  for (const StepExtremes& e : per) all.merge(e);
  return all;
}

template <typename Check>
void run_check(std::vector<CheckResult>& out, const std::string& name, Check&& check) {
  try {
    out.push_back(check());
    out.back().name = name;
  } catch (const std::exception& e) {
    out.push_back({name, false, e.what()});
  }
}

CheckResult bound(double value, double tol, const char* relation = "<=") {
  return {"", value <= tol, measured(value, relation, tol)};
}

}  // namespace

EquivalenceReport oracle_equivalence(const SimConfig& cfg, Detector detector,
                                     std::size_t trajectories, std::size_t steps,
                                     std::uint64_t master_seed) {
  SimConfig d2 = cfg;
  d2.t_end = cfg.t_start + static_cast<double>(steps) * cfg.dt;
  d2.fock_dim = 2;
  d2.validate();
  SimConfig d3 = d2;
  d3.fock_dim = 3;

  std::vector<EquivalenceReport> per(trajectories);
  detail::parallel_for(trajectories, default_workers(), [&](std::size_t i) {
    const auto path = noise_path(detector, trajectory_seed(master_seed, i), steps, cfg.dt);
    const Trajectory moments = simulate_trajectory_on_path(d2, detector, Engine::moments, path);
    const Trajectory generic2 = simulate_trajectory_on_path(d2, detector, Engine::generic, path);
    const Trajectory generic3 = simulate_trajectory_on_path(d3, detector, Engine::generic, path);
    per[i].moments_vs_generic = max_gap(moments.n_cond, generic2.n_cond);
    per[i].dim3_vs_dim2 = max_gap(generic3.n_cond, generic2.n_cond);
    // Diverging click sequences would show up above, but say so explicitly.
    if (moments.jumps.size() != generic2.jumps.size() ||
        generic2.jumps.size() != generic3.jumps.size())
      per[i].moments_vs_generic = std::numeric_limits<double>::infinity();
  });

  EquivalenceReport report;
  report.trajectories = trajectories;
  report.steps = steps;
  for (const auto& r : per) {
    report.moments_vs_generic = std::max(report.moments_vs_generic, r.moments_vs_generic);
    report.dim3_vs_dim2 = std::max(report.dim3_vs_dim2, r.dim3_vs_dim2);
  }
  return report;
}

WeakOrderReport weak_order_study(const SimConfig& cfg, std::size_t trajectories,
                                 std::uint64_t master_seed, unsigned reference_halvings,
                                 std::size_t workers) {
  if (reference_halvings < 2) throw ConfigError("reference level must be at least h/4");
  if (trajectories < 1) throw ConfigError("weak-order study needs trajectories");
  const unsigned levels = reference_halvings;

  SimConfig coarse = cfg;
  coarse.validate();
  SimConfig fine = cfg;
  fine.dt = cfg.dt / 2.0;
  SimConfig ref = cfg;
  ref.dt = std::ldexp(cfg.dt, -static_cast<int>(levels));

  const std::size_t n = SimGrid::from(coarse).steps;
  const std::size_t ref_steps = n << levels;
  if (SimGrid::from(ref).steps != ref_steps) throw ConfigError("inconsistent refinement grid");

  // Per-block sums of n at coarse grid points, folded in block order.
  constexpr std::size_t kBlock = 16;
  const std::size_t blocks = (trajectories + kBlock - 1) / kBlock;
  struct Sums {
    std::vector<double> coarse, fine, ref;
  };
  std::vector<Sums> partial(blocks);
  detail::parallel_for(blocks, workers == 0 ? default_workers() : workers, [&](std::size_t b) {
    Sums& s = partial[b];
    s.coarse.assign(n + 1, 0.0);
    s.fine.assign(n + 1, 0.0);
    s.ref.assign(n + 1, 0.0);
    const std::size_t end = std::min(trajectories, (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) {
      NoiseStream stream(trajectory_seed(master_seed, i));
      std::vector<double> u_ref(ref_steps);
      for (double& u : u_ref) u = stream.uniform();
      std::vector<double> u_fine = u_ref;
      for (unsigned l = levels; l > 1; --l) u_fine = coarsen_uniforms(u_fine);
      const std::vector<double> u_coarse = coarsen_uniforms(u_fine);

      auto accumulate = [&](const SimConfig& c, const std::vector<double>& u,
                            std::vector<double>& sum, unsigned shift) {
        Trajectory t;
        try {
          t = simulate_trajectory_on_path(c, Detector::photocount, Engine::moments, u);
        } catch (const DivergenceError& e) {
          throw e.in_trajectory(i);
        }
        for (std::size_t k = 0; k <= n; ++k) sum[k] += t.n_cond[k << shift];
      };
      accumulate(coarse, u_coarse, s.coarse, 0);
      accumulate(fine, u_fine, s.fine, 1);
      accumulate(ref, u_ref, s.ref, levels);
    }
  });
  Sums total{std::vector<double>(n + 1, 0.0), std::vector<double>(n + 1, 0.0),
             std::vector<double>(n + 1, 0.0)};
  for (const Sums& s : partial)
    for (std::size_t k = 0; k <= n; ++k) {
      total.coarse[k] += s.coarse[k];
      total.fine[k] += s.fine[k];
      total.ref[k] += s.ref[k];
    }

  // The master equation by RK4 on the reference grid.
  const SeriesND master = integrate_master(ref);
  const SeriesND exp_coarse = expected_count_mean(coarse);
  const SeriesND exp_fine = expected_count_mean(fine);
  const SeriesND exp_ref = expected_count_mean(ref);

  const double m = static_cast<double>(trajectories);
  double ref_bias = 0.0, gap_coarse = 0.0, gap_fine = 0.0, exact_coarse = 0.0, exact_fine = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double me = master.values[k << levels];
    ref_bias += exp_ref.values[k << levels] - me;
    gap_coarse += (total.coarse[k] - total.ref[k]) / m;
    gap_fine += (total.fine[k] - total.ref[k]) / m;
    exact_coarse += exp_coarse.values[k] - me;
    exact_fine += exp_fine.values[k << 1] - me;
  }
  const double points = static_cast<double>(n + 1);

  WeakOrderReport report;
  report.step = cfg.dt;
  report.trajectories = trajectories;
  report.bias_coarse = (gap_coarse + ref_bias) / points;
  report.bias_fine = (gap_fine + ref_bias) / points;
  report.ratio = report.bias_coarse / report.bias_fine;
  report.exact_coarse = exact_coarse / points;
  report.exact_fine = exact_fine / points;
  return report;
}

std::vector<CheckResult> run_invariant_suite(const SimConfig& cfg, const VerifyOptions& options) {
  cfg.validate();
  const std::size_t workers = options.workers == 0 ? default_workers() : options.workers;
  std::vector<CheckResult> out;

  run_check(out, "commutator truncation identity", [] {
    double worst = 0.0;
    for (std::size_t d = 2; d <= 8; ++d) {
      const ComplexMatrix c = commutator(annihilation(d), creation(d));
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t col = 0; col < d; ++col) {
          double expected = 0.0;
          if (r == col) expected = r + 1 < d ? 1.0 : -static_cast<double>(d - 1);
          worst = std::max(worst, std::abs(c(r, col) - expected));
        }
    }
    return bound(worst, kCommutatorTol);
  });

  for (Detector detector : {Detector::homodyne, Detector::photocount}) {
    const std::string tag = " (" + std::string(to_string(detector)) + ")";
    StepExtremes e;
    std::string failure;
    try {
      e = scan_trajectories(cfg, detector, options.trajectories, options.seed, workers);
    } catch (const std::exception& err) {
      failure = err.what();
    }
    auto report = [&](const std::string& name, auto&& make) {
      if (!failure.empty()) {
        out.push_back({name + tag, false, failure});
      } else {
        run_check(out, name + tag, make);
      }
    };
    report("conjugation pairs", [&] { return bound(e.conjugation, kConjugationTol); });
    report(detector == Detector::homodyne ? "reality of K, pi11(n), pi00(n)"
                                          : "reality of nu, pi11(n), pi00(n)",
           [&] { return bound(e.imaginary, kRealityTol); });
    report("pi11(I) stays at 1", [&] { return bound(e.norm, kNormTol); });
    report("vanishing vacuum-block moments", [&] { return bound(e.frozen, kFrozenTol); });
    if (detector == Detector::photocount) {
      report("counting intensity non-negative", [&] {
        return CheckResult{"", e.min_intensity >= -kIntensityTol,
                           "min " + measured(e.min_intensity, ">=", -kIntensityTol)};
      });
    }
  }

  {
    // One photon in, no loss: every click sequence has length 0 or 1 and the
    // mean number of clicks over a long window is 1.
    SimConfig window = cfg;
    const double horizon = cfg.t0 + 10.0 / cfg.gamma + 10.0 / cfg.kappa;
    window.t_end =
        cfg.t_start + std::ceil((horizon - cfg.t_start) / cfg.dt - 1e-9) * cfg.dt;
    std::vector<std::size_t> clicks(options.count_trajectories, 0);
    std::string failure;
    try {
      for_each_trajectory(window, Detector::photocount, Engine::moments,
                          options.count_trajectories, options.seed, workers,
                          [&](std::size_t i, Trajectory&& t) { clicks[i] = t.jumps.size(); });
    } catch (const std::exception& err) {
      failure = err.what();
    }
    if (!failure.empty()) {
      out.push_back({"at most one click per trajectory", false, failure});
      out.push_back({"mean clicks = 1", false, failure});
    } else {
      const std::size_t most = *std::max_element(clicks.begin(), clicks.end());
      double total = 0.0;
      for (std::size_t c : clicks) total += static_cast<double>(c);
      const double mean = total / static_cast<double>(clicks.size());
      out.push_back({"at most one click per trajectory", most <= 1,
                     "max " + std::to_string(most) + " over " + std::to_string(clicks.size())});
      out.push_back({"mean clicks = 1", std::abs(mean - 1.0) <= kCountTol,
                     "mean " + sci(mean) + " over " + std::to_string(clicks.size()) +
                         ", |mean - 1| " + measured(std::abs(mean - 1.0), "<=", kCountTol)});
    }
  }

  run_check(out, "drift-only evolution agrees across detectors", [&] {
    TrajectoryOptions drift;
    drift.mode = NoiseMode::drift_only;
    const Trajectory h = simulate_trajectory(cfg, Detector::homodyne, Engine::moments, 0, drift);
    const Trajectory p = simulate_trajectory(cfg, Detector::photocount, Engine::moments, 0, drift);
    return bound(max_gap(h.n_cond, p.n_cond), kEquivalenceTol);
  });

  for (Detector detector : {Detector::homodyne, Detector::photocount}) {
    const std::string tag = " (" + std::string(to_string(detector)) + ")";
    EquivalenceReport r;
    std::string failure;
    try {
      r = oracle_equivalence(cfg, detector, options.equivalence_trajectories,
                             options.equivalence_steps, options.seed);
    } catch (const std::exception& err) {
      failure = err.what();
    }
    if (!failure.empty()) {
      out.push_back({"moment filter matches generic D=2" + tag, false, failure});
      out.push_back({"generic D=3 matches D=2" + tag, false, failure});
      continue;
    }
    out.push_back({"moment filter matches generic D=2" + tag,
                   r.moments_vs_generic <= kEquivalenceTol,
                   measured(r.moments_vs_generic, "<=", kEquivalenceTol)});
    out.push_back({"generic D=3 matches D=2" + tag, r.dim3_vs_dim2 <= kEquivalenceTol,
                   measured(r.dim3_vs_dim2, "<=", kEquivalenceTol)});
  }
  return out;
}

}  // namespace photonfilter
