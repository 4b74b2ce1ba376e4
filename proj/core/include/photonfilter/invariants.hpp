#pragma once

// Self-checks behind `photonfilter verify`, and the two numerical studies
// (engine equivalence, weak convergence) they draw on.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "photonfilter/config.hpp"

namespace photonfilter {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Largest per-step |delta pi11(n)| between filters driven by identical noise.
struct EquivalenceReport {
  std::size_t trajectories = 0;
  std::size_t steps = 0;
  /// Moment filter against the generic filter at D = 2.
  double moments_vs_generic = 0.0;
  /// Generic filter at D = 3 against D = 2.
  double dim3_vs_dim2 = 0.0;
};

/// Runs `trajectories` noise paths of `steps` steps from cfg.t_start through
/// the moment filter and the generic filter at D = 2 and D = 3.
EquivalenceReport oracle_equivalence(const SimConfig& cfg, Detector detector,
                                     std::size_t trajectories, std::size_t steps,
                                     std::uint64_t master_seed);

/// Time-averaged signed bias <E[mean n] - ME> of the photon-counting ensemble
/// at step h = cfg.dt and at h/2.
struct WeakOrderReport {
  double step = 0.0;
  std::size_t trajectories = 0;
  /// Monte-Carlo estimates on common random numbers.
  double bias_coarse = 0.0;
  double bias_fine = 0.0;
  double ratio = 0.0;
  /// The same biases from expected_count_mean, without sampling.
  double exact_coarse = 0.0;
  double exact_fine = 0.0;
};

/// Estimates the bias at h and h/2 as <mean_h - mean_ref> + <E[mean_ref] - ME>
/// where the reference ensemble runs at h / 2^reference_halvings on the same
/// random numbers. Coarse uniforms are built from pairs of finer ones as
/// 1 - (1 - min(u1, u2))^2, which is again uniform and clicks when either
/// finer step would (to first order), so the sampling noise cancels in the
/// differences. Requires reference_halvings >= 2.
WeakOrderReport weak_order_study(const SimConfig& cfg, std::size_t trajectories,
                                 std::uint64_t master_seed, unsigned reference_halvings = 4,
                                 std::size_t workers = 0);

struct VerifyOptions {
  std::uint64_t seed = 1;
  /// Seeds per detector for the per-step invariants.
  std::size_t trajectories = 100;
  /// Photon-counting trajectories for the click statistics.
  std::size_t count_trajectories = 1000;
  std::size_t equivalence_trajectories = 100;
  std::size_t equivalence_steps = 10000;
  std::size_t workers = 0;
};

/// Runs every check on cfg's physical parameters. A check that throws is
/// reported as failed with the error text.
std::vector<CheckResult> run_invariant_suite(const SimConfig& cfg, const VerifyOptions& options = {});

}  // namespace photonfilter
