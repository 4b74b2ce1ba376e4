#pragma once

// Single-photon filtering hierarchy for an arbitrary (S, L, H) system on a
// truncated Fock space.
//
// Each member of the hierarchy is carried as a coefficient matrix rho_ij with
// pi_ij(X) = tr(rho_ij X). The Heisenberg-picture equations for pi_ij(X) are
// mapped onto rho_ij through the trace duality tr(rho A X B) = tr(B rho A X),
// so one step updates pi_ij(|m><n|) for every basis operator at once.

#include <cstddef>

#include "photonfilter/filter_common.hpp"
#include "photonfilter/operators.hpp"

namespace photonfilter {

/// Open system (S, L, H). Derived products used by the filter are cached.
class SLHModel {
 public:
  /// Throws ShapeError on mismatched dimensions, ConfigError if S is not
  /// unitary or H not Hermitian (tolerance 1e-10).
  SLHModel(ComplexMatrix scattering, ComplexMatrix coupling, ComplexMatrix hamiltonian,
           double kappa = 0.0, double delta = 0.0);

  /// One-sided cavity: S = I, L = sqrt(kappa) a, H = delta a^dagger a.
  static SLHModel cavity(std::size_t dim, double kappa, double delta);

  std::size_t dim() const noexcept { return S_.dim(); }
  const ComplexMatrix& S() const noexcept { return S_; }
  const ComplexMatrix& L() const noexcept { return L_; }
  const ComplexMatrix& H() const noexcept { return H_; }
  const ComplexMatrix& S_dag() const noexcept { return S_dag_; }
  const ComplexMatrix& L_dag() const noexcept { return L_dag_; }
  const ComplexMatrix& L_dag_L() const noexcept { return L_dag_L_; }
  const ComplexMatrix& L_plus_L_dag() const noexcept { return L_plus_L_dag_; }
  double kappa() const noexcept { return kappa_; }
  double delta() const noexcept { return delta_; }

 private:
  ComplexMatrix S_, L_, H_;
  ComplexMatrix S_dag_, L_dag_, L_dag_L_, L_plus_L_dag_;
  double kappa_;
  double delta_;
};

struct GenericFilterState {
  ComplexMatrix rho11, rho10, rho01, rho00;

  explicit GenericFilterState(std::size_t dim)
      : rho11(dim), rho10(dim), rho01(dim), rho00(dim) {}

  std::size_t dim() const noexcept { return rho11.dim(); }

  ComplexMatrix& operator[](Block b);
  const ComplexMatrix& operator[](Block b) const;

  /// pi_ij(X) = tr(rho_ij X).
  Complex pi(Block b, const ComplexMatrix& op) const { return trace_product((*this)[b], op); }

  /// False if any entry of any block is NaN or infinite.
  bool finite() const;
};

/// rho11 = rho00 = |eta><eta|, rho10 = rho01 = 0. Throws NormalizationError
/// if eta is not normalized to 1e-12.
GenericFilterState init_filter(const FockKet& eta);

/// Homodyne gain K = pi11(L + L^dagger) + pi10(S^dagger) xi* + pi01(S) xi.
double homodyne_gain(const GenericFilterState& state, const SLHModel& model, Complex xi);
Complex raw_homodyne_gain(const GenericFilterState& state, const SLHModel& model, Complex xi);

/// Counting intensity nu = pi11(L^dagger L) + pi01(S^dagger L) xi*
///                        + pi10(L^dagger S) xi + pi00(I) |xi|^2, clamped at 0.
double count_intensity(const GenericFilterState& state, const SLHModel& model, Complex xi);
/// Same without clamping or sign checks.
Complex raw_count_intensity(const GenericFilterState& state, const SLHModel& model, Complex xi);

/// dt-coefficients of the hierarchy (shared by both detection schemes).
GenericFilterState drift(const GenericFilterState& state, const SLHModel& model, Complex xi);

/// state + drift * dt: the expectation of either stochastic step.
GenericFilterState drift_step(const GenericFilterState& state, const SLHModel& model,
                              Complex xi, double dt);

struct GenericHomodyneStep {
  GenericFilterState state;
  double dY;
};

/// One Euler-Maruyama step of the homodyne hierarchy driven by the innovation
/// increment dW. Returns the new state and the record increment K dt + dW.
GenericHomodyneStep homodyne_step(const GenericFilterState& state, const SLHModel& model,
                                  Complex xi, double dt, double dW);

/// A - B nu: the deterministic evolution between counts.
GenericFilterState no_click_rate(const GenericFilterState& state, const SLHModel& model,
                                 Complex xi);

/// One step of the photon-counting hierarchy. Without a jump the state follows
/// the compensated drift A - B nu, integrated by classical Runge-Kutta over
/// the step (the flow between counts is deterministic, and explicit Euler
/// drives nu below zero where the output field goes dark). With a jump it is
/// reset to pi + B, the nu^-1-weighted jump map evaluated at the step start.
/// Throws InvalidJumpError when jumping with nu < kIntensityFloor.
GenericFilterState photocount_step(const GenericFilterState& state, const SLHModel& model,
                                   const StepPulse& xi, double dt, bool jump);

}  // namespace photonfilter
