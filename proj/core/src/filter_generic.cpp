#include "photonfilter/filter_generic.hpp"

#include <cmath>

#include "photonfilter/errors.hpp"

namespace photonfilter {

namespace {

constexpr double kModelTolerance = 1e-10;
constexpr double kNormTolerance = 1e-12;

// Dual of X -> -i[X,H] + L^dag X L - (L^dag L X + X L^dag L)/2 under tr(rho .).
ComplexMatrix lindblad_dual(const ComplexMatrix& rho, const SLHModel& m) {
  ComplexMatrix out = m.L() * rho * m.L_dag();
  out.add_scaled(-kI, m.H() * rho);
  out.add_scaled(kI, rho * m.H());
  out.add_scaled(-0.5, m.L_dag_L() * rho);
  out.add_scaled(-0.5, rho * m.L_dag_L());
  return out;
}

// L rho + rho L^dag, the dual of X -> X L + L^dag X.
ComplexMatrix measurement_dual(const ComplexMatrix& rho, const SLHModel& m) {
  return m.L() * rho + rho * m.L_dag();
}

void require_finite(const GenericFilterState& s) {
  if (!s.finite()) throw DivergenceError("generic filter state is not finite");
}

// Numerators of the nu^-1-weighted jump map.
GenericFilterState jump_numerators(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  const Complex xi_c = std::conj(xi);
  const double xi2 = std::norm(xi);
  GenericFilterState j(s.dim());
  j.rho11 = m.L() * s.rho11 * m.L_dag();
  j.rho11.add_scaled(xi_c, m.L() * s.rho01 * m.S_dag());
  j.rho11.add_scaled(xi, m.S() * s.rho10 * m.L_dag());
  j.rho11.add_scaled(xi2, m.S() * s.rho00 * m.S_dag());
  j.rho10 = m.L() * s.rho10 * m.L_dag();
  j.rho10.add_scaled(xi_c, m.L() * s.rho00 * m.S_dag());
  j.rho01 = m.L() * s.rho01 * m.L_dag();
  j.rho01.add_scaled(xi, m.S() * s.rho00 * m.L_dag());
  j.rho00 = m.L() * s.rho00 * m.L_dag();
  return j;
}

}  // namespace

SLHModel::SLHModel(ComplexMatrix scattering, ComplexMatrix coupling, ComplexMatrix hamiltonian,
                   double kappa, double delta)
    : S_(std::move(scattering)),
      L_(std::move(coupling)),
      H_(std::move(hamiltonian)),
      S_dag_(S_.adjoint()),
      L_dag_(L_.adjoint()),
      L_dag_L_(L_dag_ * L_),
      L_plus_L_dag_(L_ + L_dag_),
      kappa_(kappa),
      delta_(delta) {
  if (L_.dim() != S_.dim() || H_.dim() != S_.dim())
    throw ShapeError("S, L and H must act on the same space");
  if (!is_unitary(S_, kModelTolerance)) throw ConfigError("scattering matrix is not unitary");
  if (!is_hermitian(H_, kModelTolerance)) throw ConfigError("Hamiltonian is not Hermitian");
}

SLHModel SLHModel::cavity(std::size_t dim, double kappa, double delta) {
  if (!(kappa >= 0.0)) throw ConfigError("cavity decay rate must be >= 0");
  return SLHModel(ComplexMatrix::identity(dim), std::sqrt(kappa) * annihilation(dim),
                  delta * number_op(dim), kappa, delta);
}

ComplexMatrix& GenericFilterState::operator[](Block b) {
  switch (b) {
    case Block::b11: return rho11;
    case Block::b10: return rho10;
    case Block::b01: return rho01;
    case Block::b00: break;
  }
  return rho00;
}

const ComplexMatrix& GenericFilterState::operator[](Block b) const {
  return const_cast<GenericFilterState&>(*this)[b];
}

bool GenericFilterState::finite() const {
  for (const auto* m : {&rho11, &rho10, &rho01, &rho00})
    for (const auto& z : m->entries())
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

GenericFilterState init_filter(const FockKet& eta) {
  if (std::abs(eta.norm_squared() - 1.0) > kNormTolerance)
    throw NormalizationError("initial cavity ket is not normalized");
  GenericFilterState s(eta.dim());
  s.rho11 = eta.projector();
  s.rho00 = s.rho11;
  return s;
}

Complex raw_homodyne_gain(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  return s.pi(Block::b11, m.L_plus_L_dag()) + s.pi(Block::b10, m.S_dag()) * std::conj(xi) +
         s.pi(Block::b01, m.S()) * xi;
}

double homodyne_gain(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  return require_real(raw_homodyne_gain(s, m, xi), "homodyne gain");
}

Complex raw_count_intensity(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  return s.pi(Block::b11, m.L_dag_L()) + s.pi(Block::b01, m.S_dag() * m.L()) * std::conj(xi) +
         s.pi(Block::b10, m.L_dag() * m.S()) * xi + s.rho00.trace() * std::norm(xi);
}

double count_intensity(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  return clamp_intensity(raw_count_intensity(s, m, xi));
}

GenericFilterState drift(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  const Complex xi_c = std::conj(xi);
  GenericFilterState a(s.dim());

  a.rho11 = lindblad_dual(s.rho11, m);
  // pi01(S^dag [X, L]) xi*
  a.rho11.add_scaled(xi_c, m.L() * s.rho01 * m.S_dag() - s.rho01 * m.S_dag() * m.L());
  // pi10([L^dag, X] S) xi
  a.rho11.add_scaled(xi, m.S() * s.rho10 * m.L_dag() - m.L_dag() * m.S() * s.rho10);
  // pi00(S^dag X S - X) |xi|^2
  a.rho11.add_scaled(std::norm(xi), m.S() * s.rho00 * m.S_dag() - s.rho00);

  a.rho10 = lindblad_dual(s.rho10, m);
  a.rho10.add_scaled(xi_c, m.L() * s.rho00 * m.S_dag() - s.rho00 * m.S_dag() * m.L());

  a.rho01 = lindblad_dual(s.rho01, m);
  a.rho01.add_scaled(xi, m.S() * s.rho00 * m.L_dag() - m.L_dag() * m.S() * s.rho00);

  a.rho00 = lindblad_dual(s.rho00, m);
  return a;
}

GenericFilterState drift_step(const GenericFilterState& s, const SLHModel& m, Complex xi,
                              double dt) {
  const GenericFilterState a = drift(s, m, xi);
  GenericFilterState next = s;
  for (Block b : {Block::b11, Block::b10, Block::b01, Block::b00}) next[b].add_scaled(dt, a[b]);
  require_finite(next);
  return next;
}

GenericHomodyneStep homodyne_step(const GenericFilterState& s, const SLHModel& m, Complex xi,
                                  double dt, double dW) {
  const double gain = homodyne_gain(s, m, xi);
  const Complex xi_c = std::conj(xi);
  const GenericFilterState a = drift(s, m, xi);

  GenericFilterState d(s.dim());
  d.rho11 = measurement_dual(s.rho11, m);
  d.rho11.add_scaled(xi_c, s.rho01 * m.S_dag());
  d.rho11.add_scaled(xi, m.S() * s.rho10);
  d.rho11.add_scaled(-gain, s.rho11);

  d.rho10 = measurement_dual(s.rho10, m);
  d.rho10.add_scaled(xi_c, s.rho00 * m.S_dag());
  d.rho10.add_scaled(-gain, s.rho10);

  d.rho01 = measurement_dual(s.rho01, m);
  d.rho01.add_scaled(xi, m.S() * s.rho00);
  d.rho01.add_scaled(-gain, s.rho01);

  d.rho00 = measurement_dual(s.rho00, m);
  d.rho00.add_scaled(-gain, s.rho00);

  GenericHomodyneStep out{s, gain * dt + dW};
  for (Block b : {Block::b11, Block::b10, Block::b01, Block::b00}) {
    out.state[b].add_scaled(dt, a[b]);
    out.state[b].add_scaled(dW, d[b]);
  }
  require_finite(out.state);
  return out;
}

GenericFilterState no_click_rate(const GenericFilterState& s, const SLHModel& m, Complex xi) {
  GenericFilterState rate = drift(s, m, xi);
  const double nu = count_intensity(s, m, xi);
  if (nu >= kIntensityFloor) {
    // B nu = J - nu pi
    const GenericFilterState j = jump_numerators(s, m, xi);
    for (Block b : {Block::b11, Block::b10, Block::b01, Block::b00}) {
      rate[b] -= j[b];
      rate[b].add_scaled(nu, s[b]);
    }
  }
  return rate;
}

GenericFilterState photocount_step(const GenericFilterState& s, const SLHModel& m,
                                   const StepPulse& xi, double dt, bool jump) {
  const double nu = count_intensity(s, m, xi.start);
  if (jump && nu < kIntensityFloor)
    throw InvalidJumpError("photon count with vanishing intensity");

  constexpr Block kBlocks[] = {Block::b11, Block::b10, Block::b01, Block::b00};
  GenericFilterState next(s.dim());
  if (jump) {
    const GenericFilterState j = jump_numerators(s, m, xi.start);
    for (Block b : kBlocks) next[b] = (1.0 / nu) * j[b];
  } else {
    auto shifted = [&](const GenericFilterState& k, double h) {
      GenericFilterState out = s;
      for (Block b : kBlocks) out[b].add_scaled(h, k[b]);
      return out;
    };
    const GenericFilterState k1 = no_click_rate(s, m, xi.start);
    const GenericFilterState k2 = no_click_rate(shifted(k1, 0.5 * dt), m, xi.mid);
    const GenericFilterState k3 = no_click_rate(shifted(k2, 0.5 * dt), m, xi.mid);
    const GenericFilterState k4 = no_click_rate(shifted(k3, dt), m, xi.end);
    next = s;
    for (Block b : kBlocks) {
      next[b].add_scaled(dt / 6.0, k1[b]);
      next[b].add_scaled(dt / 3.0, k2[b]);
      next[b].add_scaled(dt / 3.0, k3[b]);
      next[b].add_scaled(dt / 6.0, k4[b]);
    }
  }
  require_finite(next);
  return next;
}

}  // namespace photonfilter
