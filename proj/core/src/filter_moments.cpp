#include "photonfilter/filter_moments.hpp"

#include <cmath>

#include "photonfilter/errors.hpp"

namespace photonfilter {

namespace {

bool finite(const Moments& m) {
  for (Complex z : {m.n, m.a, m.ad, m.id})
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

void require_finite(const MomentState& s) {
  if (!s.finite()) throw DivergenceError("moment filter state is not finite");
}

// pi(X L + L^dag X) for X = n, a, a^dag, I under the closure.
Moments measurement_terms(const Moments& m, double root_kappa) {
  return {0.0, root_kappa * m.n, root_kappa * m.n, root_kappa * (m.a + m.ad)};
}

// Numerators of the nu^-1-weighted jump map, per block.
MomentState jump_numerators(const MomentState& s, const CavityRates& c, Complex xi) {
  const double rk = std::sqrt(c.kappa);
  const Complex xi_c = std::conj(xi);
  const double xi2 = std::norm(xi);
  MomentState j{};
  j.s11 = {xi2 * s.s00.n, xi * rk * s.s10.n + xi2 * s.s00.a, xi_c * rk * s.s01.n + xi2 * s.s00.ad,
           c.kappa * s.s11.n + xi_c * rk * s.s01.a + xi * rk * s.s10.ad + xi2 * s.s00.id};
  j.s10 = {0.0, 0.0, xi_c * rk * s.s00.n, c.kappa * s.s10.n + xi_c * rk * s.s00.a};
  j.s01 = {0.0, xi * rk * s.s00.n, 0.0, c.kappa * s.s01.n + xi * rk * s.s00.ad};
  j.s00 = {0.0, 0.0, 0.0, c.kappa * s.s00.n};
  return j;
}

}  // namespace

Moments& MomentState::operator[](Block b) {
  switch (b) {
    case Block::b11: return s11;
    case Block::b10: return s10;
    case Block::b01: return s01;
    case Block::b00: break;
  }
  return s00;
}

const Moments& MomentState::operator[](Block b) const {
  return const_cast<MomentState&>(*this)[b];
}

bool MomentState::finite() const {
  return photonfilter::finite(s11) && photonfilter::finite(s10) && photonfilter::finite(s01) &&
         photonfilter::finite(s00);
}

MomentState init_moments() {
  MomentState s{};
  s.s11.id = 1.0;
  s.s00.id = 1.0;
  return s;
}

Complex raw_moment_homodyne_gain(const MomentState& s, const CavityRates& c, Complex xi) {
  return std::sqrt(c.kappa) * (s.s11.a + s.s11.ad) + s.s10.id * std::conj(xi) + s.s01.id * xi;
}

double moment_homodyne_gain(const MomentState& s, const CavityRates& c, Complex xi) {
  return require_real(raw_moment_homodyne_gain(s, c, xi), "homodyne gain");
}

Complex raw_moment_count_intensity(const MomentState& s, const CavityRates& c, Complex xi) {
  const double rk = std::sqrt(c.kappa);
  return c.kappa * s.s11.n + rk * s.s01.a * std::conj(xi) + rk * s.s10.ad * xi +
         s.s00.id * std::norm(xi);
}

double moment_count_intensity(const MomentState& s, const CavityRates& c, Complex xi) {
  return clamp_intensity(raw_moment_count_intensity(s, c, xi));
}

MomentState moment_drift(const MomentState& s, const CavityRates& c, Complex xi) {
  const double rk = std::sqrt(c.kappa);
  const Complex xi_c = std::conj(xi);
  // pi(a) rotates with -(i delta + kappa/2), pi(a^dag) with its conjugate.
  const Complex field_rate{0.5 * c.kappa, c.delta};
  const Complex conj_rate = std::conj(field_rate);

  MomentState a{};
  a.s11 = {-c.kappa * s.s11.n - rk * s.s01.a * xi_c - rk * s.s10.ad * xi,
           -field_rate * s.s11.a - rk * s.s10.id * xi,
           -conj_rate * s.s11.ad - rk * s.s01.id * xi_c,
           0.0};
  a.s10 = {-c.kappa * s.s10.n - rk * s.s00.a * xi_c,
           -field_rate * s.s10.a,
           -conj_rate * s.s10.ad - rk * s.s00.id * xi_c,
           0.0};
  a.s01 = {-c.kappa * s.s01.n - rk * s.s00.ad * xi,
           -field_rate * s.s01.a - rk * s.s00.id * xi,
           -conj_rate * s.s01.ad,
           0.0};
  a.s00 = {-c.kappa * s.s00.n, -field_rate * s.s00.a, -conj_rate * s.s00.ad, 0.0};
  return a;
}

MomentState moment_drift_step(const MomentState& s, const CavityRates& c, Complex xi, double dt) {
  MomentState next = s + dt * moment_drift(s, c, xi);
  require_finite(next);
  return next;
}

MomentHomodyneStep homodyne_moment_step(const MomentState& s, const CavityRates& c, Complex xi,
                                        double dt, double dW) {
  const double rk = std::sqrt(c.kappa);
  const double gain = moment_homodyne_gain(s, c, xi);
  const Complex xi_c = std::conj(xi);

  MomentState d{};
  d.s11 = measurement_terms(s.s11, rk) + xi_c * s.s01 + xi * s.s10 - gain * s.s11;
  d.s10 = measurement_terms(s.s10, rk) + xi_c * s.s00 - gain * s.s10;
  d.s01 = measurement_terms(s.s01, rk) + xi * s.s00 - gain * s.s01;
  d.s00 = measurement_terms(s.s00, rk) - gain * s.s00;

  MomentHomodyneStep out{s + dt * moment_drift(s, c, xi) + dW * d, gain * dt + dW};
  require_finite(out.state);
  return out;
}

MomentState moment_no_click_rate(const MomentState& s, const CavityRates& c, Complex xi) {
  MomentState rate = moment_drift(s, c, xi);
  const double nu = moment_count_intensity(s, c, xi);
  if (nu >= kIntensityFloor) {
    // B nu = J - nu pi
    rate += -1.0 * jump_numerators(s, c, xi);
    rate += nu * s;
  }
  return rate;
}

MomentState photocount_moment_step(const MomentState& s, const CavityRates& c,
                                   const StepPulse& xi, double dt, bool jump) {
  const double nu = moment_count_intensity(s, c, xi.start);
  if (jump && nu < kIntensityFloor)
    throw InvalidJumpError("photon count with vanishing intensity");

  MomentState next{};
  if (jump) {
    next = (1.0 / nu) * jump_numerators(s, c, xi.start);
  } else {
    const MomentState k1 = moment_no_click_rate(s, c, xi.start);
    const MomentState k2 = moment_no_click_rate(s + (0.5 * dt) * k1, c, xi.mid);
    const MomentState k3 = moment_no_click_rate(s + (0.5 * dt) * k2, c, xi.mid);
    const MomentState k4 = moment_no_click_rate(s + dt * k3, c, xi.end);
    next = s + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  require_finite(next);
  return next;
}

}  // namespace photonfilter
