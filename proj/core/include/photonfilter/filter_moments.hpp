#pragma once

// Closed-form moment hierarchy for the one-sided cavity (S = I,
// L = sqrt(kappa) a, H = delta a^dagger a) with the vacuum-start closure:
// every moment of aa, a^dag a^dag, na, a^dag n, a^dag n a, a^dag a^dag a and
// a^dag a a is identically zero, so only pi_ij(n), pi_ij(a), pi_ij(a^dag) and
// pi_ij(I) are carried. This is exact on the <= 1 excitation subspace and
// agrees with the generic filter at Fock dimension 2.

#include "photonfilter/filter_common.hpp"
#include "photonfilter/operators.hpp"

namespace photonfilter {

/// pi_ij of the four tracked operators for one member of the hierarchy.
struct Moments {
  Complex n;   // pi(a^dag a)
  Complex a;   // pi(a)
  Complex ad;  // pi(a^dag)
  Complex id;  // pi(I)

  Moments& operator+=(const Moments& o) {
    n += o.n, a += o.a, ad += o.ad, id += o.id;
    return *this;
  }
  Moments& operator*=(Complex s) {
    n *= s, a *= s, ad *= s, id *= s;
    return *this;
  }
  Moments& operator*=(double s) {
    n *= s, a *= s, ad *= s, id *= s;
    return *this;
  }
  friend Moments operator+(Moments l, const Moments& r) { return l += r; }
  friend Moments operator-(Moments l, const Moments& r) { return l += Moments{-r.n, -r.a, -r.ad, -r.id}; }
  friend Moments operator*(Complex s, Moments m) { return m *= s; }
  friend Moments operator*(double s, Moments m) { return m *= s; }
  friend bool operator==(const Moments&, const Moments&) = default;
};

struct MomentState {
  Moments s11, s10, s01, s00;

  Moments& operator[](Block b);
  const Moments& operator[](Block b) const;

  MomentState& operator+=(const MomentState& o) {
    s11 += o.s11, s10 += o.s10, s01 += o.s01, s00 += o.s00;
    return *this;
  }
  friend MomentState operator+(MomentState l, const MomentState& r) { return l += r; }
  friend MomentState operator*(Complex c, MomentState s) {
    s.s11 *= c, s.s10 *= c, s.s01 *= c, s.s00 *= c;
    return s;
  }
  friend MomentState operator*(double c, MomentState s) {
    s.s11 *= c, s.s10 *= c, s.s01 *= c, s.s00 *= c;
    return s;
  }
  friend bool operator==(const MomentState&, const MomentState&) = default;

  bool finite() const;
};

/// Cavity parameters for the moment filter.
struct CavityRates {
  double kappa;
  double delta;
};

/// Vacuum cavity: all moments zero except pi11(I) = pi00(I) = 1.
MomentState init_moments();

double moment_homodyne_gain(const MomentState& s, const CavityRates& c, Complex xi);
Complex raw_moment_homodyne_gain(const MomentState& s, const CavityRates& c, Complex xi);
double moment_count_intensity(const MomentState& s, const CavityRates& c, Complex xi);
Complex raw_moment_count_intensity(const MomentState& s, const CavityRates& c, Complex xi);

/// dt-coefficients shared by both detection schemes; zeroing the martingale
/// terms leaves exactly this linear system, i.e. the master equation.
MomentState moment_drift(const MomentState& s, const CavityRates& c, Complex xi);

MomentState moment_drift_step(const MomentState& s, const CavityRates& c, Complex xi, double dt);

struct MomentHomodyneStep {
  MomentState state;
  double dY;
};

MomentHomodyneStep homodyne_moment_step(const MomentState& s, const CavityRates& c, Complex xi,
                                        double dt, double dW);

MomentState moment_no_click_rate(const MomentState& s, const CavityRates& c, Complex xi);

/// Same contract as photocount_step of the generic filter.
MomentState photocount_moment_step(const MomentState& s, const CavityRates& c,
                                   const StepPulse& xi, double dt, bool jump);

}  // namespace photonfilter
