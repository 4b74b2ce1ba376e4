#pragma once

#include "photonfilter/operators.hpp"

namespace photonfilter {

enum class PulseShape {
  /// sqrt(gamma) exp(-gamma (t - t0) / 2) for t >= t0, zero before.
  decaying_exponential,
};

/// Temporal amplitude of a single-photon field, normalized to unit L2 norm.
class Wavepacket {
 public:
  /// Throws ConfigError unless gamma > 0 and both values are finite.
  Wavepacket(double gamma, double t0, PulseShape shape = PulseShape::decaying_exponential);

  double gamma() const noexcept { return gamma_; }
  double t0() const noexcept { return t0_; }
  PulseShape shape() const noexcept { return shape_; }

  /// Amplitude xi(t), in units of 1/sqrt(time). Zero strictly before t0.
  Complex xi(double t) const;

  /// Photon probability still in the source: integral of |xi|^2 over [t, inf).
  double tail_norm(double t) const;

  /// Coefficient of sigma_minus in the source model, xi(t)/sqrt(tail_norm(t)).
  /// Throws DepletedSourceError once the tail drops below 1e-12.
  Complex source_coupling(double t) const;

  static constexpr double kDepletedTail = 1e-12;

 private:
  double gamma_;
  double t0_;
  PulseShape shape_;
};

}  // namespace photonfilter
