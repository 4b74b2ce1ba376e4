#include "photonfilter/wavepacket.hpp"

#include <cmath>

#include "photonfilter/errors.hpp"

namespace photonfilter {

Wavepacket::Wavepacket(double gamma, double t0, PulseShape shape)
    : gamma_(gamma), t0_(t0), shape_(shape) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ConfigError("wavepacket gamma must be > 0");
  if (!std::isfinite(t0)) throw ConfigError("wavepacket onset must be finite");
}

Complex Wavepacket::xi(double t) const {
  if (t < t0_) return {};
  return std::sqrt(gamma_) * std::exp(-0.5 * gamma_ * (t - t0_));
}

double Wavepacket::tail_norm(double t) const {
  if (t <= t0_) return 1.0;
  return std::exp(-gamma_ * (t - t0_));
}

Complex Wavepacket::source_coupling(double t) const {
  const double tail = tail_norm(t);
  if (tail < kDepletedTail) throw DepletedSourceError("single-photon source is depleted");
  return xi(t) / std::sqrt(tail);
}

}  // namespace photonfilter
