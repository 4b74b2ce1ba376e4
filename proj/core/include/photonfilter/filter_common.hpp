#pragma once

#include "photonfilter/operators.hpp"

namespace photonfilter {

/// The four members of the single-photon filter hierarchy. `b11` is the
/// conditional expectation proper; `b00` alone would be the vacuum filter.
enum class Block { b11, b10, b01, b00 };

/// Intensity below which a jump is impossible and the nu-weighted reset is not
/// evaluated.
inline constexpr double kIntensityFloor = 1e-10;
/// Counting intensity below -kIntensityDivergence means the filter diverged.
inline constexpr double kIntensityDivergence = 1e-6;
/// Imaginary residue of the homodyne gain / counting intensity that is
/// silently dropped, and the level at which it becomes an error.
inline constexpr double kImagTruncate = 1e-9;
inline constexpr double kImagError = 1e-6;

/// Pulse amplitude at the start, midpoint and end of one time step. The
/// between-click evolution of the counting filter is integrated with all
/// three; everything else reads `start`.
struct StepPulse {
  Complex start;
  Complex mid;
  Complex end;

  static StepPulse constant(Complex xi) { return {xi, xi, xi}; }
};

/// Real part of a gain that must be real, or NonRealInnovationError.
double require_real(Complex value, const char* what);

/// Clamped counting intensity: [-kIntensityDivergence, 0) -> 0, below that
/// DivergenceError.
double clamp_intensity(Complex raw);

}  // namespace photonfilter
