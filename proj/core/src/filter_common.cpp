#include "photonfilter/filter_common.hpp"

#include <cmath>
#include <string>

#include "photonfilter/errors.hpp"

namespace photonfilter {

double require_real(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
    throw DivergenceError(std::string(what) + " is not finite");
  if (std::abs(value.imag()) > kImagError)
    throw NonRealInnovationError(std::string(what) + " has imaginary part " +
                                 std::to_string(value.imag()));
  return value.real();
}

double clamp_intensity(Complex raw) {
  const double nu = require_real(raw, "counting intensity");
  if (nu < -kIntensityDivergence)
    throw DivergenceError("counting intensity " + std::to_string(nu) + " is negative");
  return nu < 0.0 ? 0.0 : nu;
}

}  // namespace photonfilter
