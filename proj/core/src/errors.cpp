#include "photonfilter/errors.hpp"

#include <sstream>

namespace photonfilter {

namespace {

std::string describe(const std::string& reason, std::optional<double> time,
                     std::optional<std::size_t> trajectory) {
  std::ostringstream os;
  os << reason;
  if (time) os << " at t=" << *time;
  if (trajectory) os << " in trajectory " << *trajectory;
  return os.str();
}

}  // namespace

DivergenceError::DivergenceError(const std::string& what, std::optional<double> time,
                                 std::optional<std::size_t> trajectory)
    : Error(describe(what, time, trajectory)),
      reason_(what),
      time_(time),
      trajectory_(trajectory) {}

DivergenceError DivergenceError::at_time(double t) const {
  return DivergenceError(reason_, t, trajectory_);
}

DivergenceError DivergenceError::in_trajectory(std::size_t index) const {
  return DivergenceError(reason_, time_, index);
}

}  // namespace photonfilter
