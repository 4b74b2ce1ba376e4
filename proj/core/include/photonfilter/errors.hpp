#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace photonfilter {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Fock truncation of zero levels was requested.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Operands of incompatible dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A ket used as a state does not have unit norm.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The single-photon source has (numerically) fully emitted its photon.
class DepletedSourceError : public Error {
 public:
  using Error::Error;
};

/// The homodyne gain picked up an imaginary part; the hierarchy has lost its
/// conjugation symmetry.
class NonRealInnovationError : public Error {
 public:
  using Error::Error;
};

/// A jump was requested while the counting intensity is zero.
class InvalidJumpError : public Error {
 public:
  using Error::Error;
};

/// Time grid or simulation parameters are inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The grid is too coarse to resolve the counting intensity (nu * dt > 0.1).
class GridTooCoarseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// An output file could not be written or parsed.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The filter produced NaN/inf or a strongly negative intensity. Carries the
/// simulation time and trajectory index once the driver knows them.
class DivergenceError : public Error {
 public:
  explicit DivergenceError(const std::string& what,
                           std::optional<double> time = std::nullopt,
                           std::optional<std::size_t> trajectory = std::nullopt);

  std::optional<double> time() const noexcept { return time_; }
  std::optional<std::size_t> trajectory() const noexcept { return trajectory_; }
  const std::string& reason() const noexcept { return reason_; }

  DivergenceError at_time(double t) const;
  DivergenceError in_trajectory(std::size_t index) const;

 private:
  std::string reason_;
  std::optional<double> time_;
  std::optional<std::size_t> trajectory_;
};

}  // namespace photonfilter
