#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace photonfilter {

enum class Detector { homodyne, photocount };
enum class Engine { moments, generic };

std::string_view to_string(Detector d);
std::string_view to_string(Engine e);
std::optional<Detector> parse_detector(std::string_view text);
std::optional<Engine> parse_engine(std::string_view text);

/// Parameters of one experiment. Defaults reproduce the published run
/// (kappa = 0.1, t0 = 3, delta = 0); gamma, dt and the horizon are choices.
struct SimConfig {
  double kappa = 0.1;
  double gamma = 0.1;
  double delta = 0.0;
  double t0 = 3.0;
  double t_start = 0.0;
  double t_end = 103.0;
  double dt = 1e-3;
  std::size_t fock_dim = 2;
  std::size_t ntraj = 100;
  std::uint64_t seed = 1;
  Engine engine = Engine::moments;
  Detector detector = Detector::homodyne;

  /// Throws ConfigError unless kappa, gamma > 0, t_end > t0, t_end > t_start,
  /// fock_dim >= 2, ntraj >= 1 and 0 < dt < 1 / (10 max(kappa, gamma)).
  void validate() const;
};

}  // namespace photonfilter
