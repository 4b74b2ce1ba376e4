#include "photonfilter/config.hpp"

#include <algorithm>
#include <cmath>

#include "photonfilter/errors.hpp"

namespace photonfilter {

std::string_view to_string(Detector d) {
  return d == Detector::homodyne ? "homodyne" : "photocount";
}

std::string_view to_string(Engine e) { return e == Engine::moments ? "moments" : "generic"; }

std::optional<Detector> parse_detector(std::string_view text) {
  if (text == "homodyne") return Detector::homodyne;
  if (text == "photocount") return Detector::photocount;
  return std::nullopt;
}

std::optional<Engine> parse_engine(std::string_view text) {
  if (text == "moments") return Engine::moments;
  if (text == "generic") return Engine::generic;
  return std::nullopt;
}

void SimConfig::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(kappa) || !finite(gamma) || !finite(delta) || !finite(t0) || !finite(t_start) ||
      !finite(t_end) || !finite(dt))
    throw ConfigError("configuration values must be finite");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be > 0");
  if (!(gamma > 0.0)) throw ConfigError("gamma must be > 0");
  if (!(t_end > t0)) throw ConfigError("t_end must exceed the photon onset t0");
  if (!(t_end > t_start)) throw ConfigError("t_end must exceed t_start");
  if (fock_dim < 2) throw ConfigError("Fock truncation must keep at least two levels");
  if (ntraj < 1) throw ConfigError("need at least one trajectory");
  if (!(dt > 0.0)) throw ConfigError("dt must be > 0");
  if (!(dt < 1.0 / (10.0 * std::max(kappa, gamma))))
    throw ConfigError("dt must be below 1/(10 max(kappa, gamma))");
}

}  // namespace photonfilter
