#include "photonfilter_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "photonfilter/errors.hpp"
#include "photonfilter/invariants.hpp"
#include "photonfilter/master_ensemble.hpp"
#include "photonfilter/sde_engine.hpp"
#include "photonfilter/series_io.hpp"

namespace photonfilter::cli {

namespace {

struct Flags {
  SimConfig cfg;
  std::string engine = "moments";
  std::string detector = "homodyne";
  std::string out;
  std::string format = "csv";
  std::size_t workers = 0;
  bool ntraj_given = false;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void add_flags(CLI::App& sub, Flags& f) {
  sub.add_option("--kappa", f.cfg.kappa, "cavity decay rate");
  sub.add_option("--gamma", f.cfg.gamma, "wavepacket decay rate");
  sub.add_option("--delta", f.cfg.delta, "cavity detuning");
  sub.add_option("--t0", f.cfg.t0, "photon arrival time");
  sub.add_option("--tend", f.cfg.t_end, "end of the time grid");
  sub.add_option("--dt", f.cfg.dt, "time step");
  sub.add_option("--dim", f.cfg.fock_dim, "Fock truncation (generic engine)");
  sub.add_option("--ntraj", f.cfg.ntraj, "number of trajectories");
  sub.add_option("--seed", f.cfg.seed, "master seed");
  sub.add_option("--engine", f.engine, "moments|generic")
      ->check(CLI::IsMember({"moments", "generic"}));
  sub.add_option("--detector", f.detector, "homodyne|photocount")
      ->check(CLI::IsMember({"homodyne", "photocount"}));
  sub.add_option("--out", f.out, "output file (default: stdout)");
  sub.add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--workers", f.workers, "worker threads (default: all cores)");
}

// Where series and the summary line go.
class Sink {
 public:
  Sink(const Flags& f, std::ostream& out, std::ostream& err)
      : flags_(f), out_(out), err_(err) {}

  void emit(const SeriesTable& table) const {
    const SeriesMetadata meta{config_to_json(flags_.cfg), flags_.cfg.seed};
    const OutputFormat format = flags_.format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (!flags_.out.empty()) {
      write_series(flags_.out, table, format, &meta);
    } else if (format == OutputFormat::json) {
      write_json(out_, table, meta);
    } else {
      write_csv(out_, table, &meta);
    }
  }

  void summary(const std::string& line) const {
    (flags_.out.empty() ? err_ : out_) << line << '\n';
  }

 private:
  const Flags& flags_;
  std::ostream& out_;
  std::ostream& err_;
};

int run_me(const Flags& f, const Sink& sink) {
  const SeriesND me = integrate_master(f.cfg);
  SeriesTable table{{"t", "me_n", "analytic_n"}, {}};
  table.rows.reserve(me.times.size());
  double worst = 0.0;
  std::size_t peak = 0;
  for (std::size_t k = 0; k < me.times.size(); ++k) {
    const double exact = analytic_mean_photon(f.cfg, me.times[k]);
    worst = std::max(worst, std::abs(me.values[k] - exact));
    if (me.values[k] > me.values[peak]) peak = k;
    table.rows.push_back({me.times[k], me.values[k], exact});
  }
  sink.emit(table);
  sink.summary("me: peak <n> " + num(me.values[peak]) + " at t=" + num(me.times[peak]) +
               ", sup |me - analytic| " + num(worst) + " over " +
               std::to_string(me.times.size()) + " points");
  return kExitOk;
}

int run_trajectory(const Flags& f, const Sink& sink) {
  const Trajectory t = simulate_trajectory(f.cfg, f.cfg.detector, f.cfg.engine,
                                           trajectory_seed(f.cfg.seed, 0));
  SeriesTable table{{"t", "n_cond", "record", "rate", "norm", "vacuum_norm"}, {}};
  table.rows.reserve(t.times.size());
  for (std::size_t k = 0; k < t.times.size(); ++k)
    table.rows.push_back({t.times[k], t.n_cond[k], t.record[k], t.rate[k], t.norm[k],
                          t.vacuum_norm[k]});
  sink.emit(table);

  const auto peak = std::max_element(t.n_cond.begin(), t.n_cond.end()) - t.n_cond.begin();
  std::string line = "trajectory seed " + std::to_string(f.cfg.seed) + " (" +
                     std::string(to_string(f.cfg.detector)) + ", " +
                     std::string(to_string(f.cfg.engine)) + "): max n " +
                     num(t.n_cond[peak]) + " at t=" + num(t.times[peak]);
  if (f.cfg.detector == Detector::photocount) {
    line += ", clicks " + std::to_string(t.jumps.size());
    if (!t.jumps.empty()) line += " (first at t=" + num(t.jumps.front()) + ")";
  }
  sink.summary(line);
  return kExitOk;
}

int run_ensemble_command(const Flags& f, const Sink& sink) {
  EnsembleOptions options;
  options.workers = f.workers;
  const EnsembleStats stats =
      run_ensemble(f.cfg, f.cfg.detector, f.cfg.engine, f.cfg.ntraj, f.cfg.seed, options);
  const SeriesND me = integrate_master(f.cfg);

  SeriesTable table{{"t", "mean_n", "stderr_n", "me_n", "analytic_n"}, {}};
  table.rows.reserve(stats.times.size());
  std::size_t within = 0;
  for (std::size_t k = 0; k < stats.times.size(); ++k) {
    const double gap = std::abs(stats.mean[k] - me.values[k]);
    if (gap <= 4.0 * stats.std_error[k]) ++within;
    table.rows.push_back({stats.times[k], stats.mean[k], stats.std_error[k], me.values[k],
                          analytic_mean_photon(f.cfg, stats.times[k])});
  }
  sink.emit(table);
  const double fraction =
      static_cast<double>(within) / static_cast<double>(stats.times.size());
  sink.summary("ensemble M=" + std::to_string(stats.count) + " seed " +
               std::to_string(f.cfg.seed) + " (" + std::string(to_string(f.cfg.detector)) +
               ", " + std::string(to_string(f.cfg.engine)) + "): sup |mean - me| " +
               num(sup_deviation(stats.mean, me.values)) + ", within 4 stderr at " +
               num(100.0 * fraction) + "% of points");
  return kExitOk;
}

int run_verify(const Flags& f, std::ostream& out) {
  VerifyOptions options;
  options.seed = f.cfg.seed;
  options.workers = f.workers;
  if (f.ntraj_given) {
    options.trajectories = f.cfg.ntraj;
    options.count_trajectories = f.cfg.ntraj;
    options.equivalence_trajectories = f.cfg.ntraj;
  }
  const std::vector<CheckResult> results = run_invariant_suite(f.cfg, options);
  std::size_t passed = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "PASS  " : "FAIL  ") << r.name << ": " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  out << "verify: " << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size() ? kExitOk : kExitFailure;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-photon cavity filtering under homodyne and photon-counting detection",
               "photonfilter"};
  app.require_subcommand(1);
  Flags flags;

  CLI::App* me = app.add_subcommand("me", "master-equation photon number");
  CLI::App* trajectory = app.add_subcommand("trajectory", "one seeded filter trajectory");
  CLI::App* ensemble =
      app.add_subcommand("ensemble", "trajectory ensemble with mean, stderr and ME overlay");
  CLI::App* verify = app.add_subcommand("verify", "oracle-equivalence and invariant checks");
  for (CLI::App* sub : {me, trajectory, ensemble, verify}) add_flags(*sub, flags);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  flags.cfg.engine = *parse_engine(flags.engine);
  flags.cfg.detector = *parse_detector(flags.detector);
  for (CLI::App* sub : {me, trajectory, ensemble, verify})
    if (sub->parsed()) flags.ntraj_given = sub->count("--ntraj") > 0;

  try {
    flags.cfg.validate();
  } catch (const ConfigError& e) {
    err << "photonfilter: invalid configuration: " << e.what() << '\n';
    return kExitUsage;
  }

  const Sink sink(flags, out, err);
  try {
    if (me->parsed()) return run_me(flags, sink);
    if (trajectory->parsed()) return run_trajectory(flags, sink);
    if (ensemble->parsed()) return run_ensemble_command(flags, sink);
    return run_verify(flags, out);
  } catch (const GridTooCoarseError& e) {
    err << "photonfilter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "photonfilter: error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "photonfilter: unexpected error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace photonfilter::cli
