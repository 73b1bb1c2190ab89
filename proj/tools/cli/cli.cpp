#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "json_io.hpp"
#include "qcorr/errors.hpp"

namespace qcorr::cli {

namespace {

using io::json;

struct Report {
  std::string text;
  bool converged = true;
};

std::string_view command_name(Command c) {
  switch (c) {
    case Command::Classify:
      return "classify";
    case Command::Discord:
      return "discord";
    case Command::Deficit:
      return "deficit";
    case Command::Witness:
      return "witness";
    case Command::Evolve:
      return "evolve";
    case Command::Msf:
      return "msf";
    case Command::DemoQutrit:
      return "demo-qutrit";
    case Command::DemoAd:
      return "demo-ad";
    case Command::Verify:
      return "verify";
  }
  return "unknown";
}

const std::string& require_path(const std::optional<std::string>& path, const char* flag, Command c) {
  if (!path) {
    throw ValidationError(std::string(command_name(c)) + " requires " + flag);
  }
  return *path;
}

OptimizationSettings settings_for(const RunConfig& c) {
  OptimizationSettings s;
  s.grid_points_per_angle = c.grid;
  return s;
}

KrausChannel load_channel(const RunConfig& c) {
  const auto& path = require_path(c.channel_path, "--channel", c.command);
  return io::parse_channel(io::read_json_file(path), path);
}

DensityMatrix load_state(const RunConfig& c) {
  const auto& path = require_path(c.state_path, "--state", c.command);
  return io::parse_state(io::read_json_file(path), path);
}

std::size_t square_side(std::size_t n) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n) throw DimensionError("cannot infer dims for a state of dimension " + std::to_string(n) + "; pass --dims");
  return d;
}

BipartiteDims dims_for(const RunConfig& c, const DensityMatrix& rho) {
  if (c.dims) {
    const BipartiteDims dims{(*c.dims)[0], (*c.dims)[1]};
    if (dims.a == 0 || dims.b == 0 || dims.total() != rho.dim()) {
      throw DimensionError("--dims " + std::to_string(dims.a) + " " + std::to_string(dims.b) +
                           " does not match state dimension " + std::to_string(rho.dim()));
    }
    return dims;
  }
  const std::size_t d = square_side(rho.dim());
  return {d, d};
}

json with_command(json body, Command c) {
  body["command"] = std::string(command_name(c));
  return body;
}

Report finish(json body, const RunConfig& c, bool converged) {
  return {io::dump_canonical(with_command(std::move(body), c.command)), converged};
}

Report run_classify(const RunConfig& c) {
  const auto report = classify_qubit_channel(load_channel(c), c.tol, settings_for(c));
  return finish(io::to_json(report), c, !report.witness || report.witness->converged);
}

Report run_measure(const RunConfig& c) {
  const DensityMatrix rho = load_state(c);
  const BipartiteDims dims = dims_for(c, rho);
  const auto result = c.command == Command::Discord ? quantum_discord(rho, dims, settings_for(c))
                                                    : one_way_deficit(rho, dims, settings_for(c));
  json body = io::to_json(result);
  body["measure"] = c.command == Command::Discord ? "discord" : "deficit";
  body["dims"] = {dims.a, dims.b};
  return finish(std::move(body), c, result.converged);
}

Report run_witness(const RunConfig& c) {
  const KrausChannel channel = load_channel(c);
  try {
    const auto w = find_witness(channel, settings_for(c));
    json body = io::to_json(w);
    body["found"] = true;
    return finish(std::move(body), c, w.converged);
  } catch (const WitnessNotFound& e) {
    return finish({{"found", false}, {"reason", e.what()}}, c, true);
  }
}

std::vector<double> expand_times(const TimeGrid& g) {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(g.steps));
  for (int i = 0; i < g.steps; ++i) {
    times.push_back(g.steps == 1 ? g.start : g.start + (g.stop - g.start) * i / (g.steps - 1));
  }
  return times;
}

Report run_evolve(const RunConfig& c) {
  const auto& gamma_path = require_path(c.gamma_path, "--gamma", c.command);
  const ComplexMatrix gamma = io::parse_square_matrix_document(io::read_json_file(gamma_path), gamma_path);
  ComplexMatrix hamiltonian(2, 2);
  if (c.hamiltonian_path) {
    hamiltonian = io::parse_square_matrix_document(io::read_json_file(*c.hamiltonian_path), *c.hamiltonian_path);
  }
  const LindbladGenerator generator(hamiltonian, gamma, !c.no_psd_check);
  const std::vector<double> times = expand_times(c.times.value_or(TimeGrid{0.0, 10.0, 11}));

  std::vector<TrajectoryPoint> trajectory;
  if (c.state_path) {
    const DensityMatrix rho = load_state(c);
    const BipartiteDims dims = c.dims ? dims_for(c, rho) : BipartiteDims{rho.dim() / 2, 2};
    if (dims.b != 2 || dims.total() != rho.dim()) throw DimensionError("evolve: subsystem B must be a qubit");
    trajectory = discord_trajectory(generator, rho, dims.a, times, settings_for(c));
  } else {
    trajectory = discord_trajectory(generator, plus_minus_ensemble(), times, settings_for(c));
  }
  bool converged = true;
  for (const auto& p : trajectory) converged = converged && p.converged;
  if (c.format.value_or(Format::Csv) == Format::Csv) return {io::trajectory_csv(trajectory), converged};
  return finish(io::to_json(std::span<const TrajectoryPoint>(trajectory)), c, converged);
}

Report run_msf(const RunConfig& c) {
  const DensityMatrix rho = load_state(c);
  const std::size_t d = square_side(rho.dim());
  if (c.dims && ((*c.dims)[0] != d || (*c.dims)[1] != d)) throw DimensionError("msf: state must be d x d");
  const auto settings = settings_for(c);
  const auto msf = max_singlet_fraction(rho, d, settings);
  json body = io::to_json(msf);
  bool converged = msf.converged;
  if (c.channel_path) {
    const auto comparison = msf_after_channel(rho, load_channel(c), d, settings);
    body["channel"] = io::to_json(comparison);
    body["channel"]["fidelityBefore"] = teleportation_fidelity(comparison.before, d);
    body["channel"]["fidelityAfter"] = teleportation_fidelity(comparison.after, d);
    converged = converged && comparison.converged;
  }
  return finish(std::move(body), c, converged);
}

Report run_demo_qutrit(const RunConfig& c) {
  const auto report = qutrit_counterexample(c.e0, c.e1, settings_for(c));
  return finish(io::to_json(report), c, report.deficit.converged && report.discord.converged);
}

Report run_demo_ad(const RunConfig& c) {
  const auto demo = amplitude_damping_demo(c.p, settings_for(c), c.tol);
  const bool witness_ok = !demo.classification.witness || demo.classification.witness->converged;
  return finish(io::to_json(demo), c, demo.deficit.converged && demo.discord.converged && witness_ok);
}

Report run_verify(const RunConfig& c) {
  const auto report = verify_theorem1(load_channel(c), c.states, c.seed, settings_for(c), c.tol);
  json body = io::to_json(report);
  body["seed"] = c.seed;
  return finish(std::move(body), c, report.converged);
}

Report dispatch(const RunConfig& c) {
  switch (c.command) {
    case Command::Classify:
      return run_classify(c);
    case Command::Discord:
    case Command::Deficit:
      return run_measure(c);
    case Command::Witness:
      return run_witness(c);
    case Command::Evolve:
      return run_evolve(c);
    case Command::Msf:
      return run_msf(c);
    case Command::DemoQutrit:
      return run_demo_qutrit(c);
    case Command::DemoAd:
      return run_demo_ad(c);
    case Command::Verify:
      return run_verify(c);
  }
  throw ValidationError("unknown command");
}

void validate(const RunConfig& c) {
  if (!(c.tol > 0.0)) throw ValidationError("--tol must be positive");
  if (c.grid && *c.grid < 4) throw ValidationError("--grid must be at least 4");
  if (c.dims && c.dims->size() != 2) throw ValidationError("--dims takes exactly two values");
  if (c.times && c.times->steps < 1) throw ValidationError("--times needs at least one step");
  if (c.format == Format::Csv && c.command != Command::Evolve) {
    throw ValidationError("--format csv is only available for evolve trajectories");
  }
}

}  // namespace

TimeGrid parse_time_grid(const std::string& text) {
  std::stringstream ss(text);
  std::string a, b, n;
  if (!std::getline(ss, a, ':') || !std::getline(ss, b, ':') || !std::getline(ss, n) || a.empty() || b.empty() ||
      n.empty()) {
    throw std::invalid_argument("--times expects t0:t1:steps, got \"" + text + "\"");
  }
  std::size_t used = 0;
  TimeGrid g;
  try {
    g.start = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.stop = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    g.steps = std::stoi(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
  } catch (const std::exception&) {
    throw std::invalid_argument("--times expects t0:t1:steps, got \"" + text + "\"");
  }
  if (g.steps < 1 || g.start < 0.0 || g.stop < g.start) {
    throw std::invalid_argument("--times needs 0 <= t0 <= t1 and steps >= 1");
  }
  return g;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Report report;
  try {
    validate(config);
    report = dispatch(config);
  } catch (const io::SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const std::invalid_argument& e) {
    // DimensionError and ValidationError derive from invalid_argument.
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }

  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << *config.output << "\n";
      return kValidationFailure;
    }
    file << report.text;
  } else {
    out << report.text;
  }
  if (!report.converged) {
    err << "warning: optimizer did not converge (best restarts disagree)\n";
    return kNotConverged;
  }
  return kSuccess;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qcorr: can a local channel create quantum correlation from classical states?"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format;
  std::string times;
  std::vector<std::size_t> dims;
  std::optional<int> grid;

  app.add_option("--channel", config.channel_path, "Kraus channel JSON {\"dim\", \"kraus\"}");
  app.add_option("--state", config.state_path, "density matrix JSON {\"dim\", \"mat\"}");
  app.add_option("--dims", dims, "subsystem dimensions dA dB")->expected(2);
  app.add_option("--tol", config.tol, "classification tolerance")->capture_default_str();
  app.add_option("--seed", config.seed, "random seed")->capture_default_str();
  app.add_option("--grid", grid, "grid points per basis angle (>= 4)");
  app.add_option("--out", config.output, "output path (default stdout)");
  app.add_option("--format", format, "json | csv (csv: evolve only)")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--times", times, "evolve time grid t0:t1:steps");
  app.add_option("--gamma", config.gamma_path, "4x4 Lindblad coefficient matrix JSON");
  app.add_option("--hamiltonian", config.hamiltonian_path, "2x2 Hamiltonian JSON");
  app.add_flag("--no-psd-check", config.no_psd_check, "allow a non-PSD dissipative block");
  app.add_option("--e0", config.e0, "demo-qutrit weight of the identity Kraus operator");
  app.add_option("--e1", config.e1, "demo-qutrit weight of the mixing unitary");
  app.add_option("--p", config.p, "demo-ad damping probability");
  app.add_option("--states", config.states, "verify: number of sampled half-classical states")->capture_default_str();

  struct Entry {
    const char* name;
    Command command;
    const char* help;
  };
  const Entry commands[] = {
      {"classify", Command::Classify, "classify a qubit channel and search for a witness"},
      {"discord", Command::Discord, "quantum discord of a bipartite state"},
      {"deficit", Command::Deficit, "one-way deficit of a bipartite state"},
      {"witness", Command::Witness, "half-classical state whose image carries discord"},
      {"evolve", Command::Evolve, "discord trajectory under a Lindblad generator"},
      {"msf", Command::Msf, "maximal singlet fraction, optionally after a channel"},
      {"demo-qutrit", Command::DemoQutrit, "mixing qutrit channel that creates deficit"},
      {"demo-ad", Command::DemoAd, "amplitude damping on the |+-> ensemble"},
      {"verify", Command::Verify, "sample half-classical states and check the criterion"},
  };
  for (const auto& entry : commands) {
    const Command cmd = entry.command;
    app.add_subcommand(entry.name, entry.help)->callback([&config, cmd] { config.command = cmd; });
  }

  try {
    app.parse(argc, argv);
    if (!dims.empty()) config.dims = dims;
    config.grid = grid;
    if (!format.empty()) config.format = format == "csv" ? Format::Csv : Format::Json;
    if (!times.empty()) config.times = parse_time_grid(times);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kValidationFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationFailure;
  }
  return run(config, out, err);
}

}  // namespace qcorr::cli
