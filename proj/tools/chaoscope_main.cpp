// chaoscope: Lyapunov exponents and bifurcation diagrams for discrete-time
// maps, as CSV. Exit codes: 0 success, 2 invalid configuration, 3 runtime
// divergence (partial output is kept where possible).

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chaoscope/bifurcation.hpp"
#include "chaoscope/csv.hpp"
#include "chaoscope/lyapunov1d.hpp"
#include "chaoscope/maps.hpp"
#include "chaoscope/spectrum.hpp"

namespace {

using namespace chaoscope;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitDivergence = 3;

struct RunConfig {
  std::string map_name = "logistic";
  std::vector<std::string> param_args;  // raw k=v entries, config then CLI
  std::string x0_arg;                   // "v" or "v,v"; empty -> 0.1 per axis
  std::string method;                   // per-command default when empty
  std::size_t steps = 0;                // 0 -> per-command default
  double epsilon = kDefaultEpsilon;
  std::size_t burn_in = 0;
  double r_min = 0.0;
  double r_max = 4.0;
  double r_step = 0.001;
  std::size_t transient = 100;
  std::size_t samples = 100;
  std::size_t tau = 50;
  std::size_t renorms = 0;  // 0 -> steps / tau
  std::string jacobian_mode = "corrected";
  int threads = 1;
  std::uint64_t seed = 1;
  std::string out;  // empty -> "<command>.csv"
  std::string config_path;
};

// ---------------------------------------------------------------------------
// config file support: plain key=value lines, '#' comments; command-line
// flags always win over file values
// ---------------------------------------------------------------------------

struct OptionBinding {
  std::string key;
  std::function<void(const std::string&)> apply;
};

using BindingTable = std::map<CLI::App*, std::vector<OptionBinding>>;

template <typename T>
void parse_into(const std::string& text, T& target) {
  std::istringstream in(text);
  in >> target;
  if (in.fail() || !in.eof())
    throw std::invalid_argument("bad config value \"" + text + "\"");
}

template <>
void parse_into(const std::string& text, std::string& target) {
  target = text;
}

template <typename T>
CLI::Option* bind_option(CLI::App* sub, BindingTable& table,
                         const std::string& flag, T& target,
                         const std::string& desc) {
  CLI::Option* opt = sub->add_option(flag, target, desc);
  const std::string key = flag.substr(2);
  table[sub].push_back(
      {key, [&target](const std::string& v) { parse_into(v, target); }});
  return opt;
}

std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::pair<std::string, std::string>> entries;
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected key=value");
    entries.emplace_back(trim(stripped.substr(0, eq)),
                         trim(stripped.substr(eq + 1)));
  }
  return entries;
}

void apply_config_file(CLI::App* sub, const BindingTable& table,
                       RunConfig& cfg) {
  if (cfg.config_path.empty()) return;
  const auto entries = read_config_file(cfg.config_path);
  const auto& bindings = table.at(sub);
  std::vector<std::string> config_params;
  for (const auto& [key, value] : entries) {
    if (key == "param") {
      config_params.push_back(value);
      continue;
    }
    const OptionBinding* binding = nullptr;
    for (const auto& b : bindings)
      if (b.key == key) binding = &b;
    if (!binding)
      throw std::invalid_argument("config key \"" + key +
                                  "\" is not an option of this command");
    CLI::Option* opt = sub->get_option_no_throw("--" + key);
    if (opt && opt->count() > 0) continue;  // command line wins
    binding->apply(value);
  }
  // config params first so explicit --param entries override per key
  config_params.insert(config_params.end(), cfg.param_args.begin(),
                       cfg.param_args.end());
  cfg.param_args = std::move(config_params);
}

// ---------------------------------------------------------------------------
// argument interpretation
// ---------------------------------------------------------------------------

ParameterMap parse_params(const std::vector<std::string>& args) {
  ParameterMap params;
  for (const auto& arg : args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--param expects NAME=VALUE, got \"" + arg +
                                  "\"");
    const std::string name = arg.substr(0, eq);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(arg.substr(eq + 1), &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric value in --param " + arg);
    }
    if (used != arg.size() - eq - 1)
      throw std::invalid_argument("bad numeric value in --param " + arg);
    params[name] = value;  // later entries override earlier ones
  }
  return params;
}

StateVector parse_x0(const std::string& arg, int dimension) {
  if (arg.empty()) {
    StateVector x = StateVector::zeros(dimension);
    for (int i = 0; i < dimension; ++i) x[i] = 0.1;
    return x;
  }
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = arg.find(',', start);
    const std::string piece =
        comma == std::string::npos ? arg.substr(start) : arg.substr(start, comma - start);
    try {
      std::size_t used = 0;
      values.push_back(std::stod(piece, &used));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad --x0 component \"" + piece + "\"");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(values.size()) != dimension)
    throw std::invalid_argument("--x0 has " + std::to_string(values.size()) +
                                " components, map needs " +
                                std::to_string(dimension));
  StateVector x = StateVector::zeros(dimension);
  for (int i = 0; i < dimension; ++i) x[i] = values[i];
  return x;
}

JacobianMode parse_jacobian_mode(const std::string& text) {
  if (text == "corrected") return JacobianMode::corrected;
  if (text == "paper-compat" || text == "paper_compat")
    return JacobianMode::paper_compat;
  throw std::invalid_argument(
      "--jacobian-mode must be corrected or paper-compat");
}

const MapDefinition& resolve_map(const RunConfig& cfg) {
  const MapDefinition* map = find_map(cfg.map_name);
  if (!map) {
    std::string names;
    for (const auto& n : builtin_map_names()) names += " " + n;
    throw std::invalid_argument("unknown map \"" + cfg.map_name +
                                "\"; built-ins:" + names);
  }
  return *map;
}

BoundParameters bind_and_warn(const MapDefinition& map, const RunConfig& cfg) {
  BoundParameters bound = bind_parameters(map, parse_params(cfg.param_args));
  for (const auto& w : bound.warnings) std::cerr << "warning: " << w << "\n";
  return bound;
}

std::string output_path(const RunConfig& cfg, const std::string& command) {
  return cfg.out.empty() ? command + ".csv" : cfg.out;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_orbit(const RunConfig& cfg) {
  const MapDefinition& map = resolve_map(cfg);
  const BoundParameters params = bind_and_warn(map, cfg);
  const StateVector x0 = parse_x0(cfg.x0_arg, map.dimension());
  const std::size_t steps = cfg.steps == 0 ? 10000 : cfg.steps;

  CsvWriter csv(output_path(cfg, "orbit"));
  std::vector<std::string> header = {"step", "x"};
  if (map.dimension() >= 2) header.push_back("y");
  if (map.dimension() >= 3) header.push_back("z");
  csv.header(header);

  StateVector x = x0;
  for (std::size_t k = 1; k <= steps; ++k) {
    x = map.apply(x, params.span());
    std::vector<std::string> cells = {std::to_string(k)};
    for (int i = 0; i < map.dimension(); ++i)
      cells.push_back(CsvWriter::cell(x[i]));
    csv.row(cells);
    if (state_escaped(x)) {
      csv.flush();
      std::cerr << "orbit diverged at step " << k
                << "; partial output retained\n";
      return kExitDivergence;
    }
  }
  return kExitOk;
}

EstimatorMethod parse_scalar_method(const std::string& text) {
  if (text == "derivative" || text == "derivative-sum")
    return EstimatorMethod::derivative_sum;
  if (text == "finite-diff" || text == "finite-difference")
    return EstimatorMethod::finite_difference;
  throw std::invalid_argument(
      "--method must be derivative or finite-diff for 1-D exponents");
}

int cmd_lyap1d(const RunConfig& cfg) {
  const MapDefinition& map = resolve_map(cfg);
  const BoundParameters params = bind_and_warn(map, cfg);
  const StateVector x0 = parse_x0(cfg.x0_arg, map.dimension());
  const std::size_t n = cfg.steps == 0 ? 10000 : cfg.steps;
  const EstimatorMethod method =
      parse_scalar_method(cfg.method.empty() ? "finite-diff" : cfg.method);

  const LyapunovEstimate est =
      method == EstimatorMethod::derivative_sum
          ? lyapunov_derivative_sum(map, params.span(), x0[0], n, cfg.burn_in)
          : lyapunov_finite_difference(map, params.span(), x0[0], n,
                                       cfg.epsilon, cfg.burn_in);

  CsvWriter csv(output_path(cfg, "lyap1d"));
  csv.header({"lambda", "method", "steps", "epsilon", "burn_in", "floor_hits"});
  csv.row({CsvWriter::cell(est.value), std::string(to_string(est.method)),
           CsvWriter::cell(est.steps), CsvWriter::cell(est.epsilon),
           CsvWriter::cell(est.burn_in), CsvWriter::cell(est.floor_hits)});

  std::cout << "lyapunov_exponent," << format_fixed(est.value, 6) << "\n";
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const MapDefinition& map = resolve_map(cfg);
  const BoundParameters defaults = bind_and_warn(map, cfg);
  (void)defaults;  // sweep overrides the single parameter per grid point
  const StateVector x0 = parse_x0(cfg.x0_arg, map.dimension());

  SweepPointConfig point;
  point.method =
      parse_scalar_method(cfg.method.empty() ? "finite-diff" : cfg.method);
  point.n = cfg.steps == 0 ? 10000 : cfg.steps;
  point.epsilon = cfg.epsilon;
  point.burn_in = cfg.burn_in;
  point.x0 = x0[0];

  const auto records = lyapunov_sweep(map, cfg.r_min, cfg.r_max, cfg.r_step,
                                      point, cfg.threads);

  CsvWriter csv(output_path(cfg, "sweep"));
  csv.header({"r", "lyapunov", "floor_hits", "diverged"});
  std::size_t diverged = 0;
  for (const auto& rec : records) {
    diverged += rec.estimate.diverged ? 1 : 0;
    csv.row({CsvWriter::cell(rec.parameter_value),
             CsvWriter::cell(rec.estimate.value),
             CsvWriter::cell(rec.estimate.floor_hits),
             rec.estimate.diverged ? "1" : "0"});
  }
  if (diverged > 0)
    std::cerr << diverged << " of " << records.size()
              << " grid points diverged\n";
  if (diverged == records.size()) return kExitDivergence;
  return kExitOk;
}

int cmd_bifurcate(const RunConfig& cfg) {
  const MapDefinition& map = resolve_map(cfg);
  const BoundParameters defaults = bind_and_warn(map, cfg);
  (void)defaults;
  const StateVector x0 = parse_x0(cfg.x0_arg, map.dimension());

  const std::vector<double> grid =
      parameter_grid(cfg.r_min, cfg.r_max, cfg.r_step);
  const auto records = bifurcation_diagram(map, grid, x0[0], cfg.transient,
                                           cfg.samples, cfg.threads);

  CsvWriter csv(output_path(cfg, "bifurcate"));
  csv.header({"r", "x"});
  std::size_t diverged = 0;
  for (const auto& rec : records) {
    if (rec.diverged) {
      ++diverged;
      continue;
    }
    const std::string r_cell = CsvWriter::cell(rec.parameter_value);
    for (double sample : rec.samples)
      csv.row({r_cell, CsvWriter::cell(sample)});
  }
  if (diverged > 0)
    std::cerr << diverged << " of " << records.size()
              << " grid points diverged\n";
  if (diverged == records.size()) return kExitDivergence;
  return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg) {
  const MapDefinition& map = resolve_map(cfg);
  const BoundParameters params = bind_and_warn(map, cfg);
  const StateVector x0 = parse_x0(cfg.x0_arg, map.dimension());
  const JacobianMode mode = parse_jacobian_mode(cfg.jacobian_mode);
  const std::string method = cfg.method.empty() ? "benettin" : cfg.method;

  SpectrumEstimate est;
  if (method == "benettin") {
    const std::size_t t = cfg.steps == 0 ? 1000000 : cfg.steps;
    const std::size_t tau = cfg.tau;
    std::size_t s = cfg.renorms != 0 ? cfg.renorms : t / tau;
    if (s == 0)
      throw std::invalid_argument("steps must be at least tau (one renorm)");
    const StateVector u0 = default_tangent_seed(map.dimension());
    if (map.name() == "henon") {
      // the constant-determinant identity supplies the second exponent
      est = benettin_determinant_pair(map, params.span(), x0, u0, tau, s, mode,
                                      params.values[1]);
    } else {
      est = max_exponent_benettin(map, params.span(), x0, u0, tau, s, mode);
    }
  } else if (method == "qr") {
    const std::size_t t = cfg.steps == 0 ? 100000 : cfg.steps;
    est = spectrum_qr(map, params.span(), x0, t, mode);
  } else if (method == "direct") {
    const std::size_t t = cfg.steps == 0 ? 1000000 : cfg.steps;
    est = max_exponent_direct(map, params.span(), x0, cfg.epsilon, t, cfg.seed);
  } else {
    throw std::invalid_argument(
        "--method must be benettin, qr, or direct for spectrum");
  }

  CsvWriter csv(output_path(cfg, "spectrum"));
  std::vector<std::string> header;
  for (std::size_t i = 0; i < est.exponents.size(); ++i)
    header.push_back("lambda_" + std::to_string(i + 1));
  for (const char* col : {"method", "steps", "tau", "renorms", "jacobian_mode",
                          "epsilon", "seed", "det_sum_check"})
    header.push_back(col);
  csv.header(header);

  std::vector<std::string> cells;
  for (double e : est.exponents) cells.push_back(CsvWriter::cell(e));
  cells.push_back(std::string(to_string(est.method)));
  cells.push_back(CsvWriter::cell(est.steps));
  cells.push_back(CsvWriter::cell(est.renorm_interval));
  cells.push_back(CsvWriter::cell(est.renorm_count));
  cells.push_back(est.jacobian_mode ? std::string(to_string(*est.jacobian_mode))
                                    : "none");
  cells.push_back(CsvWriter::cell(
      est.method == SpectrumMethod::direct ? cfg.epsilon : 0.0));
  cells.push_back(CsvWriter::cell(
      est.method == SpectrumMethod::direct ? cfg.seed : std::uint64_t{0}));
  cells.push_back(est.det_sum_check ? CsvWriter::cell(*est.det_sum_check) : "");
  csv.row(cells);

  std::cout << "lyapunov_exponents";
  for (double e : est.exponents) std::cout << "," << format_fixed(e, 6);
  std::cout << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "chaoscope: Lyapunov exponents, spectra and bifurcation diagrams for "
      "discrete-time maps"};
  app.require_subcommand(1);

  RunConfig cfg;
  BindingTable bindings;

  auto add_common = [&](CLI::App* sub) {
    bind_option(sub, bindings, "--map", cfg.map_name,
                "Built-in map name (logistic, henon)");
    CLI::Option* p = sub->add_option("--param", cfg.param_args,
                                     "Map parameter NAME=VALUE (repeatable)");
    p->take_all();
    bind_option(sub, bindings, "--x0", cfg.x0_arg,
                "Initial state, comma-separated (default 0.1 per axis)");
    bind_option(sub, bindings, "--out", cfg.out,
                "Output CSV path (default <command>.csv)");
    bind_option(sub, bindings, "--config", cfg.config_path,
                "Config file with key=value lines; flags override it");
    return sub;
  };

  CLI::App* orbit = add_common(app.add_subcommand(
      "orbit", "Iterate a map and write the orbit as CSV"));
  bind_option(orbit, bindings, "--steps", cfg.steps,
              "Number of iterations (default 10000)");

  CLI::App* lyap = add_common(app.add_subcommand(
      "lyap1d", "Scalar Lyapunov exponent of a 1-D map"));
  bind_option(lyap, bindings, "--steps", cfg.steps,
              "Terms in the exponent average (default 10000)");
  bind_option(lyap, bindings, "--method", cfg.method,
              "derivative | finite-diff (default finite-diff)");
  bind_option(lyap, bindings, "--epsilon", cfg.epsilon,
              "Finite-difference perturbation (default 1e-8)");
  bind_option(lyap, bindings, "--burn-in", cfg.burn_in,
              "Transient steps discarded first (default 0)");

  CLI::App* sweep = add_common(app.add_subcommand(
      "sweep", "Lyapunov exponent over a parameter grid"));
  bind_option(sweep, bindings, "--steps", cfg.steps,
              "Terms per grid point (default 10000)");
  bind_option(sweep, bindings, "--method", cfg.method,
              "derivative | finite-diff (default finite-diff)");
  bind_option(sweep, bindings, "--epsilon", cfg.epsilon,
              "Finite-difference perturbation (default 1e-8)");
  bind_option(sweep, bindings, "--burn-in", cfg.burn_in,
              "Transient steps discarded first (default 0)");
  bind_option(sweep, bindings, "--r-min", cfg.r_min, "Grid start (default 0)");
  bind_option(sweep, bindings, "--r-max", cfg.r_max, "Grid end (default 4)");
  bind_option(sweep, bindings, "--r-step", cfg.r_step,
              "Grid step (default 0.001)");
  bind_option(sweep, bindings, "--threads", cfg.threads,
              "Worker threads (default 1; output independent of this)");

  CLI::App* bif = add_common(app.add_subcommand(
      "bifurcate", "Orbit (bifurcation) diagram over a parameter grid"));
  bind_option(bif, bindings, "--r-min", cfg.r_min, "Grid start (default 0)");
  bind_option(bif, bindings, "--r-max", cfg.r_max, "Grid end (default 4)");
  bind_option(bif, bindings, "--r-step", cfg.r_step,
              "Grid step (default 0.001)");
  bind_option(bif, bindings, "--transient", cfg.transient,
              "Discarded settling iterations per point (default 100)");
  bind_option(bif, bindings, "--samples", cfg.samples,
              "Recorded iterations per point (default 100)");
  bind_option(bif, bindings, "--threads", cfg.threads,
              "Worker threads (default 1; output independent of this)");

  CLI::App* spec = add_common(app.add_subcommand(
      "spectrum", "Lyapunov spectrum of an n-dimensional map"));
  bind_option(spec, bindings, "--method", cfg.method,
              "benettin | qr | direct (default benettin)");
  bind_option(spec, bindings, "--steps", cfg.steps,
              "Total steps t (defaults: benettin/direct 1e6, qr 1e5)");
  bind_option(spec, bindings, "--tau", cfg.tau,
              "Benettin renormalization interval (default 50)");
  bind_option(spec, bindings, "--renorms", cfg.renorms,
              "Benettin renormalization count (default steps/tau)");
  bind_option(spec, bindings, "--jacobian-mode", cfg.jacobian_mode,
              "corrected | paper-compat (default corrected)");
  bind_option(spec, bindings, "--epsilon", cfg.epsilon,
              "Direct-method separation (default 1e-8)");
  bind_option(spec, bindings, "--seed", cfg.seed,
              "Direct-method RNG seed (default 1; recorded in output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    apply_config_file(sub, bindings, cfg);
    if (sub == orbit) return cmd_orbit(cfg);
    if (sub == lyap) return cmd_lyap1d(cfg);
    if (sub == sweep) return cmd_sweep(cfg);
    if (sub == bif) return cmd_bifurcate(cfg);
    if (sub == spec) return cmd_spectrum(cfg);
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " (step " << e.step() << ")\n";
    return kExitDivergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
