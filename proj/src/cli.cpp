// Copyright 2026 The qhesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qhesim/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qhesim/errors.hpp"
#include "qhesim/io.hpp"
#include "qhesim/rng.hpp"

namespace qhesim {

namespace {

using io::format_double;
using io::json;

// Options shared by every subcommand.
struct CommonOptions {
  std::string params_file;
  std::string out;
  std::string summary;
  std::uint64_t seed = 0;
  std::uint64_t shots = 0;
  int reps = 5;
  std::string backend;
  std::string noise;
  std::string gem = "off";
  unsigned threads = 0;
};

struct DynamicsOptions {
  std::string initial = "eps0";
  double t_max = 8.0;
  double t_step = 0.5;
};

struct PowerOptions {
  std::string schedule;
  int steps = 1000;
};

struct SweepCliOptions {
  std::string cases = "1";
  std::string grid = "21x21";
};

EngineParams load_params(const CommonOptions& c) {
  if (c.params_file.empty()) return EngineParams{};
  return io::params_from_json(io::read_json_file(c.params_file));
}

std::optional<NoiseModel> load_noise(const std::string& spec) {
  if (spec == "none") return std::nullopt;
  if (spec == "default") return NoiseModel{};
  return io::noise_from_json(io::read_json_file(spec));
}

bool gem_enabled(const std::string& gem) {
  if (gem == "on") return true;
  if (gem == "off") return false;
  throw InvalidArgument("--gem expects on or off");
}

std::string header(const std::string& command, const json& config, std::uint64_t seed) {
  const std::string dump = config.dump();
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(fnv1a(dump.data(), dump.size())));
  std::ostringstream h;
  h << "# qhesim " << command << " config_hash=" << hash << " seed=" << seed
    << " rng=" << kRngName << "\n";
  h << "# config=" << dump << "\n";
  return h.str();
}

void emit(const CommonOptions& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
  } else {
    io::write_atomic(c.out, text);
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch == '\n' ? ' ' : ch;
  }
  return q + "\"";
}

CircuitOptions circuit_options(const CommonOptions& c) {
  CircuitOptions o;
  o.shots = c.shots;
  o.reps = c.reps;
  o.seed = c.seed;
  return o;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("initial state: 'rho' must be a matrix");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (!j[r].is_array() || j[r].size() != static_cast<std::size_t>(n))
      throw InvalidArgument("initial state: 'rho' must be square");
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& v = j[r][k];
      if (v.is_number()) {
        m(r, k) = v.get<double>();
      } else if (v.is_array() && v.size() == 2) {
        m(r, k) = Complex(v[0].get<double>(), v[1].get<double>());
      } else {
        throw InvalidArgument("initial state: entries must be numbers or [re, im] pairs");
      }
    }
  }
  return m;
}

DensityMatrix initial_state(const std::string& spec, const DressedBasis& basis) {
  for (int k = 0; k < 3; ++k)
    if (spec == "eps" + std::to_string(k))
      return DensityMatrix::pure(basis.vectors.col(k), Basis::bare);
  const json j = io::read_json_file(spec);
  if (!j.is_object() || !j.contains("rho"))
    throw InvalidArgument("initial state file needs a 'rho' matrix");
  const std::string b = j.value("basis", std::string("bare"));
  if (b != "bare" && b != "dressed") throw InvalidArgument("initial state: basis must be bare or dressed");
  const DensityMatrix rho =
      DensityMatrix::from_matrix(matrix_from_json(j.at("rho")), b == "bare" ? Basis::bare : Basis::dressed);
  if (rho.dim() != 3) throw DimensionMismatch("initial state must be 3x3");
  return rho.in_basis(Basis::bare, basis);
}

int cmd_dynamics(const CommonOptions& c, const DynamicsOptions& d, std::ostream& out) {
  const EngineParams p = load_params(c);
  if (c.backend != "exact" && c.backend != "circuit")
    throw InvalidArgument("--backend expects exact or circuit");
  if (!(d.t_step > 0.0) || !(d.t_max >= 0.0)) throw InvalidArgument("need t-step > 0 and t-max >= 0");
  if (c.reps < 1) throw InvalidArgument("--reps must be >= 1");
  const std::optional<NoiseModel> noise = load_noise(c.noise);
  const bool gem = gem_enabled(c.gem);
  const DressedBasis basis = dressed_basis(p);
  const DensityMatrix rho0 = initial_state(d.initial, basis);

  const auto n_t = static_cast<std::size_t>(std::floor(d.t_max / d.t_step + 1e-9)) + 1;
  std::vector<double> times(n_t);
  for (std::size_t k = 0; k < n_t; ++k) times[k] = d.t_step * static_cast<double>(k);
  const auto traj = propagate(p, rho0, times);

  json config = {{"command", "dynamics"},  {"params", io::to_json(p)},
                 {"initial", d.initial},   {"t_max", d.t_max},
                 {"t_step", d.t_step},     {"backend", c.backend},
                 {"shots", c.shots},       {"reps", c.reps},
                 {"noise", noise ? io::to_json(*noise) : json(nullptr)},
                 {"gem", gem}};
  std::ostringstream csv;
  csv << header("dynamics", config, c.seed);
  csv << "t,theo_rho00,theo_rho11,theo_rho22,"
         "ideal_rho00,ideal_rho11,ideal_rho22,ideal_se00,ideal_se11,ideal_se22,"
         "noisy_rho00,noisy_rho11,noisy_rho22,noisy_se00,noisy_se11,noisy_se22,"
         "gem_rho00,gem_rho11,gem_rho22,gem_se00,gem_se11,gem_se22\n";

  const double nan = std::nan("");
  auto put3 = [&](const std::array<double, 3>& v) {
    for (double x : v) csv << ',' << format_double(x);
  };
  const std::array<double, 3> nan3{nan, nan, nan};
  const std::array<double, 3> zero3{0.0, 0.0, 0.0};

  for (std::size_t k = 0; k < n_t; ++k) {
    const auto& pt = traj[k];
    csv << format_double(pt.t);
    put3(pt.populations);
    if (c.backend == "exact") {
      put3(pt.populations);
      put3(zero3);
      put3(nan3), put3(nan3), put3(nan3), put3(nan3);
      csv << '\n';
      continue;
    }
    const DensityMatrix rhot = DensityMatrix::trusted(pt.rho, Basis::bare);
    const KrausSet ks = kraus_from_pair(rho0, rhot);
    CircuitOptions ideal = circuit_options(c);
    ideal.seed = derive_seed(c.seed, {1});
    const PopulationEstimate e = estimate_populations(p, rho0, ks, ideal, k);
    put3(e.values);
    put3(e.std_errors);
    if (noise) {
      CircuitOptions noisy = circuit_options(c);
      noisy.seed = derive_seed(c.seed, {2});
      noisy.noise = noise;
      noisy.mitigate = gem;
      const PopulationEstimate en = estimate_populations(p, rho0, ks, noisy, k);
      put3(en.values);
      put3(en.std_errors);
      put3(en.mitigated.value_or(nan3));
      put3(en.mitigated_std_errors.value_or(nan3));
    } else {
      put3(nan3), put3(nan3), put3(nan3), put3(nan3);
    }
    csv << '\n';
  }
  emit(c, csv.str(), out);
  return kExitOk;
}

json trace_summary(const PowerTrace& t) {
  return {{"average_power", t.average_power},
          {"average_entropy_production", t.average_entropy_production},
          {"efficiency", t.efficiency ? json(*t.efficiency) : json(nullptr)}};
}

int cmd_power(const CommonOptions& c, const PowerOptions& po, std::ostream& out) {
  const EngineParams p = load_params(c);
  const CycleSchedule schedule = io::schedule_from_json(io::read_json_file(po.schedule));
  if (po.steps < 1) throw InvalidArgument("--steps must be >= 1");
  if (c.reps < 1) throw InvalidArgument("--reps must be >= 1");
  std::vector<Backend> backends;
  if (c.backend == "exact" || c.backend == "both") backends.push_back(Backend::exact);
  if (c.backend == "circuit" || c.backend == "both") backends.push_back(Backend::circuit);
  if (backends.empty()) throw InvalidArgument("--backend expects exact, circuit or both");
  const std::optional<NoiseModel> noise = load_noise(c.noise);
  const bool gem = gem_enabled(c.gem);

  json config = {{"command", "power"},
                 {"params", io::to_json(p)},
                 {"schedule", io::to_json(schedule)},
                 {"steps", po.steps},
                 {"backend", c.backend},
                 {"shots", c.shots},
                 {"reps", c.reps},
                 {"noise", noise ? io::to_json(*noise) : json(nullptr)},
                 {"gem", gem}};
  std::ostringstream csv;
  csv << header("power", config, c.seed);
  csv << "backend,step,t,d,u,reward,reward_se,avg_power,energy,j_h,j_c,sigma\n";

  json summary = {{"schedule", schedule.label}, {"steps", po.steps}, {"gamma", schedule.gamma},
                  {"carnot_efficiency", p.carnot_efficiency()}};
  std::vector<PowerTrace> traces;
  for (Backend b : backends) {
    ScheduleRunOptions ro;
    ro.backend = b;
    ro.n_steps = po.steps;
    ro.circuit = circuit_options(c);
    ro.circuit.noise = noise;
    ro.circuit.mitigate = gem;
    traces.push_back(run_schedule(p, schedule, ro));
    const PowerTrace& t = traces.back();
    const char* name = b == Backend::exact ? "exact" : "circuit";
    for (const StepRecord& r : t.steps) {
      csv << name << ',' << r.index << ',' << format_double(r.t) << ',' << to_string(r.action.d)
          << ',' << format_double(r.action.u) << ',' << format_double(r.reward) << ','
          << format_double(r.reward_std_error) << ',' << format_double(r.avg_power) << ','
          << format_double(r.energy) << ',' << format_double(r.j_h) << ','
          << format_double(r.j_c) << ',' << format_double(r.entropy_production) << '\n';
    }
    summary[name] = trace_summary(t);
  }
  if (traces.size() == 2) {
    double diff = 0.0;
    for (std::size_t i = 0; i < traces[0].steps.size(); ++i)
      diff = std::max(diff, std::abs(traces[0].steps[i].avg_power - traces[1].steps[i].avg_power));
    summary["max_abs_avg_power_difference"] = diff;
  }
  emit(c, csv.str(), out);
  if (!c.summary.empty()) {
    io::write_atomic(c.summary, summary.dump(2) + "\n");
  } else if (!c.out.empty()) {
    out << summary.dump(2) << "\n";
  }
  return kExitOk;
}

std::vector<int> parse_cases(const std::string& spec) {
  if (spec == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<int> ids;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) throw InvalidArgument("--cases: empty entry");
    std::size_t pos = 0;
    int id = 0;
    try {
      id = std::stoi(tok, &pos);
    } catch (const std::exception&) {
      throw InvalidArgument("--cases: '" + tok + "' is not a case id");
    }
    if (pos != tok.size()) throw InvalidArgument("--cases: '" + tok + "' is not a case id");
    l9_case(id);  // validates the range
    ids.push_back(id);
  }
  if (ids.empty()) throw InvalidArgument("--cases: no case given");
  return ids;
}

GridSpec parse_grid(const std::string& spec) {
  GridSpec g;
  const auto x = spec.find('x');
  if (x == std::string::npos) throw InvalidArgument("--grid expects WxH, e.g. 21x21");
  try {
    std::size_t p1 = 0, p2 = 0;
    g.n_lambda = std::stoi(spec.substr(0, x), &p1);
    g.n_omega20 = std::stoi(spec.substr(x + 1), &p2);
    if (p1 != x || p2 != spec.size() - x - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw InvalidArgument("--grid expects WxH, e.g. 21x21");
  }
  g.validate();
  return g;
}

const char* status_name(CellStatus s) {
  switch (s) {
    case CellStatus::comparable: return "comparable";
    case CellStatus::sentinel: return "sentinel";
    case CellStatus::masked: return "masked";
  }
  return "masked";
}

int cmd_sweep(const CommonOptions& c, const SweepCliOptions& so, std::ostream& out) {
  if (!c.params_file.empty())
    throw InvalidArgument("--params is not used by sweep; each case defines its parameters");
  const std::vector<int> ids = parse_cases(so.cases);
  const GridSpec grid = parse_grid(so.grid);
  SweepOptions opts;
  if (c.backend == "exact") {
    opts.backend = SweepBackend::exact;
  } else if (c.backend == "circuit") {
    opts.backend = SweepBackend::circuit;
  } else {
    throw InvalidArgument("--backend expects exact or circuit");
  }
  if (c.reps < 1) throw InvalidArgument("--reps must be >= 1");
  opts.circuit = circuit_options(c);
  opts.circuit.noise = load_noise(c.noise);
  opts.circuit.mitigate = gem_enabled(c.gem);
  opts.threads = c.threads;

  json config = {{"command", "sweep"},  {"cases", ids},
                 {"grid", so.grid},     {"backend", c.backend},
                 {"shots", c.shots},    {"reps", c.reps},
                 {"noise", opts.circuit.noise ? io::to_json(*opts.circuit.noise) : json(nullptr)},
                 {"gem", opts.circuit.mitigate}};
  std::ostringstream csv;
  csv << header("sweep", config, c.seed);
  csv << "case,i_lambda,j_omega20,lambda,omega20,p_theo,p_sim,eta_theo,eta_sim,er_p,er_eta,"
         "valid_theo,valid_sim,status_p,status_eta,sentinel_p,sentinel_eta,error\n";
  json summaries = json::array();
  for (int id : ids) {
    const SweepCase sc = l9_case(id);
    const ErrorMap map = run_case(sc, grid, opts);
    for (const SweepCell& cell : map.cells) {
      csv << id << ',' << cell.i_lambda << ',' << cell.j_omega20 << ','
          << format_double(cell.lambda) << ',' << format_double(cell.omega20) << ','
          << format_double(cell.p_theo) << ',' << format_double(cell.p_sim) << ','
          << format_double(cell.eta_theo) << ',' << format_double(cell.eta_sim) << ','
          << format_double(cell.er_p.value) << ',' << format_double(cell.er_eta.value) << ','
          << cell.valid_theo << ',' << cell.valid_sim << ',' << status_name(cell.er_p.status)
          << ',' << status_name(cell.er_eta.status) << ','
          << (cell.er_p.status == CellStatus::sentinel) << ','
          << (cell.er_eta.status == CellStatus::sentinel) << ',' << csv_quote(cell.error)
          << '\n';
    }
    json s = io::to_json(summarize(map));
    if (sc.flagged) s["note"] = sc.note;
    summaries.push_back(s);
  }
  const json summary = {{"grid", so.grid}, {"seed", c.seed}, {"cases", summaries}};
  emit(c, csv.str(), out);
  if (!c.summary.empty()) {
    io::write_atomic(c.summary, summary.dump(2) + "\n");
  } else if (!c.out.empty()) {
    out << summary.dump(2) << "\n";
  }
  return kExitOk;
}

CommonOptions defaults(std::uint64_t shots, const char* backend, const char* noise,
                       const char* gem) {
  CommonOptions c;
  c.shots = shots;
  c.backend = backend;
  c.noise = noise;
  c.gem = gem;
  return c;
}

void add_common(CLI::App* cmd, CommonOptions& c, const std::string& backend_help) {
  cmd->add_option("--params", c.params_file, "engine parameters (flat JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c.out, "output CSV (default stdout)");
  cmd->add_option("--seed", c.seed, "base RNG seed");
  cmd->add_option("--shots", c.shots, "shots per circuit, 0 = exact probabilities");
  cmd->add_option("--reps", c.reps, "repetitions per estimate");
  cmd->add_option("--backend", c.backend, backend_help);
  cmd->add_option("--noise", c.noise, "noise model: JSON file, 'default' or 'none'");
  cmd->add_option("--gem", c.gem, "readout mitigation: on|off");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"qhesim: three-level quantum heat engine simulator"};
  app.require_subcommand(1);

  CommonOptions dyn_c = defaults(8192, "circuit", "default", "on");
  DynamicsOptions dyn;
  auto* dynamics = app.add_subcommand("dynamics", "dressed-level populations over time");
  add_common(dynamics, dyn_c, "exact|circuit");
  dynamics->add_option("--initial", dyn.initial, "eps0|eps1|eps2 or a JSON state file");
  dynamics->add_option("--t-max", dyn.t_max, "last sample time");
  dynamics->add_option("--t-step", dyn.t_step, "sample spacing");

  CommonOptions pow_c = defaults(0, "both", "none", "off");
  PowerOptions pow;
  auto* power = app.add_subcommand("power", "replay a cycle schedule and report average power");
  add_common(power, pow_c, "exact|circuit|both");
  power->add_option("--schedule", pow.schedule, "schedule JSON")
      ->required()
      ->check(CLI::ExistingFile);
  power->add_option("--steps", pow.steps, "number of steps (schedule repeats)");
  power->add_option("--summary", pow_c.summary, "summary JSON output");

  CommonOptions sw_c = defaults(40960, "circuit", "none", "off");
  SweepCliOptions sw;
  auto* sweep = app.add_subcommand("sweep", "orthogonal-test sweep over (lambda, omega20)");
  add_common(sweep, sw_c, "exact|circuit");
  sweep->add_option("--cases", sw.cases, "comma-separated case ids (1..9) or 'all'");
  sweep->add_option("--grid", sw.grid, "grid resolution WxH (lambda x omega20)");
  sweep->add_option("--threads", sw_c.threads, "worker threads, 0 = all cores");
  sweep->add_option("--summary", sw_c.summary, "summary JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      if (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front())
        out << sub->help();
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (dynamics->parsed()) return cmd_dynamics(dyn_c, dyn, out);
    if (power->parsed()) return cmd_power(pow_c, pow, out);
    if (sweep->parsed()) return cmd_sweep(sw_c, sw, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidState& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const nlohmann::json::exception& e) {
    err << "error: bad config value: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}

}  // namespace qhesim
