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

#include "qhesim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "qhesim/errors.hpp"
#include "qhesim/rng.hpp"

namespace qhesim::io {

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* what) {
  if (!j.is_object()) throw InvalidArgument(std::string(what) + ": expected a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw InvalidArgument(std::string(what) + ": unknown key '" + it.key() + "'");
}

double number(const json& j, const char* key, const char* what) {
  const json& v = j.at(key);
  if (!v.is_number())
    throw InvalidArgument(std::string(what) + ": '" + key + "' must be a number");
  return v.get<double>();
}

void read_if(const json& j, const char* key, double& out, const char* what) {
  if (j.contains(key)) out = number(j, key, what);
}

}  // namespace

EngineParams params_from_json(const json& j) {
  static const std::set<std::string> keys = {
      "omega0",      "omega1",      "omega2",      "lambda",      "omega_drive", "beta_h",
      "beta_c",      "gamma_h_e20", "gamma_c_e10", "gamma_h_e10", "gamma_c_e20"};
  reject_unknown(j, keys, "params");
  EngineParams p;
  read_if(j, "omega0", p.omega0, "params");
  read_if(j, "omega1", p.omega1, "params");
  read_if(j, "omega2", p.omega2, "params");
  read_if(j, "lambda", p.lambda_field, "params");
  read_if(j, "beta_h", p.beta_h, "params");
  read_if(j, "beta_c", p.beta_c, "params");
  read_if(j, "gamma_h_e20", p.gamma_h_e20, "params");
  read_if(j, "gamma_c_e10", p.gamma_c_e10, "params");
  read_if(j, "gamma_h_e10", p.gamma_h_e10, "params");
  read_if(j, "gamma_c_e20", p.gamma_c_e20, "params");
  if (j.contains("omega_drive") && !j.at("omega_drive").is_null())
    p.omega_drive = number(j, "omega_drive", "params");
  p.validate();
  return p;
}

json to_json(const EngineParams& p) {
  json j = {{"omega0", p.omega0},         {"omega1", p.omega1},
            {"omega2", p.omega2},         {"lambda", p.lambda_field},
            {"beta_h", p.beta_h},         {"beta_c", p.beta_c},
            {"gamma_h_e20", p.gamma_h_e20}, {"gamma_c_e10", p.gamma_c_e10},
            {"gamma_h_e10", p.gamma_h_e10}, {"gamma_c_e20", p.gamma_c_e20}};
  j["omega_drive"] = p.omega_drive ? json(*p.omega_drive) : json(nullptr);
  return j;
}

NoiseModel noise_from_json(const json& j) {
  reject_unknown(j, {"readout_flip_01", "readout_flip_10", "depolarizing"}, "noise");
  NoiseModel n;
  read_if(j, "readout_flip_01", n.readout_flip_01, "noise");
  read_if(j, "readout_flip_10", n.readout_flip_10, "noise");
  read_if(j, "depolarizing", n.depolarizing, "noise");
  n.validate();
  return n;
}

json to_json(const NoiseModel& n) {
  return {{"readout_flip_01", n.readout_flip_01},
          {"readout_flip_10", n.readout_flip_10},
          {"depolarizing", n.depolarizing}};
}

CycleSchedule schedule_from_json(const json& j) {
  reject_unknown(j, {"dt", "gamma", "u_map", "steps", "label"}, "schedule");
  CycleSchedule s;
  read_if(j, "dt", s.dt, "schedule");
  read_if(j, "gamma", s.gamma, "schedule");
  if (j.contains("label")) s.label = j.at("label").get<std::string>();
  if (j.contains("u_map")) {
    const json& m = j.at("u_map");
    reject_unknown(m, {"name", "omega2_min", "omega2_max"}, "schedule.u_map");
    if (m.contains("name")) s.u_map.name = m.at("name").get<std::string>();
    if (s.u_map.name != "omega2_linear")
      throw InvalidArgument("schedule.u_map: unsupported map '" + s.u_map.name + "'");
    read_if(m, "omega2_min", s.u_map.omega2_min, "schedule.u_map");
    read_if(m, "omega2_max", s.u_map.omega2_max, "schedule.u_map");
  }
  if (!j.contains("steps") || !j.at("steps").is_array())
    throw InvalidArgument("schedule: 'steps' must be an array");
  for (const json& st : j.at("steps")) {
    reject_unknown(st, {"d", "u"}, "schedule step");
    Action a;
    a.d = stroke_from_string(st.at("d").get<std::string>());
    read_if(st, "u", a.u, "schedule step");
    s.steps.push_back(a);
  }
  s.validate();
  return s;
}

json to_json(const CycleSchedule& s) {
  json steps = json::array();
  for (const Action& a : s.steps) steps.push_back({{"d", to_string(a.d)}, {"u", a.u}});
  json j = {{"dt", s.dt},
            {"gamma", s.gamma},
            {"u_map",
             {{"name", s.u_map.name},
              {"omega2_min", s.u_map.omega2_min},
              {"omega2_max", s.u_map.omega2_max}}},
            {"steps", steps}};
  if (!s.label.empty()) j["label"] = s.label;
  return j;
}

json to_json(const KrausSet& ks) {
  json ops = json::array();
  for (const Matrix& m : ks.operators()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    ops.push_back(rows);
  }
  return {{"basis", ks.basis() == Basis::bare ? "bare" : "dressed"},
          {"source", ks.source()},
          {"operators", ops}};
}

json to_json(const ShotHistogram& h, std::uint64_t seed) {
  json counts = json::object();
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    if (h.counts[i]) counts[std::to_string(i)] = h.counts[i];
  return {{"shots", h.shots},
          {"n_qubits", h.n_qubits},
          {"counts", counts},
          {"rng", std::string(kRngName)},
          {"seed", seed}};
}

json to_json(const CalibrationMatrix& c) {
  json g = json::array();
  for (Eigen::Index r = 0; r < c.g.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index k = 0; k < c.g.cols(); ++k) row.push_back(c.g(r, k));
    g.push_back(row);
  }
  return {{"n_qubits", c.n_qubits()},
          {"noise", to_json(c.noise)},
          {"shots", c.shots},
          {"seed", c.seed},
          {"rng", std::string(kRngName)},
          {"g", g}};
}

CalibrationMatrix calibration_from_json(const json& j) {
  reject_unknown(j, {"n_qubits", "noise", "shots", "seed", "rng", "g"}, "calibration");
  CalibrationMatrix c;
  c.noise = noise_from_json(j.at("noise"));
  c.shots = j.value("shots", std::uint64_t{0});
  c.seed = j.value("seed", std::uint64_t{0});
  const json& g = j.at("g");
  const auto n = static_cast<Eigen::Index>(g.size());
  if (n == 0 || (n & (n - 1)) != 0)
    throw InvalidArgument("calibration: matrix size must be a power of two");
  c.g.resize(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (g[r].size() != static_cast<std::size_t>(n))
      throw InvalidArgument("calibration: matrix is not square");
    for (Eigen::Index k = 0; k < n; ++k) c.g(r, k) = g[r][k].get<double>();
  }
  return c;
}

json to_json(const SweepSummary& s) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
  const double cells = static_cast<double>(s.cells);
  return {{"case", s.case_id},
          {"cells", s.cells},
          {"valid_theo", s.valid_theo},
          {"valid_sim", s.valid_sim},
          {"valid_fraction_theo", cells > 0 ? s.valid_theo / cells : 0.0},
          {"valid_fraction_sim", cells > 0 ? s.valid_sim / cells : 0.0},
          {"comparable_p", s.comparable_p},
          {"sentinel_p", s.sentinel_p},
          {"comparable_eta", s.comparable_eta},
          {"sentinel_eta", s.sentinel_eta},
          {"max_er_p", num(s.max_er_p)},
          {"median_er_p", num(s.median_er_p)},
          {"max_er_eta", num(s.max_er_eta)},
          {"median_er_eta", num(s.median_er_eta)},
          {"flagged", s.flagged}};
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move output into '" + path.string() + "': " + ec.message());
  }
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace qhesim::io
