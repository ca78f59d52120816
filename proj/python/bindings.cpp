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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qhesim/cycle.hpp"
#include "qhesim/dilation.hpp"
#include "qhesim/errors.hpp"
#include "qhesim/io.hpp"
#include "qhesim/sweep.hpp"

namespace py = pybind11;
using namespace qhesim;

namespace {

DensityMatrix initial_state(const EngineParams& p, const py::object& initial) {
  if (py::isinstance<py::int_>(initial)) {
    const int level = initial.cast<int>();
    if (level < 0 || level > 2) throw InvalidArgument("initial level must be 0, 1 or 2");
    return DensityMatrix::pure(dressed_basis(p).vectors.col(level));
  }
  return DensityMatrix::from_matrix(initial.cast<Matrix>());
}

py::dict report_dict(const SteadyStateReport& r) {
  py::dict d;
  d["populations"] = r.populations;
  d["j_h"] = r.j_h;
  d["j_c"] = r.j_c;
  d["power"] = r.power;
  d["efficiency"] = r.efficiency;
  d["valid"] = r.valid;
  return d;
}

CircuitOptions circuit_options(std::uint64_t shots, int reps, std::uint64_t seed, bool noise,
                               bool mitigate) {
  CircuitOptions o;
  o.shots = shots;
  o.reps = reps;
  o.seed = seed;
  if (noise) o.noise = NoiseModel{};
  o.mitigate = mitigate;
  return o;
}

}  // namespace

PYBIND11_MODULE(qhesim, m) {
  m.doc() = "Three-level quantum heat engine: GKLS dynamics, dilation circuits, cycles and sweeps";

  static py::exception<Error> base_error(m, "Error", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const InvalidArgument& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const InvalidState& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DimensionMismatch& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const Error& e) {
      py::set_error(base_error, e.what());
    }
  });

  py::class_<EngineParams>(m, "EngineParams")
      .def(py::init<>())
      .def_readwrite("omega0", &EngineParams::omega0)
      .def_readwrite("omega1", &EngineParams::omega1)
      .def_readwrite("omega2", &EngineParams::omega2)
      .def_readwrite("lambda_field", &EngineParams::lambda_field)
      .def_readwrite("omega_drive", &EngineParams::omega_drive)
      .def_readwrite("beta_h", &EngineParams::beta_h)
      .def_readwrite("beta_c", &EngineParams::beta_c)
      .def_readwrite("gamma_h_e20", &EngineParams::gamma_h_e20)
      .def_readwrite("gamma_c_e10", &EngineParams::gamma_c_e10)
      .def_readwrite("gamma_h_e10", &EngineParams::gamma_h_e10)
      .def_readwrite("gamma_c_e20", &EngineParams::gamma_c_e20)
      .def("validate", &EngineParams::validate)
      .def("carnot_efficiency", &EngineParams::carnot_efficiency)
      .def("to_json", [](const EngineParams& p) { return io::to_json(p).dump(); })
      .def_static("from_json",
                  [](const std::string& s) { return io::params_from_json(io::json::parse(s)); })
      .def("__repr__", [](const EngineParams& p) { return "EngineParams(" + io::to_json(p).dump() + ")"; });

  m.def(
      "dressed_energies",
      [](const EngineParams& p) {
        const DressedBasis b = dressed_basis(p);
        return py::make_tuple(b.eps0, b.eps1, b.eps2);
      },
      "Dressed energies (eps0, eps1, eps2).");

  m.def("hamiltonian", [](const EngineParams& p) { return hamiltonian_at(p, 0.0); },
        "System Hamiltonian at the reference time (bare basis).");

  m.def(
      "populations",
      [](const EngineParams& p, const py::object& initial, const std::vector<double>& times) {
        const auto traj = propagate(p, initial_state(p, initial), times);
        RealMatrix out(static_cast<Eigen::Index>(traj.size()), 3);
        for (std::size_t k = 0; k < traj.size(); ++k)
          for (int j = 0; j < 3; ++j) out(static_cast<Eigen::Index>(k), j) = traj[k].populations[j];
        return out;
      },
      py::arg("params"), py::arg("initial"), py::arg("times"),
      "Dressed populations along the GKLS trajectory. `initial` is a level index or a 3x3 density matrix.");

  m.def(
      "circuit_populations",
      [](const EngineParams& p, const py::object& initial, double t, std::uint64_t shots, int reps,
         std::uint64_t seed, bool noise, bool mitigate) {
        const DensityMatrix rho0 = initial_state(p, initial);
        const KrausSet ks = kraus_from_pair(rho0, DensityMatrix::trusted(evolve(p, rho0, t).matrix(), Basis::bare));
        const PopulationEstimate e =
            estimate_populations(p, rho0, ks, circuit_options(shots, reps, seed, noise, mitigate));
        py::dict d;
        d["values"] = e.values;
        d["std_errors"] = e.std_errors;
        d["mitigated"] = e.mitigated;
        return d;
      },
      py::arg("params"), py::arg("initial"), py::arg("t"), py::arg("shots") = 8192,
      py::arg("reps") = 5, py::arg("seed") = 0, py::arg("noise") = false, py::arg("mitigate") = false,
      "Dressed populations at time t estimated from dilation circuits.");

  m.def(
      "steady_state",
      [](const EngineParams& p) { return report_dict(performance(p, steady_state(p))); },
      "Steady-state populations, heat currents, power, efficiency and validity.");

  m.def("dilate1", &dilate1, "Unitary 1-dilation of a contraction.");
  m.def("dilate2", &dilate2, "Unitary 2-dilation of a contraction.");

  m.def(
      "mitigate",
      [](const std::vector<double>& v, const RealMatrix& g) { return mitigate(v, g).x; },
      py::arg("frequencies"), py::arg("calibration"),
      "Least-squares readout mitigation constrained to the probability simplex.");

  m.def(
      "calibration_matrix",
      [](int n_qubits, double flip01, double flip10, double depolarizing) {
        return calibration_matrix(NoiseModel{flip01, flip10, depolarizing}, n_qubits).g;
      },
      py::arg("n_qubits"), py::arg("readout_flip_01") = 0.02, py::arg("readout_flip_10") = 0.03,
      py::arg("depolarizing") = 0.05);

  m.def(
      "average_power",
      [](const std::vector<double>& rewards, double gamma) { return average_power(rewards, gamma); },
      py::arg("rewards"), py::arg("gamma"));

  m.def(
      "run_schedule",
      [](const EngineParams& p, const std::string& schedule_json, int n_steps,
         const std::string& backend, std::uint64_t shots, std::uint64_t seed) {
        ScheduleRunOptions o;
        o.n_steps = n_steps;
        if (backend == "circuit") {
          o.backend = Backend::circuit;
        } else if (backend != "exact") {
          throw InvalidArgument("backend must be 'exact' or 'circuit'");
        }
        o.circuit.shots = shots;
        o.circuit.seed = seed;
        const PowerTrace t = run_schedule(p, io::schedule_from_json(io::json::parse(schedule_json)), o);
        std::vector<double> reward, avg;
        for (const StepRecord& r : t.steps) {
          reward.push_back(r.reward);
          avg.push_back(r.avg_power);
        }
        py::dict d;
        d["reward"] = reward;
        d["avg_power"] = avg;
        d["average_power"] = t.average_power;
        d["average_entropy_production"] = t.average_entropy_production;
        d["efficiency"] = t.efficiency;
        return d;
      },
      py::arg("params"), py::arg("schedule_json"), py::arg("n_steps") = 0,
      py::arg("backend") = "exact", py::arg("shots") = 0, py::arg("seed") = 0,
      "Replay a cycle schedule given as a JSON string.");

  m.def(
      "l9_cases",
      [] {
        py::list out;
        for (const SweepCase& c : l9_cases()) {
          py::dict d;
          d["case"] = c.case_id;
          d["beta_h"] = c.beta_h;
          d["beta_c"] = c.beta_c;
          d["gamma_h_e20"] = c.gamma_h_e20;
          d["gamma_c_e10"] = c.gamma_c_e10;
          d["gamma_h_e10"] = c.gamma_h_e10;
          d["gamma_c_e20"] = c.gamma_c_e20;
          d["evolution_time"] = c.evolution_time;
          d["flagged"] = c.flagged;
          out.append(d);
        }
        return out;
      },
      "Rows of the nine-case orthogonal test.");

  m.def(
      "run_case",
      [](int case_id, int n_lambda, int n_omega20, const std::string& backend, std::uint64_t shots,
         int reps, std::uint64_t seed) {
        GridSpec g;
        g.n_lambda = n_lambda;
        g.n_omega20 = n_omega20;
        SweepOptions o;
        if (backend == "exact") {
          o.backend = SweepBackend::exact;
        } else if (backend != "circuit") {
          throw InvalidArgument("backend must be 'exact' or 'circuit'");
        }
        o.circuit.shots = shots;
        o.circuit.reps = reps;
        o.circuit.seed = seed;
        o.threads = 1;
        const ErrorMap map = run_case(l9_case(case_id), g, o);
        RealMatrix p_theo(n_lambda, n_omega20), p_sim(n_lambda, n_omega20), er_p(n_lambda, n_omega20);
        for (const SweepCell& c : map.cells) {
          p_theo(c.i_lambda, c.j_omega20) = c.p_theo;
          p_sim(c.i_lambda, c.j_omega20) = c.p_sim;
          er_p(c.i_lambda, c.j_omega20) = c.er_p.value;
        }
        py::dict d;
        d["p_theo"] = p_theo;
        d["p_sim"] = p_sim;
        d["er_p"] = er_p;
        return d;
      },
      py::arg("case_id"), py::arg("n_lambda") = 21, py::arg("n_omega20") = 21,
      py::arg("backend") = "circuit", py::arg("shots") = 40960, py::arg("reps") = 5,
      py::arg("seed") = 0, "Error map of one sweep case (rows lambda, columns omega20).");
}
