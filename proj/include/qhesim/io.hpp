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

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qhesim/cycle.hpp"
#include "qhesim/sweep.hpp"

namespace qhesim::io {

using nlohmann::json;

/// Flat object, one numeric field per EngineParams member. Unknown keys are
/// rejected; missing keys keep their defaults. omega_drive may be null.
EngineParams params_from_json(const json& j);
json to_json(const EngineParams& p);

NoiseModel noise_from_json(const json& j);
json to_json(const NoiseModel& n);

/// {"dt", "gamma", "u_map": {"name", "omega2_min", "omega2_max"},
///  "steps": [{"d": "hot"|"cold"|"work", "u": x}, ...]}
CycleSchedule schedule_from_json(const json& j);
json to_json(const CycleSchedule& s);

/// Operators as nested [re, im] pairs.
json to_json(const KrausSet& ks);

/// {shots, n_qubits, counts: {index: count}, rng, seed}
json to_json(const ShotHistogram& h, std::uint64_t seed);

json to_json(const CalibrationMatrix& c);
CalibrationMatrix calibration_from_json(const json& j);

json to_json(const SweepSummary& s);

json read_json_file(const std::filesystem::path& path);

/// Write via a sibling temporary and rename into place.
void write_atomic(const std::filesystem::path& path, const std::string& contents);

/// Shortest round-trip decimal form of a double; NaN as "nan".
std::string format_double(double v);

}  // namespace qhesim::io
