// Copyright 2026 The topoflux Authors
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

// Serialization of trajectories, summaries and reports.
//
// Trajectory CSV columns, in order:
//   t_ns, re_rho11, im_rho11, re_rho22, im_rho22, re_rho12, im_rho12,
//   re_rho21, im_rho21, trace, purity, min_eig
// with every number printed to 17 significant digits.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "topoflux/dynamics.hpp"
#include "topoflux/gates.hpp"
#include "topoflux/scenario.hpp"

namespace topoflux {

enum class OutputFormat { kCsv, kSvg, kJson };

void write_trajectory_csv(const Trajectory& traj, std::ostream& os);
// Parses the CSV written above. finalState is left empty.
Trajectory read_trajectory_csv(std::istream& is);
void write_trajectory_svg(const Trajectory& traj, std::ostream& os);

nlohmann::json resolved_json(const ResolvedScenario& r);
nlohmann::json summary_json(const SimResult& result);
nlohmann::json sweep_json(const SweepResult& result);
void write_sweep_csv(const SweepResult& result, std::ostream& os);
nlohmann::json robustness_json(const RobustnessResult& result);
nlohmann::json gates_json(const CpVerification& v);

// Writes trajectory.csv / trajectory.svg / summary.json into dir for the
// requested formats. Returns the paths written.
std::vector<std::filesystem::path> emit_outputs(const SimResult& result,
                                                const std::filesystem::path& dir,
                                                const std::vector<OutputFormat>& formats);

// Creates parent directories; throws IoError naming the path on failure.
void write_text_file(const std::filesystem::path& path, const std::string& text);

std::string format_double(double v);

}  // namespace topoflux
