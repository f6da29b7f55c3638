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

#include "topoflux/output.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>
#include <string>

#include "topoflux/errors.hpp"

namespace topoflux {
namespace {

const char* kHeader =
    "t_ns,re_rho11,im_rho11,re_rho22,im_rho22,re_rho12,im_rho12,re_rho21,im_rho21,"
    "trace,purity,min_eig";

const SimResult& fig2a() {
  static const SimResult result = run_scenario(preset_config(Experiment::kFig2a));
  return result;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

std::vector<double> split(const std::string& line) {
  std::vector<double> out;
  std::istringstream is(line);
  for (std::string cell; std::getline(is, cell, ',');) out.push_back(std::stod(cell));
  return out;
}

TEST(TrajectoryCsv, TwoSamplesGiveThreeLines) {
  Trajectory t;
  t.times = {0.0, 0.1};
  t.rho11 = {0.0, 0.25};
  t.rho22 = {1.0, 0.75};
  t.rho12 = {Complex(0, 0), Complex(0, 0.4)};
  t.rho21 = {Complex(0, 0), Complex(0, -0.4)};
  t.trace = {1.0, 1.0};
  t.purity = {1.0, 0.945};
  t.minEigenvalue = {0.0, 0.0};
  std::ostringstream os;
  write_trajectory_csv(t, os);
  const auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], kHeader);
}

TEST(TrajectoryCsv, HermitianColumns) {
  std::ostringstream os;
  write_trajectory_csv(fig2a().trajectory, os);
  const auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), fig2a().trajectory.size() + 1);
  EXPECT_EQ(lines[0], kHeader);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto v = split(lines[i]);
    ASSERT_EQ(v.size(), 12u);
    EXPECT_NEAR(v[5], v[7], 1e-9);
    EXPECT_NEAR(v[6], -v[8], 1e-9);
  }
}

TEST(TrajectoryCsv, RoundTripIsExact) {
  const Trajectory& t = fig2a().trajectory;
  std::ostringstream os;
  write_trajectory_csv(t, os);
  std::istringstream is(os.str());
  const Trajectory back = read_trajectory_csv(is);
  EXPECT_EQ(back.times, t.times);
  EXPECT_EQ(back.rho11, t.rho11);
  EXPECT_EQ(back.rho22, t.rho22);
  EXPECT_EQ(back.rho12, t.rho12);
  EXPECT_EQ(back.rho21, t.rho21);
  EXPECT_EQ(back.trace, t.trace);
  EXPECT_EQ(back.purity, t.purity);
  EXPECT_EQ(back.minEigenvalue, t.minEigenvalue);
}

TEST(TrajectoryCsv, RejectsWrongHeader) {
  std::istringstream is("t,rho\n0,1\n");
  EXPECT_THROW(read_trajectory_csv(is), Error);
}

TEST(TrajectorySvg, HasThreeCurves) {
  std::ostringstream os;
  write_trajectory_svg(fig2a().trajectory, os);
  const std::string svg = os.str();
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 3u);
}

TEST(SummaryJson, EchoesResolvedParameters) {
  const nlohmann::json j = summary_json(fig2a());
  EXPECT_EQ(j["fidelity"]["label"], "F1");
  EXPECT_NEAR(j["fidelity"]["value"].get<double>(), 0.993, 0.005);
  const nlohmann::json& r = j["resolved"];
  for (const char* key : {"device", "derived", "validity", "effective", "config", "pulse",
                          "hilbert", "integration"}) {
    EXPECT_TRUE(r.contains(key)) << key;
  }
  EXPECT_NEAR(r["derived"]["g_GHz"].get<double>(), -2.0574, 1e-3);
  EXPECT_EQ(j["samples"].get<std::size_t>(), fig2a().trajectory.size());
}

TEST(EmitOutputs, WritesRequestedFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "topoflux_emit_test";
  std::filesystem::remove_all(dir);
  const auto written =
      emit_outputs(fig2a(), dir, {OutputFormat::kCsv, OutputFormat::kSvg, OutputFormat::kJson});
  ASSERT_EQ(written.size(), 3u);
  for (const auto& p : written) EXPECT_TRUE(std::filesystem::exists(p)) << p;
  std::filesystem::remove_all(dir);
}

TEST(EmitOutputs, IoErrorNamesPath) {
  const auto blocker = std::filesystem::temp_directory_path() / "topoflux_blocker_file";
  write_text_file(blocker, "x");
  try {
    write_text_file(blocker / "sub" / "out.csv", "data");
    FAIL() << "expected an I/O error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("topoflux_blocker_file"), std::string::npos);
  }
  std::filesystem::remove(blocker);
}

}  // namespace
}  // namespace topoflux
