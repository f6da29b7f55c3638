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

// Internal units: angular frequency in rad/ns, time in ns, length in um,
// hbar = 1. Files carry ordinary frequencies (GHz, omega / 2pi) and kelvin
// temperatures in mK.

#include <numbers>

namespace topoflux::units {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// k_B / hbar in rad s^-1 K^-1 (CODATA 2018 exact values).
inline constexpr double kBoltzmannOverHbar = 1.380649e-23 / 1.054571817e-34;

constexpr double ghz_to_angular(double ghz) { return kTwoPi * ghz; }
constexpr double angular_to_ghz(double omega) { return omega / kTwoPi; }

// k_B T / hbar in rad/ns.
// k_B (1 mK) / hbar in rad/ns.
inline constexpr double kAngularPerMillikelvin = 1e-3 * kBoltzmannOverHbar * 1e-9;

constexpr double millikelvin_to_angular(double mk) { return mk * kAngularPerMillikelvin; }
constexpr double angular_to_millikelvin(double omega) { return omega / kAngularPerMillikelvin; }

// 1 m/s = 1e-3 um/ns.
constexpr double meters_per_second_to_um_per_ns(double v) { return v * 1e-3; }

}  // namespace topoflux::units
