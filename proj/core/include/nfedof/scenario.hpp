// SPDX-License-Identifier: Apache-2.0
//
// nfedof: effective spatial degrees of freedom of near-field LoS MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <istream>
#include <stdexcept>
#include <string>

#include "nfedof/array_geometry.hpp"
#include "nfedof/beamspace.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything a command needs to evaluate one link.
struct Scenario {
  Carrier carrier = Carrier::from_frequency(29e9);
  ArrayConfig tx = ArrayConfig::ula(1, Carrier::from_frequency(29e9).half_wavelength());
  ArrayConfig rx = ArrayConfig::ula(1, Carrier::from_frequency(29e9).half_wavelength());
  LinkGeometry link = LinkGeometry(1.0);
  DftCodebook tx_codebook = DftCodebook::uniform_sine(1);
  DftCodebook rx_codebook = DftCodebook::uniform_sine(1);
  int phase_bits = 0;
};

/// Key-value scenario file (INI syntax, '#' or ';' comments). Angles are in
/// degrees in the file and radians once loaded.
///
///   frequency_hz = 29e9          (or wavelength_m)
///   range_m = 2.65
///   focus_angle_deg = 0
///   [tx]                         ([rx] takes the same keys)
///   elements = 256
///   spacing_m = 0.00517          (or spacing_wavelengths = 0.5; default 0.5)
///   orientation_deg = 0
///   aperture_m = 0.0275          (optional nominal aperture)
///   subarrays = 4@-0.13625, 4@0, 4@0.13625   (size@centre_offset_m)
///   [codebook]
///   angles_deg = -40:10:40       (start:step:stop or a comma list)
///   phase_bits = 2
///
/// Without [rx] the receiver is a single element; without [codebook] each
/// side uses the uniform-sine grid of its own size.
Scenario parse_scenario(std::istream& in);
Scenario load_scenario(const std::string& path);

/// "start:step:stop" (inclusive) or "a, b, c".
std::vector<double> parse_number_list(const std::string& text);

/// Built-in testbed: 29 GHz, 4-element transmitter (2.75 cm), receiver made of
/// three 4-element subarrays spanning 30 cm, -40:10:40 degree codebook with
/// 2-bit phase shifters. `range_m` sets the link distance.
Scenario testbed_scenario(double range_m = 1.0);

}  // namespace nfedof
