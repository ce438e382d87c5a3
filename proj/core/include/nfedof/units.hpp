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

#include <numbers>
#include <stdexcept>

namespace nfedof {

/// Speed of light in vacuum, m/s (exact by SI definition).
inline constexpr double kSpeedOfLight = 299'792'458.0;

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// Carrier wavelength. Every phase computation in the library is referenced
/// to one of these; construct from a frequency or directly from lambda.
class Carrier {
 public:
  static Carrier from_frequency(double frequency_hz) {
    if (!(frequency_hz > 0.0)) throw std::invalid_argument("carrier frequency must be positive");
    return Carrier(kSpeedOfLight / frequency_hz);
  }
  static Carrier from_wavelength(double wavelength_m) {
    if (!(wavelength_m > 0.0)) throw std::invalid_argument("wavelength must be positive");
    return Carrier(wavelength_m);
  }

  double wavelength() const { return wavelength_m_; }
  double frequency() const { return kSpeedOfLight / wavelength_m_; }
  double wavenumber() const { return 2.0 * std::numbers::pi / wavelength_m_; }
  double half_wavelength() const { return 0.5 * wavelength_m_; }

 private:
  explicit Carrier(double wavelength_m) : wavelength_m_(wavelength_m) {}
  double wavelength_m_;
};

}  // namespace nfedof
