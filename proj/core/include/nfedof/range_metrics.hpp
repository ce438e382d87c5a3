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

#include <string>

#include "nfedof/array_geometry.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

/// Apertures, element counts and orientations of a link; the inputs of
/// every closed-form range metric. Built from array configs or given
/// directly (e.g. for textbook substitutions).
struct ApertureLink {
  double tx_aperture_m = 0.0;
  double rx_aperture_m = 0.0;
  double tx_orientation_rad = 0.0;
  double rx_orientation_rad = 0.0;
  int tx_elements = 1;
  int rx_elements = 1;

  static ApertureLink from(const ArrayConfig& tx, const ArrayConfig& rx, const LinkGeometry& geom);

  /// max(M, N), the divisor of the maximum-multiplexing distance.
  int v_max() const;
  /// D_r D_t cos(phi_t) cos(phi_r); throws std::domain_error at endfire.
  double aperture_product() const;
};

struct BeamFootprint {
  double beamwidth_rad = 0.0;   // lambda / (D_t cos(phi_t))
  double cross_range_m = 0.0;   // r * beamwidth
};

BeamFootprint beamwidth_and_crossrange(double tx_aperture_m, double tx_orientation_rad, const Carrier& carrier,
                                       double range_m);

/// Continuous closed-form EDoF D_r D_t cos cos / (lambda r). Not rounded.
double edof1(const ApertureLink& link, const Carrier& carrier, double range_m);

/// Effective MIMO Rayleigh distance: range where edof1 reaches 1.
double emrd(const ApertureLink& link, const Carrier& carrier);

/// Maximum spatial multiplexing distance D_r D_t cos cos / (lambda V).
double msmd(const ApertureLink& link, const Carrier& carrier);

/// Half-wavelength, M > N specialisation: (D_r / 2) cos cos.
double msmd_half_wavelength(const ApertureLink& link);

/// D_r D_t cos cos / (lambda * edof2).
double rescaled_distance(const ApertureLink& link, const Carrier& carrier, int edof2);

struct RayleighLimits {
  double rayleigh_m = 0.0;      // 2 D_t^2 / lambda
  double focus_limit_m = 0.0;   // rayleigh * cos^2(theta) / 7
};

RayleighLimits rayleigh_and_focus_limit(double tx_aperture_m, const Carrier& carrier, double theta_rad);

struct RangeMetricsReport {
  double wavelength_m = 0.0;
  double range_m = 0.0;
  double beamwidth_rad = 0.0;
  double cross_range_m = 0.0;
  double edof1 = 0.0;
  double rayleigh_m = 0.0;
  double emrd_m = 0.0;
  double msmd_m = 0.0;
  double msmd_half_wavelength_m = 0.0;
  double focus_limit_m = 0.0;
  double rescaled_m = 0.0;
  int edof2 = 1;
  int v_max = 1;
  int min_elements = 1;
};

/// All metrics for one geometry. `edof2` feeds the rescaled distance.
RangeMetricsReport range_metrics(const ApertureLink& link, const Carrier& carrier, double range_m,
                                 double focus_angle_rad, int edof2);

std::string range_metrics_json(const RangeMetricsReport& report);
/// Two aligned columns, one metric per line.
std::string range_metrics_text(const RangeMetricsReport& report);

}  // namespace nfedof
