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

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "nfedof/array_geometry.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

enum class PhaseModel { exact, fresnel };
enum class AmplitudeModel { unit_modulus, free_space_pathloss };

/// LoS channel between two arrays. Stored num_rx x num_tx: column m is the
/// response of every receive element to transmit element m.
struct ChannelMatrix {
  Eigen::MatrixXcd entries;
  PhaseModel phase_model = PhaseModel::exact;
  AmplitudeModel amplitude_model = AmplitudeModel::unit_modulus;
  double wavelength_m = 0.0;

  int num_rx() const { return static_cast<int>(entries.rows()); }
  int num_tx() const { return static_cast<int>(entries.cols()); }
};

/// Entry (n, m) = a(r_mn) * exp(-j 2pi/lambda (r_mn - r)), where a is 1 or
/// lambda / (4 pi r_mn). Throws std::invalid_argument when the arrays
/// touch or cross.
ChannelMatrix build_channel(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                            const Carrier& carrier, PhaseModel phase = PhaseModel::exact,
                            AmplitudeModel amplitude = AmplitudeModel::unit_modulus);

enum class SteeringKind { near_field, far_field };

struct SteeringVector {
  Eigen::VectorXcd coefficients;
  SteeringKind kind = SteeringKind::far_field;
  double angle_rad = 0.0;
  double range_m = 0.0;  // +inf for far-field vectors
  bool normalized = true;
  double spacing_m = 0.0;
  double wavelength_m = 0.0;
  bool uniform = true;  // false for subarray layouts

  int size() const { return static_cast<int>(coefficients.size()); }
};

/// Fresnel-approximated near-field response focused at (theta, r):
/// coefficient k = exp(-j 2pi/lambda (x_k sin(theta) - x_k^2 cos^2(theta) / (2r))),
/// scaled by 1/sqrt(M) when normalized. x_k is the centred element offset.
SteeringVector nf_response(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                           bool normalized = true);

/// Planar-wavefront steering vector; nf_response without the quadratic term.
SteeringVector ff_steering(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, bool normalized = true);

/// Real and imaginary parts as two CSV files, one row per receive element.
void write_channel_csv(const ChannelMatrix& h, const std::string& real_path, const std::string& imag_path);

/// Single JSON object: {"rows", "cols", "phase_model", "amplitude_model",
/// "wavelength_m", "real": [[...]], "imag": [[...]]}.
std::string channel_to_json(const ChannelMatrix& h);

}  // namespace nfedof
