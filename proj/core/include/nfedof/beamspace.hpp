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
#include <vector>

#include "nfedof/array_geometry.hpp"
#include "nfedof/channel_model.hpp"
#include "nfedof/fresnel.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

/// Set of far-field beam directions. The uniform-sine grid of size M has
/// sin(theta_m) = 2m/M for centred integer m, which makes the beams of a
/// half-wavelength ULA mutually orthogonal.
class DftCodebook {
 public:
  static DftCodebook uniform_sine(int size);
  /// Arbitrary directions given in degrees; the degree values are kept
  /// verbatim for export.
  static DftCodebook from_degrees(std::vector<double> angles_deg, double oversampling = 1.0);
  static DftCodebook from_radians(const std::vector<double>& angles_rad, double oversampling = 1.0);
  /// Explicit grid given by sin(theta_m); used for non-half-wavelength FFT grids.
  static DftCodebook from_sines(std::vector<double> sines);

  int size() const { return static_cast<int>(sines_.size()); }
  const std::vector<double>& sines() const { return sines_; }
  const std::vector<double>& angles() const { return angles_rad_; }
  const std::vector<double>& angles_deg() const { return angles_deg_; }
  bool is_uniform_sine() const { return uniform_; }
  double oversampling() const { return oversampling_; }

 private:
  DftCodebook() = default;
  std::vector<double> sines_;
  std::vector<double> angles_rad_;
  std::vector<double> angles_deg_;
  bool uniform_ = false;
  double oversampling_ = 1.0;
};

/// Per-codeword correlation gains |b^H(theta, r) a(theta_m)|^2 of a
/// near-field response, with the Fresnel-argument diagnostics.
struct GainProfile {
  std::vector<double> gains;
  DftCodebook codebook = DftCodebook::uniform_sine(1);
  double focus_angle_rad = 0.0;
  double focus_range_m = 0.0;
  std::vector<double> gamma1;  // NaN where undefined (far-field input)
  double gamma2 = 0.0;

  double max_gain() const;
  double total_gain() const;
};

enum class GainEvaluator { direct, fresnel };

/// Explicit summation over the centred elements, 1/M^2 normalization.
/// Requires spacing == lambda/2 (std::domain_error otherwise). range_m may
/// be +inf for a planar wavefront.
double gain_direct(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                   double theta_m_rad);

/// Fresnel-integral closed form |(Cbar + j Sbar) / (2 gamma2)|^2 with
/// Cbar = C(g1 + g2) - C(g1 - g2). Plain half-wavelength ULAs, finite range.
double gain_fresnel(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                    double theta_m_rad);

/// sqrt(r / (d cos^2 theta)) * (sin theta_m - sin theta)
double fresnel_gamma1(const ArrayConfig& cfg, double theta_rad, double range_m, double sin_theta_m);
/// (M/2) sqrt(d cos^2 theta / r)
double fresnel_gamma2(const ArrayConfig& cfg, double theta_rad, double range_m);

GainProfile gain_profile(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                         const DftCodebook& codebook, GainEvaluator evaluator = GainEvaluator::direct);

/// Codewords whose gain is at least half of the strongest codeword's gain
/// (3 dB below the peak). Ties at exactly one half count.
int edof2(const GainProfile& profile);
int edof2(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
          const DftCodebook& codebook, GainEvaluator evaluator = GainEvaluator::direct);

/// Squared-magnitude DFT of a normalized uniform steering vector; bin m
/// (centred) maps to sin(theta_m) = m lambda / (M d), i.e. 2m/M at half
/// wavelength. Identical to the gain_direct sweep over that grid.
GainProfile fft_spectrum(const SteeringVector& v);

/// CSV with header `sin_theta_m,gain,gamma1`, one row per codeword.
std::string gain_profile_csv(const GainProfile& profile);
std::string gain_profile_json(const GainProfile& profile);

}  // namespace nfedof
