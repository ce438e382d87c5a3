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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfedof/array_geometry.hpp"
#include "nfedof/channel_model.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

/// Eigenvalues of the channel Gramian, non-increasing, length min(rows, cols).
struct EigenSpectrum {
  std::vector<double> eigenvalues;
  double trace = 0.0;  // sum of |h|^2
  int rows = 0;
  int cols = 0;
};

EigenSpectrum eigen_spectrum(const Eigen::MatrixXcd& h);
inline EigenSpectrum eigen_spectrum(const ChannelMatrix& h) { return eigen_spectrum(h.entries); }

/// Number of eigenvalues >= threshold_fraction * largest; never below 1.
int spectral_edof(const EigenSpectrum& spectrum, double threshold_fraction = 0.5);

/// Power budget of the equal-eigenvalue capacity model.
class CapacityParams {
 public:
  /// rho = P M N / sigma^2.
  static CapacityParams from_powers(double total_power_w, double noise_power_w, int num_tx, int num_rx);
  /// Composite SNR only; P and sigma^2 are set so that P / sigma^2 = rho.
  static CapacityParams from_composite_snr(double rho);

  double total_power() const { return total_power_w_; }
  double noise_power() const { return noise_power_w_; }
  double composite_snr() const { return composite_snr_; }

 private:
  CapacityParams(double p, double n, double rho) : total_power_w_(p), noise_power_w_(n), composite_snr_(rho) {}
  double total_power_w_;
  double noise_power_w_;
  double composite_snr_;
};

/// EDoF * log2(1 + rho / EDoF^2), bits/s/Hz.
double equal_eigen_capacity(int edof, const CapacityParams& params);

/// sum_i log2(1 + (P/K) mu_i / sigma^2) over the K given eigenvalues, i.e.
/// uniform power over the listed eigenchannels.
double uniform_power_capacity(std::span<const double> eigenvalues, double total_power_w, double noise_power_w);

/// Inner product of transmit columns k and l over the receive array using
/// Fresnel distances, with indices 0..N-1 / 0..M-1 (not centred):
/// sum_n exp(j 2pi/lambda (r_kn - r_ln)). Plain ULAs only.
std::complex<double> column_inner_product(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                                          const Carrier& carrier, int k, int l);

/// Same quantity via the Dirichlet kernel:
/// common phase * exp(-j pi u (N-1)) * sin(pi N u) / sin(pi u),
/// u = d_t d_r cos(phi_t) cos(phi_r) (k - l) / (lambda r).
std::complex<double> column_inner_product_closed_form(const LinkGeometry& geom, const ArrayConfig& tx,
                                                      const ArrayConfig& rx, const Carrier& carrier, int k, int l);

/// Range where adjacent columns become orthogonal: N d_t d_r cos(phi_t) cos(phi_r) / lambda.
double orthogonality_distance(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                              const Carrier& carrier);

/// {"eigenvalues": [...], "edof": n, "capacity_bits": c}
std::string spectrum_record_json(const EigenSpectrum& spectrum, int edof, double capacity_bits);

}  // namespace nfedof
