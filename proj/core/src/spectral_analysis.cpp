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

#include "nfedof/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace nfedof {

namespace {

void require_plain(const ArrayConfig& cfg, const char* side) {
  if (cfg.has_subarrays() && cfg.subarrays().size() > 1)
    throw std::invalid_argument(std::string(side) + " array must be a plain ULA for the column analysis");
}

void require_columns(const ArrayConfig& tx, int k, int l) {
  if (k < 0 || l < 0 || k >= tx.num_elements() || l >= tx.num_elements())
    throw std::out_of_range("transmit column index out of range");
  if (k == l) throw std::invalid_argument("column inner product needs two distinct columns");
}

}  // namespace

EigenSpectrum eigen_spectrum(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) throw std::invalid_argument("empty channel matrix");
  // Gramian on the smaller side: min(M,N)^3 work.
  const Eigen::MatrixXcd gram = h.rows() <= h.cols() ? Eigen::MatrixXcd(h * h.adjoint())
                                                     : Eigen::MatrixXcd(h.adjoint() * h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigen decomposition did not converge");

  EigenSpectrum out;
  out.rows = static_cast<int>(h.rows());
  out.cols = static_cast<int>(h.cols());
  out.trace = h.squaredNorm();
  const auto& ev = solver.eigenvalues();
  out.eigenvalues.reserve(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = ev.size(); i-- > 0;) out.eigenvalues.push_back(std::max(ev[i], 0.0));
  return out;
}

int spectral_edof(const EigenSpectrum& spectrum, double threshold_fraction) {
  if (spectrum.eigenvalues.empty()) throw std::invalid_argument("empty eigen spectrum");
  if (!(threshold_fraction > 0.0 && threshold_fraction <= 1.0))
    throw std::invalid_argument("threshold fraction must lie in (0, 1]");
  if (!(spectrum.eigenvalues.front() > 0.0)) return 1;  // zero channel
  const double cut = threshold_fraction * spectrum.eigenvalues.front();
  const auto count = std::count_if(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(),
                                   [cut](double mu) { return mu >= cut; });
  return std::max(1, static_cast<int>(count));
}

CapacityParams CapacityParams::from_powers(double total_power_w, double noise_power_w, int num_tx, int num_rx) {
  if (!(total_power_w > 0.0) || !(noise_power_w > 0.0)) throw std::invalid_argument("powers must be positive");
  if (num_tx < 1 || num_rx < 1) throw std::invalid_argument("antenna counts must be positive");
  return {total_power_w, noise_power_w, total_power_w * num_tx * num_rx / noise_power_w};
}

CapacityParams CapacityParams::from_composite_snr(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw std::invalid_argument("composite SNR must be positive");
  return {rho, 1.0, rho};
}

double equal_eigen_capacity(int edof, const CapacityParams& params) {
  if (edof < 1) throw std::invalid_argument("EDoF must be at least 1");
  const double k = edof;
  return k * std::log2(1.0 + params.composite_snr() / (k * k));
}

double uniform_power_capacity(std::span<const double> eigenvalues, double total_power_w, double noise_power_w) {
  if (eigenvalues.empty()) throw std::invalid_argument("no eigenchannels");
  const double per_stream = total_power_w / static_cast<double>(eigenvalues.size());
  double c = 0.0;
  for (double mu : eigenvalues) c += std::log2(1.0 + per_stream * mu / noise_power_w);
  return c;
}

std::complex<double> column_inner_product(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                                          const Carrier& carrier, int k, int l) {
  require_plain(tx, "transmit");
  require_plain(rx, "receive");
  require_columns(tx, k, l);
  const double r = geom.range();
  const double st = std::sin(geom.tx_orientation()), ct = std::cos(geom.tx_orientation());
  const double sr = std::sin(geom.rx_orientation()), cr = std::cos(geom.rx_orientation());
  auto fresnel = [&](int m, int n) {
    const double xm = m * tx.spacing();
    const double xn = n * rx.spacing();
    const double across = xm * ct - xn * cr;
    return r + xm * st - xn * sr + across * across / (2.0 * r);
  };
  const double k0 = carrier.wavenumber();
  std::complex<double> acc{0.0, 0.0};
  for (int n = 0; n < rx.num_elements(); ++n) acc += std::polar(1.0, k0 * (fresnel(k, n) - fresnel(l, n)));
  return acc;
}

std::complex<double> column_inner_product_closed_form(const LinkGeometry& geom, const ArrayConfig& tx,
                                                      const ArrayConfig& rx, const Carrier& carrier, int k, int l) {
  require_plain(tx, "transmit");
  require_plain(rx, "receive");
  require_columns(tx, k, l);
  const double r = geom.range();
  const double lambda = carrier.wavelength();
  const double dt = tx.spacing(), dr = rx.spacing();
  const double ct = std::cos(geom.tx_orientation());
  const double cr = std::cos(geom.rx_orientation());
  const int delta = k - l;
  const int n_rx = rx.num_elements();

  // n-independent part of r_kn - r_ln.
  const double common = delta * dt * std::sin(geom.tx_orientation()) +
                        (static_cast<double>(k) * k - static_cast<double>(l) * l) * dt * dt * ct * ct / (2.0 * r);
  const double u = dt * dr * cr * ct * delta / (lambda * r);
  const double pi = std::numbers::pi;

  const double den = std::sin(pi * u);
  double ratio;
  if (std::abs(den) < 1e-300) {
    // u integer: every term equals exp(-j 2 pi u n) = 1 up to the alternating sign of the kernel.
    const double cycles = std::round(u);
    ratio = (static_cast<long long>(cycles) * (n_rx - 1)) % 2 == 0 ? n_rx : -n_rx;
  } else {
    ratio = std::sin(pi * n_rx * u) / den;
  }
  return std::polar(1.0, carrier.wavenumber() * common - pi * u * (n_rx - 1)) * ratio;
}

double orthogonality_distance(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                              const Carrier& carrier) {
  return rx.num_elements() * tx.spacing() * rx.spacing() * std::cos(geom.tx_orientation()) *
         std::cos(geom.rx_orientation()) / carrier.wavelength();
}

std::string spectrum_record_json(const EigenSpectrum& spectrum, int edof, double capacity_bits) {
  nlohmann::ordered_json j;
  j["eigenvalues"] = spectrum.eigenvalues;
  j["edof"] = edof;
  j["capacity_bits"] = capacity_bits;
  return j.dump();
}

}  // namespace nfedof
