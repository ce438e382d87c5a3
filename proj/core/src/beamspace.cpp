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

#include "nfedof/beamspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "fft.hpp"
#include "nfedof/format.hpp"

namespace nfedof {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_half_wavelength(double spacing, double wavelength) {
  return std::abs(spacing - 0.5 * wavelength) <= 1e-9 * wavelength;
}

void require_half_wavelength(const ArrayConfig& cfg, const Carrier& carrier) {
  if (!is_half_wavelength(cfg.spacing(), carrier.wavelength()))
    throw std::domain_error("beamspace gain assumes half-wavelength spacing (d = " + format_double(cfg.spacing()) +
                            " m, lambda/2 = " + format_double(carrier.half_wavelength()) + " m)");
}

void require_focus(double theta, double range) {
  if (!std::isfinite(theta) || std::abs(theta) >= 0.5 * std::numbers::pi)
    throw std::invalid_argument("focus angle must lie strictly inside (-90, 90) degrees");
  if (!(range > 0.0)) throw std::invalid_argument("focus range must be positive");
}

double gamma1_raw(double spacing, double theta, double range, double sin_m) {
  const double c = std::cos(theta);
  return std::sqrt(range / (spacing * c * c)) * (sin_m - std::sin(theta));
}

double gamma2_raw(int m, double spacing, double theta, double range) {
  const double c = std::cos(theta);
  return 0.5 * m * std::sqrt(spacing * c * c / range);
}

double direct_sum(const ArrayConfig& cfg, const Carrier& carrier, double theta, double range, double sin_m) {
  const double k0 = carrier.wavenumber();
  const double sin_t = std::sin(theta);
  const double cos2 = std::cos(theta) * std::cos(theta);
  const bool far = std::isinf(range);
  std::complex<double> acc{0.0, 0.0};
  for (double x : cfg.axis_offsets()) {
    double phase = x * (sin_t - sin_m);
    if (!far) phase -= x * x * cos2 / (2.0 * range);
    acc += std::polar(1.0, k0 * phase);
  }
  const double m = cfg.num_elements();
  return std::norm(acc) / (m * m);
}

double fresnel_closed_form(int m, double spacing, double theta, double range, double sin_m) {
  const double g1 = gamma1_raw(spacing, theta, range, sin_m);
  const double g2 = gamma2_raw(m, spacing, theta, range);
  const FresnelPair hi = fresnel_cs(g1 + g2);
  const FresnelPair lo = fresnel_cs(g1 - g2);
  const std::complex<double> num(hi.c_value - lo.c_value, hi.s_value - lo.s_value);
  return std::norm(num / (2.0 * g2));
}

}  // namespace

DftCodebook DftCodebook::uniform_sine(int size) {
  if (size < 1) throw std::invalid_argument("codebook size must be at least 1");
  DftCodebook cb;
  const int first = size % 2 == 0 ? -size / 2 : -(size - 1) / 2;
  for (int i = 0; i < size; ++i) {
    const double s = 2.0 * (first + i) / size;
    cb.sines_.push_back(s);
    cb.angles_rad_.push_back(std::asin(s));
    cb.angles_deg_.push_back(rad_to_deg(std::asin(s)));
  }
  cb.uniform_ = true;
  return cb;
}

DftCodebook DftCodebook::from_degrees(std::vector<double> angles_deg, double oversampling) {
  if (angles_deg.empty()) throw std::invalid_argument("codebook needs at least one direction");
  if (!(oversampling > 0.0)) throw std::invalid_argument("oversampling must be positive");
  DftCodebook cb;
  for (double a : angles_deg) {
    if (!std::isfinite(a) || std::abs(a) > 90.0) throw std::invalid_argument("codebook angle outside [-90, 90] degrees");
    cb.angles_rad_.push_back(deg_to_rad(a));
    cb.sines_.push_back(std::sin(deg_to_rad(a)));
  }
  cb.angles_deg_ = std::move(angles_deg);
  cb.oversampling_ = oversampling;
  return cb;
}

DftCodebook DftCodebook::from_radians(const std::vector<double>& angles_rad, double oversampling) {
  std::vector<double> deg;
  deg.reserve(angles_rad.size());
  for (double a : angles_rad) deg.push_back(rad_to_deg(a));
  DftCodebook cb = from_degrees(std::move(deg), oversampling);
  cb.angles_rad_ = angles_rad;
  for (std::size_t i = 0; i < angles_rad.size(); ++i) cb.sines_[i] = std::sin(angles_rad[i]);
  return cb;
}

DftCodebook DftCodebook::from_sines(std::vector<double> sines) {
  if (sines.empty()) throw std::invalid_argument("codebook needs at least one direction");
  DftCodebook cb;
  for (double s : sines) {
    if (!(std::abs(s) <= 1.0)) throw std::invalid_argument("codebook sine outside [-1, 1]");
    cb.angles_rad_.push_back(std::asin(s));
    cb.angles_deg_.push_back(rad_to_deg(std::asin(s)));
  }
  cb.sines_ = std::move(sines);
  return cb;
}

double GainProfile::max_gain() const {
  return gains.empty() ? 0.0 : *std::max_element(gains.begin(), gains.end());
}

double GainProfile::total_gain() const { return std::accumulate(gains.begin(), gains.end(), 0.0); }

double gain_direct(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                   double theta_m_rad) {
  require_half_wavelength(cfg, carrier);
  require_focus(theta_rad, range_m);
  return direct_sum(cfg, carrier, theta_rad, range_m, std::sin(theta_m_rad));
}

double gain_fresnel(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                    double theta_m_rad) {
  require_half_wavelength(cfg, carrier);
  require_focus(theta_rad, range_m);
  if (!std::isfinite(range_m)) throw std::invalid_argument("Fresnel gain needs a finite range");
  if (cfg.has_subarrays() && cfg.subarrays().size() > 1)
    throw std::invalid_argument("Fresnel gain applies to contiguous ULAs only");
  return fresnel_closed_form(cfg.num_elements(), cfg.spacing(), theta_rad, range_m, std::sin(theta_m_rad));
}

double fresnel_gamma1(const ArrayConfig& cfg, double theta_rad, double range_m, double sin_theta_m) {
  require_focus(theta_rad, range_m);
  return gamma1_raw(cfg.spacing(), theta_rad, range_m, sin_theta_m);
}

double fresnel_gamma2(const ArrayConfig& cfg, double theta_rad, double range_m) {
  require_focus(theta_rad, range_m);
  return gamma2_raw(cfg.num_elements(), cfg.spacing(), theta_rad, range_m);
}

GainProfile gain_profile(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                         const DftCodebook& codebook, GainEvaluator evaluator) {
  require_half_wavelength(cfg, carrier);
  require_focus(theta_rad, range_m);
  if (evaluator == GainEvaluator::fresnel) {
    if (!std::isfinite(range_m)) throw std::invalid_argument("Fresnel gain needs a finite range");
    if (cfg.has_subarrays() && cfg.subarrays().size() > 1)
      throw std::invalid_argument("Fresnel gain applies to contiguous ULAs only");
  }
  GainProfile p;
  p.codebook = codebook;
  p.focus_angle_rad = theta_rad;
  p.focus_range_m = range_m;
  p.gamma2 = gamma2_raw(cfg.num_elements(), cfg.spacing(), theta_rad, range_m);
  p.gains.reserve(static_cast<std::size_t>(codebook.size()));
  p.gamma1.reserve(static_cast<std::size_t>(codebook.size()));
  for (double s : codebook.sines()) {
    p.gains.push_back(evaluator == GainEvaluator::direct
                          ? direct_sum(cfg, carrier, theta_rad, range_m, s)
                          : fresnel_closed_form(cfg.num_elements(), cfg.spacing(), theta_rad, range_m, s));
    p.gamma1.push_back(std::isfinite(range_m) ? gamma1_raw(cfg.spacing(), theta_rad, range_m, s) : kNaN);
  }
  return p;
}

int edof2(const GainProfile& profile) {
  if (profile.gains.empty()) throw std::invalid_argument("empty gain profile");
  const double cut = 0.5 * profile.max_gain();
  const auto n = std::count_if(profile.gains.begin(), profile.gains.end(), [cut](double g) { return g >= cut; });
  return std::max(1, static_cast<int>(n));
}

int edof2(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
          const DftCodebook& codebook, GainEvaluator evaluator) {
  return edof2(gain_profile(cfg, carrier, theta_rad, range_m, codebook, evaluator));
}

GainProfile fft_spectrum(const SteeringVector& v) {
  if (!v.normalized) throw std::invalid_argument("fft_spectrum expects a normalized steering vector");
  if (!v.uniform) throw std::invalid_argument("fft_spectrum expects a uniformly spaced array");
  const int m = v.size();
  if (m < 1) throw std::invalid_argument("empty steering vector");

  std::vector<std::complex<double>> y(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) y[static_cast<std::size_t>(k)] = std::conj(v.coefficients[k]);
  const auto spectrum = detail::forward_dft(std::move(y));

  const int first = m % 2 == 0 ? -m / 2 : -(m - 1) / 2;
  const bool half = is_half_wavelength(v.spacing_m, v.wavelength_m);
  std::vector<double> sines;
  GainProfile p;
  p.focus_angle_rad = v.angle_rad;
  p.focus_range_m = v.range_m;
  const bool near = std::isfinite(v.range_m);
  p.gamma2 = near ? gamma2_raw(m, v.spacing_m, v.angle_rad, v.range_m) : 0.0;
  for (int i = 0; i < m; ++i) {
    const int bin = first + i;
    const std::size_t idx = static_cast<std::size_t>(((bin % m) + m) % m);
    p.gains.push_back(std::norm(spectrum[idx]) / m);
    const double s = half ? 2.0 * bin / m : bin * v.wavelength_m / (m * v.spacing_m);
    sines.push_back(s);
    p.gamma1.push_back(near ? gamma1_raw(v.spacing_m, v.angle_rad, v.range_m, s) : kNaN);
  }
  if (half) {
    p.codebook = DftCodebook::uniform_sine(m);
  } else {
    // Bins outside the visible region (|sin| > 1) are grating directions; keep them by clamping the label.
    for (double& s : sines) s = std::clamp(s, -1.0, 1.0);
    p.codebook = DftCodebook::from_sines(std::move(sines));
  }
  return p;
}

std::string gain_profile_csv(const GainProfile& profile) {
  std::ostringstream out;
  out << "sin_theta_m,gain,gamma1\n";
  const auto& s = profile.codebook.sines();
  for (std::size_t i = 0; i < profile.gains.size(); ++i) {
    out << format_double(s[i]) << ',' << format_double(profile.gains[i]) << ','
        << format_double(i < profile.gamma1.size() ? profile.gamma1[i] : kNaN) << '\n';
  }
  return out.str();
}

std::string gain_profile_json(const GainProfile& profile) {
  nlohmann::ordered_json j;
  j["focus_angle_deg"] = rad_to_deg(profile.focus_angle_rad);
  j["focus_range_m"] = std::isfinite(profile.focus_range_m) ? nlohmann::ordered_json(profile.focus_range_m)
                                                            : nlohmann::ordered_json(nullptr);
  j["gamma2"] = profile.gamma2;
  j["edof2"] = edof2(profile);
  j["sin_theta_m"] = profile.codebook.sines();
  j["gain"] = profile.gains;
  auto g1 = nlohmann::ordered_json::array();
  for (double g : profile.gamma1) g1.push_back(std::isfinite(g) ? nlohmann::ordered_json(g) : nlohmann::ordered_json(nullptr));
  j["gamma1"] = std::move(g1);
  return j.dump();
}

}  // namespace nfedof
