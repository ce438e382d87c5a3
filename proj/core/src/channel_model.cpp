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

#include "nfedof/channel_model.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "nfedof/format.hpp"

namespace nfedof {

namespace {

const char* to_string(PhaseModel p) { return p == PhaseModel::exact ? "exact" : "fresnel"; }
const char* to_string(AmplitudeModel a) {
  return a == AmplitudeModel::unit_modulus ? "unit_modulus" : "free_space_pathloss";
}

SteeringVector steering(const ArrayConfig& cfg, const Carrier& carrier, double theta, double range, bool normalized) {
  if (!std::isfinite(theta)) throw std::invalid_argument("steering angle must be finite");
  if (!(range > 0.0)) throw std::invalid_argument("focus range must be positive");
  const double k0 = carrier.wavenumber();
  const double sin_t = std::sin(theta);
  const double cos2_t = std::cos(theta) * std::cos(theta);
  const double scale = normalized ? 1.0 / std::sqrt(static_cast<double>(cfg.num_elements())) : 1.0;
  const bool far = std::isinf(range);

  SteeringVector v;
  v.coefficients.resize(cfg.num_elements());
  for (int k = 0; k < cfg.num_elements(); ++k) {
    const double x = cfg.axis_offset(k);
    double path = x * sin_t;
    if (!far) path -= x * x * cos2_t / (2.0 * range);
    v.coefficients[k] = scale * std::polar(1.0, -k0 * path);
  }
  v.kind = far ? SteeringKind::far_field : SteeringKind::near_field;
  v.angle_rad = theta;
  v.range_m = range;
  v.normalized = normalized;
  v.spacing_m = cfg.spacing();
  v.wavelength_m = carrier.wavelength();
  v.uniform = !cfg.has_subarrays() || cfg.subarrays().size() == 1;
  return v;
}

}  // namespace

ChannelMatrix build_channel(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                            const Carrier& carrier, PhaseModel phase, AmplitudeModel amplitude) {
  if (!std::isfinite(geom.range())) throw std::invalid_argument("channel range must be finite");
  if (arrays_intersect(geom, tx, rx))
    throw std::invalid_argument("transmit and receive arrays intersect at range " + format_double(geom.range()) +
                                " m");
  const double k0 = carrier.wavenumber();
  const double lambda = carrier.wavelength();

  ChannelMatrix h;
  h.phase_model = phase;
  h.amplitude_model = amplitude;
  h.wavelength_m = lambda;
  h.entries.resize(rx.num_elements(), tx.num_elements());
  for (int m = 0; m < tx.num_elements(); ++m) {
    for (int n = 0; n < rx.num_elements(); ++n) {
      const double exact = pairwise_distance_exact(geom, tx, rx, m, n);
      const double r_mn = phase == PhaseModel::exact ? exact : pairwise_distance_fresnel(geom, tx, rx, m, n);
      const double a = amplitude == AmplitudeModel::unit_modulus ? 1.0 : lambda / (4.0 * std::numbers::pi * exact);
      h.entries(n, m) = std::polar(a, -k0 * (r_mn - geom.range()));
    }
  }
  return h;
}

SteeringVector nf_response(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, double range_m,
                           bool normalized) {
  if (std::isinf(range_m)) throw std::invalid_argument("near-field response needs a finite range");
  return steering(cfg, carrier, theta_rad, range_m, normalized);
}

SteeringVector ff_steering(const ArrayConfig& cfg, const Carrier& carrier, double theta_rad, bool normalized) {
  return steering(cfg, carrier, theta_rad, std::numeric_limits<double>::infinity(), normalized);
}

void write_channel_csv(const ChannelMatrix& h, const std::string& real_path, const std::string& imag_path) {
  auto dump = [&](const std::string& path, bool imag) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (Eigen::Index n = 0; n < h.entries.rows(); ++n) {
      for (Eigen::Index m = 0; m < h.entries.cols(); ++m) {
        if (m) out << ',';
        out << format_double(imag ? h.entries(n, m).imag() : h.entries(n, m).real());
      }
      out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
  };
  dump(real_path, false);
  dump(imag_path, true);
}

std::string channel_to_json(const ChannelMatrix& h) {
  nlohmann::ordered_json j;
  j["rows"] = h.num_rx();
  j["cols"] = h.num_tx();
  j["phase_model"] = to_string(h.phase_model);
  j["amplitude_model"] = to_string(h.amplitude_model);
  j["wavelength_m"] = h.wavelength_m;
  auto re = nlohmann::ordered_json::array();
  auto im = nlohmann::ordered_json::array();
  for (Eigen::Index n = 0; n < h.entries.rows(); ++n) {
    auto rrow = nlohmann::ordered_json::array();
    auto irow = nlohmann::ordered_json::array();
    for (Eigen::Index m = 0; m < h.entries.cols(); ++m) {
      rrow.push_back(h.entries(n, m).real());
      irow.push_back(h.entries(n, m).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  j["real"] = std::move(re);
  j["imag"] = std::move(im);
  return j.dump();
}

}  // namespace nfedof
