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

#include "nfedof/range_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "nfedof/format.hpp"

namespace nfedof {

namespace {

double broadside_cos(double angle, const char* what) {
  const double c = std::cos(angle);
  if (!(c > 1e-12)) throw std::domain_error(std::string(what) + " orientation is endfire; metric undefined");
  return c;
}

void require_range(double range_m) {
  if (!(range_m > 0.0)) throw std::invalid_argument("range must be positive");
}

}  // namespace

ApertureLink ApertureLink::from(const ArrayConfig& tx, const ArrayConfig& rx, const LinkGeometry& geom) {
  ApertureLink link;
  link.tx_aperture_m = tx.aperture();
  link.rx_aperture_m = rx.aperture();
  link.tx_orientation_rad = geom.tx_orientation();
  link.rx_orientation_rad = geom.rx_orientation();
  link.tx_elements = tx.num_elements();
  link.rx_elements = rx.num_elements();
  return link;
}

int ApertureLink::v_max() const { return std::max(tx_elements, rx_elements); }

double ApertureLink::aperture_product() const {
  if (!(tx_aperture_m > 0.0) || !(rx_aperture_m > 0.0)) throw std::invalid_argument("apertures must be positive");
  return rx_aperture_m * tx_aperture_m * broadside_cos(tx_orientation_rad, "transmit") *
         broadside_cos(rx_orientation_rad, "receive");
}

BeamFootprint beamwidth_and_crossrange(double tx_aperture_m, double tx_orientation_rad, const Carrier& carrier,
                                       double range_m) {
  require_range(range_m);
  if (!(tx_aperture_m > 0.0)) throw std::invalid_argument("aperture must be positive");
  BeamFootprint fp;
  fp.beamwidth_rad = carrier.wavelength() / (tx_aperture_m * broadside_cos(tx_orientation_rad, "transmit"));
  fp.cross_range_m = range_m * fp.beamwidth_rad;
  return fp;
}

double edof1(const ApertureLink& link, const Carrier& carrier, double range_m) {
  require_range(range_m);
  return link.aperture_product() / (carrier.wavelength() * range_m);
}

double emrd(const ApertureLink& link, const Carrier& carrier) {
  return link.aperture_product() / carrier.wavelength();
}

double msmd(const ApertureLink& link, const Carrier& carrier) {
  return link.aperture_product() / (carrier.wavelength() * link.v_max());
}

double msmd_half_wavelength(const ApertureLink& link) {
  if (!(link.rx_aperture_m > 0.0)) throw std::invalid_argument("apertures must be positive");
  return 0.5 * link.rx_aperture_m * broadside_cos(link.tx_orientation_rad, "transmit") *
         broadside_cos(link.rx_orientation_rad, "receive");
}

double rescaled_distance(const ApertureLink& link, const Carrier& carrier, int edof2) {
  if (edof2 < 1) throw std::invalid_argument("EDoF must be at least 1");
  return link.aperture_product() / (carrier.wavelength() * edof2);
}

RayleighLimits rayleigh_and_focus_limit(double tx_aperture_m, const Carrier& carrier, double theta_rad) {
  if (!(tx_aperture_m > 0.0)) throw std::invalid_argument("aperture must be positive");
  RayleighLimits out;
  out.rayleigh_m = 2.0 * tx_aperture_m * tx_aperture_m / carrier.wavelength();
  const double c = std::cos(theta_rad);
  out.focus_limit_m = out.rayleigh_m * c * c / 7.0;
  return out;
}

RangeMetricsReport range_metrics(const ApertureLink& link, const Carrier& carrier, double range_m,
                                 double focus_angle_rad, int edof2) {
  RangeMetricsReport rep;
  rep.wavelength_m = carrier.wavelength();
  rep.range_m = range_m;
  const auto fp = beamwidth_and_crossrange(link.tx_aperture_m, link.tx_orientation_rad, carrier, range_m);
  rep.beamwidth_rad = fp.beamwidth_rad;
  rep.cross_range_m = fp.cross_range_m;
  rep.edof1 = nfedof::edof1(link, carrier, range_m);
  const auto limits = rayleigh_and_focus_limit(link.tx_aperture_m, carrier, focus_angle_rad);
  rep.rayleigh_m = limits.rayleigh_m;
  rep.focus_limit_m = limits.focus_limit_m;
  rep.emrd_m = emrd(link, carrier);
  rep.msmd_m = msmd(link, carrier);
  rep.msmd_half_wavelength_m = msmd_half_wavelength(link);
  rep.edof2 = edof2;
  rep.rescaled_m = rescaled_distance(link, carrier, edof2);
  rep.v_max = link.v_max();
  rep.min_elements = std::min(link.tx_elements, link.rx_elements);
  return rep;
}

std::string range_metrics_json(const RangeMetricsReport& r) {
  nlohmann::ordered_json j;
  j["wavelength_m"] = r.wavelength_m;
  j["range_m"] = r.range_m;
  j["beamwidth_rad"] = r.beamwidth_rad;
  j["cross_range_m"] = r.cross_range_m;
  j["edof1"] = r.edof1;
  j["rayleigh_m"] = r.rayleigh_m;
  j["emrd_m"] = r.emrd_m;
  j["msmd_m"] = r.msmd_m;
  j["msmd_half_wavelength_m"] = r.msmd_half_wavelength_m;
  j["focus_limit_m"] = r.focus_limit_m;
  j["rescaled_m"] = r.rescaled_m;
  j["edof2"] = r.edof2;
  j["v_max"] = r.v_max;
  j["min_elements"] = r.min_elements;
  return j.dump(2);
}

std::string range_metrics_text(const RangeMetricsReport& r) {
  std::ostringstream out;
  auto row = [&](const char* name, const std::string& value) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-24s %s\n", name, value.c_str());
    out << buf;
  };
  auto num = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };
  row("wavelength_m", num(r.wavelength_m));
  row("range_m", num(r.range_m));
  row("beamwidth_rad", num(r.beamwidth_rad));
  row("cross_range_m", num(r.cross_range_m));
  row("edof1", num(r.edof1));
  row("rayleigh_m", num(r.rayleigh_m));
  row("emrd_m", num(r.emrd_m));
  row("msmd_m", num(r.msmd_m));
  row("msmd_half_wavelength_m", num(r.msmd_half_wavelength_m));
  row("focus_limit_m", num(r.focus_limit_m));
  row("rescaled_m", num(r.rescaled_m));
  row("edof2", std::to_string(r.edof2));
  row("v_max", std::to_string(r.v_max));
  row("min_elements", std::to_string(r.min_elements));
  return out.str();
}

}  // namespace nfedof
