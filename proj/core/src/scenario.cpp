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

#include "nfedof/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "nfedof/format.hpp"

namespace nfedof {

namespace {

namespace pt = boost::property_tree;

double number(const pt::ptree& node, const std::string& section, const std::string& key) {
  const std::string text = node.get_value<std::string>();
  double v = 0.0;
  if (!parse_double(text, v) || !std::isfinite(v))
    throw ConfigError((section.empty() ? "" : "[" + section + "] ") + key + ": not a number: '" + text + "'");
  return v;
}

void check_keys(const pt::ptree& node, const std::string& section, const std::set<std::string>& allowed) {
  for (const auto& [key, child] : node) {
    if (!child.empty()) continue;  // sections handled by the caller
    if (!allowed.count(key)) throw ConfigError((section.empty() ? "" : "[" + section + "] ") + "unknown key '" + key + "'");
  }
}

std::vector<Subarray> parse_subarrays(const std::string& text) {
  std::vector<Subarray> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto at = item.find('@');
    double size = 0.0, offset = 0.0;
    if (at == std::string::npos || !parse_double(item.substr(0, at), size) || !parse_double(item.substr(at + 1), offset) ||
        size < 1 || size != std::floor(size))
      throw ConfigError("subarrays: expected 'size@offset_m' entries, got '" + item + "'");
    out.push_back({static_cast<int>(size), offset});
  }
  if (out.empty()) throw ConfigError("subarrays: empty list");
  return out;
}

ArrayConfig parse_array(const pt::ptree& node, const std::string& section, const Carrier& carrier) {
  check_keys(node, section,
             {"elements", "spacing_m", "spacing_wavelengths", "orientation_deg", "aperture_m", "subarrays"});
  if (node.count("spacing_m") && node.count("spacing_wavelengths"))
    throw ConfigError("[" + section + "] give spacing_m or spacing_wavelengths, not both");
  double spacing = carrier.half_wavelength();
  if (auto s = node.get_child_optional("spacing_m")) spacing = number(*s, section, "spacing_m");
  if (auto s = node.get_child_optional("spacing_wavelengths"))
    spacing = number(*s, section, "spacing_wavelengths") * carrier.wavelength();
  double orientation = 0.0;
  if (auto o = node.get_child_optional("orientation_deg")) orientation = deg_to_rad(number(*o, section, "orientation_deg"));

  try {
    std::optional<ArrayConfig> cfg;
    if (auto sub = node.get_child_optional("subarrays")) {
      cfg = ArrayConfig::with_subarrays(parse_subarrays(sub->get_value<std::string>()), spacing, orientation);
      if (auto e = node.get_child_optional("elements")) {
        if (number(*e, section, "elements") != cfg->num_elements())
          throw ConfigError("[" + section + "] elements does not match the subarray sizes");
      }
    } else {
      auto e = node.get_child_optional("elements");
      if (!e) throw ConfigError("[" + section + "] needs 'elements' or 'subarrays'");
      const double n = number(*e, section, "elements");
      if (n < 1 || n != std::floor(n) || n > 1e7) throw ConfigError("[" + section + "] elements must be a positive integer");
      cfg = ArrayConfig::ula(static_cast<int>(n), spacing, orientation);
    }
    if (auto a = node.get_child_optional("aperture_m")) cfg = cfg->with_nominal_aperture(number(*a, section, "aperture_m"));
    return *cfg;
  } catch (const std::invalid_argument& e) {
    throw ConfigError("[" + section + "] " + e.what());
  }
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
      double v = 0.0;
      if (!parse_double(item, v)) throw ConfigError("bad range '" + text + "'");
      parts.push_back(v);
    }
    if (parts.size() != 3 || !(parts[1] != 0.0) || (parts[2] - parts[0]) / parts[1] < 0)
      throw ConfigError("range must be start:step:stop with a step towards stop: '" + text + "'");
    const long n = std::lround(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
    if (n > 1000000) throw ConfigError("range too long: '" + text + "'");
    for (long i = 0; i <= n; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[1]);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    if (!parse_double(item, v)) throw ConfigError("bad number '" + item + "' in list '" + text + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

Scenario parse_scenario(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("config line " + std::to_string(e.line()) + ": " + e.message());
  }
  check_keys(root, "", {"frequency_hz", "wavelength_m", "range_m", "focus_angle_deg"});
  for (const auto& [key, child] : root)
    if (!child.empty() && key != "tx" && key != "rx" && key != "codebook")
      throw ConfigError("unknown section [" + key + "]");

  Scenario sc;
  try {
    if (root.count("frequency_hz") && root.count("wavelength_m"))
      throw ConfigError("give frequency_hz or wavelength_m, not both");
    if (auto f = root.get_child_optional("frequency_hz")) sc.carrier = Carrier::from_frequency(number(*f, "", "frequency_hz"));
    if (auto w = root.get_child_optional("wavelength_m")) sc.carrier = Carrier::from_wavelength(number(*w, "", "wavelength_m"));

    auto tx_node = root.get_child_optional("tx");
    if (!tx_node) throw ConfigError("missing [tx] section");
    sc.tx = parse_array(*tx_node, "tx", sc.carrier);
    if (auto rx_node = root.get_child_optional("rx"))
      sc.rx = parse_array(*rx_node, "rx", sc.carrier);
    else
      sc.rx = ArrayConfig::ula(1, sc.carrier.half_wavelength());

    double range = 1.0, focus = 0.0;
    if (auto r = root.get_child_optional("range_m")) range = number(*r, "", "range_m");
    if (auto a = root.get_child_optional("focus_angle_deg")) focus = deg_to_rad(number(*a, "", "focus_angle_deg"));
    sc.link = LinkGeometry(range, sc.tx.orientation(), sc.rx.orientation(), focus);

    sc.tx_codebook = DftCodebook::uniform_sine(sc.tx.num_elements());
    sc.rx_codebook = DftCodebook::uniform_sine(sc.rx.num_elements());
    if (auto cb = root.get_child_optional("codebook")) {
      check_keys(*cb, "codebook", {"angles_deg", "tx_angles_deg", "rx_angles_deg", "phase_bits"});
      auto list = [&](const char* key) { return parse_number_list(cb->get<std::string>(key)); };
      if (cb->count("angles_deg")) {
        sc.tx_codebook = DftCodebook::from_degrees(list("angles_deg"));
        sc.rx_codebook = sc.tx_codebook;
      }
      if (cb->count("tx_angles_deg")) sc.tx_codebook = DftCodebook::from_degrees(list("tx_angles_deg"));
      if (cb->count("rx_angles_deg")) sc.rx_codebook = DftCodebook::from_degrees(list("rx_angles_deg"));
      if (auto b = cb->get_child_optional("phase_bits")) {
        const double bits = number(*b, "codebook", "phase_bits");
        if (bits < 0 || bits > 16 || bits != std::floor(bits)) throw ConfigError("[codebook] phase_bits must be 0..16");
        sc.phase_bits = static_cast<int>(bits);
      }
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  try {
    return parse_scenario(in);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Scenario testbed_scenario(double range_m) {
  Scenario s;
  const double d = s.carrier.half_wavelength();
  s.tx = ArrayConfig::ula(4, d).with_nominal_aperture(0.0275);
  s.rx = ArrayConfig::with_subarrays({{4, -0.13625}, {4, 0.0}, {4, 0.13625}}, d).with_nominal_aperture(0.30);
  s.link = LinkGeometry(range_m);
  std::vector<double> angles;
  for (int a = -40; a <= 40; a += 10) angles.push_back(a);
  s.tx_codebook = DftCodebook::from_degrees(angles);
  s.rx_codebook = DftCodebook::from_degrees(angles);
  s.phase_bits = 2;
  return s;
}

}  // namespace nfedof
