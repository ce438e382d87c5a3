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

#include "nfedof/array_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nfedof {

namespace {

void check_spacing(double spacing_m) {
  if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
    throw std::invalid_argument("element spacing must be positive and finite");
}

void check_angle(double angle_rad, const char* what) {
  if (!std::isfinite(angle_rad) || std::abs(angle_rad) >= std::numbers::pi / 2)
    throw std::invalid_argument(std::string(what) + " must lie strictly inside (-90, 90) degrees");
}

double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

bool on_segment(Point2 p, Point2 a, Point2 b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const double d1 = cross(q1, q2, p1);
  const double d2 = cross(q1, q2, p2);
  const double d3 = cross(p1, p2, q1);
  const double d4 = cross(p1, p2, q2);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(p1, q1, q2)) return true;
  if (d2 == 0 && on_segment(p2, q1, q2)) return true;
  if (d3 == 0 && on_segment(q1, p1, p2)) return true;
  if (d4 == 0 && on_segment(q2, p1, p2)) return true;
  return false;
}

void check_index(const ArrayConfig& cfg, int k, const char* side) {
  if (k < 0 || k >= cfg.num_elements())
    throw std::out_of_range(std::string(side) + " element index " + std::to_string(k) + " out of range [0, " +
                            std::to_string(cfg.num_elements()) + ")");
}

}  // namespace

ArrayConfig ArrayConfig::ula(int num_elements, double spacing_m, double orientation_rad) {
  if (num_elements < 1) throw std::invalid_argument("array needs at least one element");
  check_spacing(spacing_m);
  check_angle(orientation_rad, "array orientation");
  ArrayConfig cfg;
  cfg.num_elements_ = num_elements;
  cfg.spacing_m_ = spacing_m;
  cfg.orientation_rad_ = orientation_rad;
  cfg.build_offsets();
  return cfg;
}

ArrayConfig ArrayConfig::with_subarrays(std::vector<Subarray> layout, double spacing_m, double orientation_rad) {
  if (layout.empty()) throw std::invalid_argument("subarray layout is empty");
  check_spacing(spacing_m);
  check_angle(orientation_rad, "array orientation");
  int total = 0;
  for (std::size_t i = 0; i < layout.size(); ++i) {
    if (layout[i].size < 1) throw std::invalid_argument("subarray size must be at least 1");
    if (!std::isfinite(layout[i].center_offset_m)) throw std::invalid_argument("subarray offset must be finite");
    if (i > 0 && !(layout[i].center_offset_m > layout[i - 1].center_offset_m))
      throw std::invalid_argument("subarray centre offsets must be strictly increasing");
    total += layout[i].size;
  }
  ArrayConfig cfg;
  cfg.num_elements_ = total;
  cfg.spacing_m_ = spacing_m;
  cfg.orientation_rad_ = orientation_rad;
  cfg.layout_ = std::move(layout);
  cfg.build_offsets();
  return cfg;
}

ArrayConfig ArrayConfig::with_nominal_aperture(double aperture_m) const {
  if (!(aperture_m > 0.0) || !std::isfinite(aperture_m)) throw std::invalid_argument("aperture must be positive");
  ArrayConfig out = *this;
  out.nominal_aperture_m_ = aperture_m;
  return out;
}

ArrayConfig ArrayConfig::with_orientation(double orientation_rad) const {
  check_angle(orientation_rad, "array orientation");
  ArrayConfig out = *this;
  out.orientation_rad_ = orientation_rad;
  return out;
}

double ArrayConfig::aperture() const {
  if (nominal_aperture_m_) return *nominal_aperture_m_;
  if (layout_.empty()) return num_elements_ * spacing_m_;
  const auto& first = layout_.front();
  const auto& last = layout_.back();
  return (last.center_offset_m + 0.5 * last.size * spacing_m_) - (first.center_offset_m - 0.5 * first.size * spacing_m_);
}

double ArrayConfig::axis_offset(int k) const {
  check_index(*this, k, "array");
  return offsets_[static_cast<std::size_t>(k)];
}

void ArrayConfig::build_offsets() {
  offsets_.clear();
  offsets_.reserve(static_cast<std::size_t>(num_elements_));
  auto append_group = [&](int size, double center) {
    const double mid = 0.5 * (size - 1);
    for (int k = 0; k < size; ++k) offsets_.push_back(center + (k - mid) * spacing_m_);
  };
  if (layout_.empty()) {
    append_group(num_elements_, 0.0);
  } else {
    for (const auto& group : layout_) append_group(group.size, group.center_offset_m);
  }
}

LinkGeometry::LinkGeometry(double range_m, double tx_orientation_rad, double rx_orientation_rad,
                           double focus_angle_rad)
    : range_m_(range_m),
      tx_orientation_rad_(tx_orientation_rad),
      rx_orientation_rad_(rx_orientation_rad),
      focus_angle_rad_(focus_angle_rad) {
  if (!(range_m > 0.0) || std::isnan(range_m)) throw std::invalid_argument("link range must be positive");
  check_angle(tx_orientation_rad, "transmit orientation");
  check_angle(rx_orientation_rad, "receive orientation");
  check_angle(focus_angle_rad, "focus angle");
}

LinkGeometry LinkGeometry::with_range(double range_m) const {
  return LinkGeometry(range_m, tx_orientation_rad_, rx_orientation_rad_, focus_angle_rad_);
}

std::vector<Point2> element_positions(const ArrayConfig& cfg) {
  const double c = std::cos(cfg.orientation());
  const double s = std::sin(cfg.orientation());
  std::vector<Point2> out;
  out.reserve(cfg.axis_offsets().size());
  for (double x : cfg.axis_offsets()) out.push_back({x * c, x * s});
  return out;
}

double pairwise_distance_exact(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx, int m, int n) {
  check_index(tx, m, "transmit");
  check_index(rx, n, "receive");
  const double xm = tx.axis_offset(m);
  const double xn = rx.axis_offset(n);
  const double along = geom.range() + xm * std::sin(geom.tx_orientation()) - xn * std::sin(geom.rx_orientation());
  const double across = xm * std::cos(geom.tx_orientation()) - xn * std::cos(geom.rx_orientation());
  return std::hypot(along, across);
}

double pairwise_distance_fresnel(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx, int m,
                                 int n) {
  check_index(tx, m, "transmit");
  check_index(rx, n, "receive");
  const double xm = tx.axis_offset(m);
  const double xn = rx.axis_offset(n);
  const double across = xm * std::cos(geom.tx_orientation()) - xn * std::cos(geom.rx_orientation());
  return geom.range() + xm * std::sin(geom.tx_orientation()) - xn * std::sin(geom.rx_orientation()) +
         across * across / (2.0 * geom.range());
}

bool arrays_intersect(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx) {
  auto endpoints = [](const ArrayConfig& cfg, double orientation, double y0) {
    const auto [lo, hi] = std::minmax_element(cfg.axis_offsets().begin(), cfg.axis_offsets().end());
    const double c = std::cos(orientation);
    const double s = std::sin(orientation);
    return std::pair<Point2, Point2>{{*lo * c, y0 + *lo * s}, {*hi * c, y0 + *hi * s}};
  };
  const auto [t1, t2] = endpoints(tx, geom.tx_orientation(), 0.0);
  const auto [r1, r2] = endpoints(rx, geom.rx_orientation(), -geom.range());
  return segments_touch(t1, t2, r1, r2);
}

}  // namespace nfedof
