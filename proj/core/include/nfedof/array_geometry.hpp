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

#include <cstddef>
#include <optional>
#include <vector>

namespace nfedof {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// One group of a widely spaced subarray layout: `size` elements at the
/// array's element spacing, centred `center_offset_m` along the array axis.
struct Subarray {
  int size = 0;
  double center_offset_m = 0.0;
};

/// Uniform linear array, optionally split into widely spaced subarrays.
///
/// Elements are addressed by storage index k = 0..num_elements()-1. Geometry
/// uses centred offsets: for a plain ULA element k sits at
/// (k - (M-1)/2) * spacing along the array axis.
class ArrayConfig {
 public:
  static ArrayConfig ula(int num_elements, double spacing_m, double orientation_rad = 0.0);
  static ArrayConfig with_subarrays(std::vector<Subarray> layout, double spacing_m,
                                    double orientation_rad = 0.0);

  /// Copy carrying a nominal aperture used by the closed-form range metrics
  /// instead of the geometric one.
  ArrayConfig with_nominal_aperture(double aperture_m) const;
  ArrayConfig with_orientation(double orientation_rad) const;

  int num_elements() const { return num_elements_; }
  double spacing() const { return spacing_m_; }
  double orientation() const { return orientation_rad_; }
  bool has_subarrays() const { return !layout_.empty(); }
  const std::vector<Subarray>& subarrays() const { return layout_; }
  std::optional<double> nominal_aperture() const { return nominal_aperture_m_; }

  /// Nominal aperture if set; otherwise num_elements * spacing for a plain
  /// ULA and the outer extent of the groups for subarray layouts.
  double aperture() const;

  /// Signed position of every element along the array axis (meters).
  const std::vector<double>& axis_offsets() const { return offsets_; }
  double axis_offset(int k) const;

 private:
  ArrayConfig() = default;
  void build_offsets();

  int num_elements_ = 0;
  double spacing_m_ = 0.0;
  double orientation_rad_ = 0.0;
  std::vector<Subarray> layout_;
  std::optional<double> nominal_aperture_m_;
  std::vector<double> offsets_;
};

/// Placement of a link. Orientations are measured from broadside; the
/// transmit array is centred at the origin, the receive array at (0, -range).
class LinkGeometry {
 public:
  LinkGeometry(double range_m, double tx_orientation_rad = 0.0, double rx_orientation_rad = 0.0,
               double focus_angle_rad = 0.0);

  double range() const { return range_m_; }
  double tx_orientation() const { return tx_orientation_rad_; }
  double rx_orientation() const { return rx_orientation_rad_; }
  double focus_angle() const { return focus_angle_rad_; }

  LinkGeometry with_range(double range_m) const;

 private:
  double range_m_;
  double tx_orientation_rad_;
  double rx_orientation_rad_;
  double focus_angle_rad_;
};

/// Element positions in the array's local frame, rotated by cfg.orientation().
std::vector<Point2> element_positions(const ArrayConfig& cfg);

/// Distance between transmit element m and receive element n from the
/// square-root form. Orientations come from `geom`.
double pairwise_distance_exact(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                               int m, int n);

/// Second-order (Fresnel) expansion of the same distance:
/// r + x_m sin(phi_t) - x_n sin(phi_r) + (x_m cos(phi_t) - x_n cos(phi_r))^2 / (2r).
double pairwise_distance_fresnel(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx,
                                 int m, int n);

/// True when the two array segments, placed per `geom`, touch or cross.
bool arrays_intersect(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx);

}  // namespace nfedof
