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

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nfedof/array_geometry.hpp"
#include "nfedof/beamspace.hpp"
#include "nfedof/units.hpp"

namespace nfedof {

/// K_rx x K_tx received power (dB) of a beam-pair sweep. Row i is receive
/// codeword i, column j transmit codeword j.
struct RssiMatrix {
  Eigen::MatrixXd values_db;
  DftCodebook tx_codebook = DftCodebook::uniform_sine(1);
  DftCodebook rx_codebook = DftCodebook::uniform_sine(1);
  double range_m = 0.0;
  std::map<std::string, std::string> metadata;

  int rows() const { return static_cast<int>(values_db.rows()); }
  int cols() const { return static_cast<int>(values_db.cols()); }
};

/// Malformed RSSI file; carries the 1-based line and, when known, the
/// 1-based column of the offending field.
class RssiParseError : public std::runtime_error {
 public:
  RssiParseError(const std::string& what, int line, int column = 0)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Parsed file whose shape disagrees with its declared codebooks.
class RssiStructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Beam weights for one codeword. Every subarray applies the same
/// progressive phase -2pi/lambda * k d sin(theta), k = 0..size-1 counted from
/// the subarray's first element; with phase_bits > 0 each phase is rounded to
/// the nearest multiple of 2pi / 2^bits. Normalized to unit norm.
Eigen::VectorXcd codeword_weights(const ArrayConfig& cfg, const Carrier& carrier, double angle_rad, int phase_bits = 0);

/// Entry (i, j) = 10 log10 |w_i^H H w_j|^2 with H from the exact-phase,
/// unit-modulus channel. Powers below 1e-30 are floored to -300 dB.
RssiMatrix synth_rssi(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx, const Carrier& carrier,
                      const DftCodebook& tx_codebook, const DftCodebook& rx_codebook, int phase_bits = 0);

/// RSSI CSV:
///   # rssi_db,<K_rx>,<K_tx>,<range_m>
///   # codebook_deg,<K_rx receive angles>,<K_tx transmit angles>
///   K_rx lines of K_tx comma-separated dB values
RssiMatrix parse_rssi(std::istream& in);
RssiMatrix load_rssi(const std::string& path);
void write_rssi(std::ostream& out, const RssiMatrix& m);
void save_rssi(const std::string& path, const RssiMatrix& m);

/// Linear gains relative to the strongest beam pair. Entries below 0.5
/// (more than ~3 dB down) are replaced by `floor`.
struct NormalizedRssi {
  Eigen::MatrixXd gain;
  double floor = 0.0;
};

inline constexpr double kClipFloor = 0.5 * (1.0 - 1e-3);

NormalizedRssi normalize_clip(const RssiMatrix& m);

struct Peak {
  int row = 0;
  int col = 0;
  friend bool operator==(const Peak&, const Peak&) = default;
  friend auto operator<=>(const Peak&, const Peak&) = default;
};

struct PeakSet {
  std::vector<Peak> peaks;  // row-major order
};

PeakSet extract_peaks(const NormalizedRssi& normalized);

struct Cluster {
  std::vector<Peak> members;
  Peak centroid;
};

struct ClusterSet {
  std::vector<Cluster> clusters;
};

/// Two peaks link when they share a row with column gap <= 2, share a column
/// with row gap <= 2, or are diagonal neighbours. Clusters are the connected
/// components; centroids are coordinate means rounded half away from zero.
ClusterSet cluster_peaks(const PeakSet& peaks);

enum class EdofMethod { measured, synthetic };

struct EdofReport {
  std::optional<int> estimated_edof;  // empty when no peak survives
  int cluster_count = 0;
  double range_m = 0.0;
  EdofMethod method = EdofMethod::measured;
  ClusterSet clusters;
};

/// Orders rows and columns by codebook angle, then normalize_clip ->
/// extract_peaks -> cluster_peaks. Method is `synthetic` when the matrix
/// metadata has source=synthetic.
EdofReport estimate_edof(const RssiMatrix& m);

std::string edof_report_json(const EdofReport& report);

}  // namespace nfedof
