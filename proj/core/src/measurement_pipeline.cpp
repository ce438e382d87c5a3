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

#include "nfedof/measurement_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "nfedof/format.hpp"
#include "nfedof/channel_model.hpp"

namespace nfedof {

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::string at(int line) { return "line " + std::to_string(line) + ": "; }

int parse_count(std::string_view field, int line, int column) {
  double v = 0.0;
  if (!parse_double(field, v) || v < 1 || v != std::floor(v) || v > 1e6)
    throw RssiParseError(at(line) + "expected a positive integer, got '" + std::string(field) + "'", line, column);
  return static_cast<int>(v);
}

double parse_value(std::string_view field, int line, int column) {
  double v = 0.0;
  if (!parse_double(field, v) || !std::isfinite(v))
    throw RssiParseError(at(line) + "column " + std::to_string(column) + ": invalid number '" + std::string(field) + "'",
                         line, column);
  return v;
}

// Header line "# <tag>,f1,f2,..." -> fields after the tag.
std::vector<std::string_view> header_fields(std::string_view line, std::string_view tag, int lineno) {
  line = trim(line);
  if (line.empty() || line.front() != '#')
    throw RssiParseError(at(lineno) + "expected header '# " + std::string(tag) + ",...'", lineno);
  line.remove_prefix(1);
  auto fields = split(trim(line), ',');
  if (trim(fields.front()) != tag)
    throw RssiParseError(at(lineno) + "expected header tag '" + std::string(tag) + "'", lineno, 1);
  fields.erase(fields.begin());
  return fields;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

bool linked(const Peak& a, const Peak& b) {
  const int dr = std::abs(a.row - b.row);
  const int dc = std::abs(a.col - b.col);
  return (dr == 0 && dc <= 2) || (dc == 0 && dr <= 2) || (dr <= 1 && dc <= 1);
}

std::vector<int> order_by_angle(const DftCodebook& cb) {
  std::vector<int> idx(static_cast<std::size_t>(cb.size()));
  std::iota(idx.begin(), idx.end(), 0);
  const auto& s = cb.sines();
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return s[a] < s[b]; });
  return idx;
}

const char* to_string(EdofMethod m) { return m == EdofMethod::synthetic ? "synthetic" : "measured"; }

}  // namespace

Eigen::VectorXcd codeword_weights(const ArrayConfig& cfg, const Carrier& carrier, double angle_rad, int phase_bits) {
  if (phase_bits < 0 || phase_bits > 16) throw std::invalid_argument("phase_bits must lie in [0, 16]");
  std::vector<int> group_sizes;
  if (cfg.has_subarrays()) {
    for (const auto& g : cfg.subarrays()) group_sizes.push_back(g.size);
  } else {
    group_sizes.push_back(cfg.num_elements());
  }
  const double step = phase_bits > 0 ? 2.0 * std::numbers::pi / (1 << phase_bits) : 0.0;
  const double progressive = -carrier.wavenumber() * cfg.spacing() * std::sin(angle_rad);
  Eigen::VectorXcd w(cfg.num_elements());
  int idx = 0;
  for (int size : group_sizes) {
    for (int k = 0; k < size; ++k) {
      double phase = progressive * k;
      if (step > 0.0) phase = std::round(phase / step) * step;
      w[idx++] = std::polar(1.0, phase);
    }
  }
  return w / std::sqrt(static_cast<double>(cfg.num_elements()));
}

RssiMatrix synth_rssi(const LinkGeometry& geom, const ArrayConfig& tx, const ArrayConfig& rx, const Carrier& carrier,
                      const DftCodebook& tx_codebook, const DftCodebook& rx_codebook, int phase_bits) {
  const ChannelMatrix h = build_channel(geom, tx, rx, carrier, PhaseModel::exact, AmplitudeModel::unit_modulus);
  Eigen::MatrixXcd w_tx(tx.num_elements(), tx_codebook.size());
  Eigen::MatrixXcd w_rx(rx.num_elements(), rx_codebook.size());
  for (int j = 0; j < tx_codebook.size(); ++j)
    w_tx.col(j) = codeword_weights(tx, carrier, tx_codebook.angles()[j], phase_bits);
  for (int i = 0; i < rx_codebook.size(); ++i)
    w_rx.col(i) = codeword_weights(rx, carrier, rx_codebook.angles()[i], phase_bits);
  const Eigen::MatrixXcd beam = w_rx.adjoint() * h.entries * w_tx;

  RssiMatrix out;
  out.values_db.resize(beam.rows(), beam.cols());
  for (Eigen::Index i = 0; i < beam.rows(); ++i)
    for (Eigen::Index j = 0; j < beam.cols(); ++j)
      out.values_db(i, j) = 10.0 * std::log10(std::max(std::norm(beam(i, j)), 1e-30));
  out.tx_codebook = tx_codebook;
  out.rx_codebook = rx_codebook;
  out.range_m = geom.range();
  out.metadata["source"] = "synthetic";
  out.metadata["phase_bits"] = std::to_string(phase_bits);
  return out;
}

RssiMatrix parse_rssi(std::istream& in) {
  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++lineno;
    return true;
  };

  if (!next()) throw RssiParseError("empty RSSI file", 1);
  auto head = header_fields(line, "rssi_db", lineno);
  if (head.size() != 3) throw RssiParseError(at(lineno) + "header needs K_rx, K_tx and range_m", lineno);
  const int k_rx = parse_count(head[0], lineno, 2);
  const int k_tx = parse_count(head[1], lineno, 3);
  const double range = parse_value(head[2], lineno, 4);
  if (!(range > 0.0)) throw RssiParseError(at(lineno) + "range_m must be positive", lineno, 4);

  if (!next()) throw RssiParseError("missing codebook header", lineno + 1);
  auto angles = header_fields(line, "codebook_deg", lineno);
  if (angles.size() != static_cast<std::size_t>(k_rx + k_tx))
    throw RssiStructureError(at(lineno) + "codebook header lists " + std::to_string(angles.size()) +
                             " angles, expected K_rx + K_tx = " + std::to_string(k_rx + k_tx));
  std::vector<double> rx_deg, tx_deg;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double a = parse_value(angles[i], lineno, static_cast<int>(i) + 2);
    (static_cast<int>(i) < k_rx ? rx_deg : tx_deg).push_back(a);
  }

  RssiMatrix m;
  m.range_m = range;
  try {
    m.rx_codebook = DftCodebook::from_degrees(std::move(rx_deg));
    m.tx_codebook = DftCodebook::from_degrees(std::move(tx_deg));
  } catch (const std::invalid_argument& e) {
    throw RssiParseError(at(lineno) + e.what(), lineno);
  }

  std::vector<std::vector<double>> rows;
  while (next()) {
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') continue;
    const auto fields = split(body, ',');
    const int data_row = static_cast<int>(rows.size()) + 1;
    if (fields.size() != static_cast<std::size_t>(k_tx))
      throw RssiParseError(at(lineno) + "data row " + std::to_string(data_row) + " has " +
                               std::to_string(fields.size()) + " values, expected " + std::to_string(k_tx),
                           lineno);
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t j = 0; j < fields.size(); ++j) row.push_back(parse_value(fields[j], lineno, static_cast<int>(j) + 1));
    rows.push_back(std::move(row));
  }
  if (rows.size() != static_cast<std::size_t>(k_rx))
    throw RssiStructureError("file has " + std::to_string(rows.size()) + " data rows, header declares K_rx = " +
                             std::to_string(k_rx));

  m.values_db.resize(k_rx, k_tx);
  for (int i = 0; i < k_rx; ++i)
    for (int j = 0; j < k_tx; ++j) m.values_db(i, j) = rows[i][j];
  return m;
}

RssiMatrix load_rssi(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  RssiMatrix m = parse_rssi(in);
  m.metadata["source"] = "file";
  m.metadata["path"] = path;
  return m;
}

void write_rssi(std::ostream& out, const RssiMatrix& m) {
  if (m.rows() != m.rx_codebook.size() || m.cols() != m.tx_codebook.size())
    throw RssiStructureError("RSSI matrix shape does not match its codebooks");
  out << "# rssi_db," << m.rows() << ',' << m.cols() << ',' << format_double(m.range_m) << '\n';
  out << "# codebook_deg";
  for (double a : m.rx_codebook.angles_deg()) out << ',' << format_double(a);
  for (double a : m.tx_codebook.angles_deg()) out << ',' << format_double(a);
  out << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m.values_db(i, j));
    }
    out << '\n';
  }
}

void save_rssi(const std::string& path, const RssiMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_rssi(out, m);
  if (!out) throw std::runtime_error("write failed: " + path);
}

NormalizedRssi normalize_clip(const RssiMatrix& m) {
  double peak = -std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < m.values_db.size(); ++i) {
    const double v = m.values_db.data()[i];
    if (std::isfinite(v)) peak = std::max(peak, v);
  }
  if (!std::isfinite(peak)) throw std::invalid_argument("RSSI matrix has no finite entry");

  NormalizedRssi out;
  out.floor = kClipFloor;
  out.gain.resize(m.values_db.rows(), m.values_db.cols());
  for (Eigen::Index i = 0; i < m.values_db.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.values_db.cols(); ++j) {
      const double v = m.values_db(i, j);
      const double lin = std::isfinite(v) ? std::pow(10.0, (v - peak) / 10.0) : 0.0;
      out.gain(i, j) = lin >= 0.5 ? lin : out.floor;
    }
  }
  return out;
}

PeakSet extract_peaks(const NormalizedRssi& normalized) {
  PeakSet out;
  for (Eigen::Index i = 0; i < normalized.gain.rows(); ++i)
    for (Eigen::Index j = 0; j < normalized.gain.cols(); ++j) {
      const double g = normalized.gain(i, j);
      if (g >= 0.5 && g != normalized.floor) out.peaks.push_back({static_cast<int>(i), static_cast<int>(j)});
    }
  return out;
}

ClusterSet cluster_peaks(const PeakSet& peaks) {
  std::vector<Peak> sorted = peaks.peaks;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  DisjointSets sets(sorted.size());
  for (std::size_t a = 0; a < sorted.size(); ++a)
    for (std::size_t b = a + 1; b < sorted.size(); ++b)
      if (linked(sorted[a], sorted[b])) sets.unite(static_cast<int>(a), static_cast<int>(b));

  ClusterSet out;
  std::vector<int> slot(sorted.size(), -1);
  for (std::size_t a = 0; a < sorted.size(); ++a) {
    const int root = sets.find(static_cast<int>(a));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(out.clusters.size());
      out.clusters.emplace_back();
    }
    out.clusters[slot[root]].members.push_back(sorted[a]);
  }
  for (auto& c : out.clusters) {
    double rs = 0.0, cs = 0.0;
    for (const auto& p : c.members) {
      rs += p.row;
      cs += p.col;
    }
    const double n = static_cast<double>(c.members.size());
    c.centroid = {static_cast<int>(std::round(rs / n)), static_cast<int>(std::round(cs / n))};
  }
  return out;
}

EdofReport estimate_edof(const RssiMatrix& m) {
  if (m.rows() != m.rx_codebook.size() || m.cols() != m.tx_codebook.size())
    throw RssiStructureError("RSSI matrix shape does not match its codebooks");
  const auto row_order = order_by_angle(m.rx_codebook);
  const auto col_order = order_by_angle(m.tx_codebook);
  RssiMatrix canonical = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) canonical.values_db(i, j) = m.values_db(row_order[i], col_order[j]);

  EdofReport rep;
  rep.range_m = m.range_m;
  const auto src = m.metadata.find("source");
  rep.method = src != m.metadata.end() && src->second == "synthetic" ? EdofMethod::synthetic : EdofMethod::measured;
  rep.clusters = cluster_peaks(extract_peaks(normalize_clip(canonical)));
  rep.cluster_count = static_cast<int>(rep.clusters.clusters.size());
  if (rep.cluster_count > 0) rep.estimated_edof = rep.cluster_count;
  return rep;
}

std::string edof_report_json(const EdofReport& report) {
  nlohmann::ordered_json j;
  j["range_m"] = report.range_m;
  j["method"] = to_string(report.method);
  j["estimated_edof"] = report.estimated_edof ? nlohmann::ordered_json(*report.estimated_edof) : nlohmann::ordered_json(nullptr);
  j["cluster_count"] = report.cluster_count;
  auto clusters = nlohmann::ordered_json::array();
  for (const auto& c : report.clusters.clusters) {
    nlohmann::ordered_json jc;
    jc["centroid"] = {c.centroid.row, c.centroid.col};
    auto members = nlohmann::ordered_json::array();
    for (const auto& p : c.members) members.push_back({p.row, p.col});
    jc["members"] = std::move(members);
    clusters.push_back(std::move(jc));
  }
  j["clusters"] = std::move(clusters);
  return j.dump();
}

}  // namespace nfedof
