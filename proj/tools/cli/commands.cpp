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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "nfedof/beamspace.hpp"
#include "nfedof/channel_model.hpp"
#include "nfedof/format.hpp"
#include "nfedof/measurement_pipeline.hpp"
#include "nfedof/range_metrics.hpp"
#include "nfedof/scenario.hpp"
#include "nfedof/spectral_analysis.hpp"

namespace nfedof::cli {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

// Raised for failures that should map to kDataError.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GlobalOptions {
  std::string config;
  std::string format = "csv";
  std::string out_dir;
};

struct OutputFile {
  std::string name;
  std::string content;
};

Scenario ula_scenario() {
  Scenario s;
  s.tx = ArrayConfig::ula(256, s.carrier.half_wavelength());
  s.tx_codebook = DftCodebook::uniform_sine(256);
  s.link = LinkGeometry(2 * s.tx.aperture());
  return s;
}

Scenario scenario_for(const GlobalOptions& g, Scenario fallback) {
  return g.config.empty() ? std::move(fallback) : load_scenario(g.config);
}

double rayleigh_of(const Scenario& s) { return 2 * s.tx.aperture() * s.tx.aperture() / s.carrier.wavelength(); }

std::vector<double> parse_ranges(const std::string& text, const Scenario& s) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_range_token(item, s.tx.aperture(), rayleigh_of(s)));
  if (out.empty()) throw ConfigError("empty range list");
  return out;
}

std::vector<double> parse_angles(const std::string& text) {
  auto deg = parse_number_list(text);
  for (double a : deg)
    if (!(std::abs(a) < 90.0)) throw ConfigError("angle " + format_double(a) + " outside (-90, 90) degrees");
  return deg;
}

// Everything is rendered before the first byte hits the disk; each file goes
// through a temporary name so a failure leaves no partial output behind.
void emit(const GlobalOptions& g, const std::vector<OutputFile>& files, std::ostream& out) {
  if (g.out_dir.empty()) {
    for (const auto& f : files) out << f.content;
    return;
  }
  std::vector<fs::path> done;
  try {
    fs::create_directories(g.out_dir);
    for (const auto& f : files) {
      const fs::path final_path = fs::path(g.out_dir) / f.name;
      const fs::path tmp = final_path.parent_path() / ("." + final_path.filename().string() + ".tmp");
      fs::create_directories(final_path.parent_path());
      {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        os << f.content;
        os.close();
        if (!os) {
          std::error_code ec;
          fs::remove(tmp, ec);
          throw DataError("cannot write " + final_path.string());
        }
      }
      fs::rename(tmp, final_path);
      done.push_back(final_path);
    }
  } catch (const fs::filesystem_error& e) {
    for (const auto& p : done) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw DataError(e.what());
  } catch (...) {
    for (const auto& p : done) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    throw;
  }
  for (const auto& f : files) out << "wrote " << (fs::path(g.out_dir) / f.name).string() << '\n';
}

std::string range_tag(double r) { return format_double(r); }

// ---- beamspace --------------------------------------------------------------

struct BeamspaceArgs {
  std::optional<double> theta_deg;
  std::string ranges;
  std::string evaluator = "direct";
};

std::vector<OutputFile> cmd_beamspace(const GlobalOptions& g, const BeamspaceArgs& a) {
  const Scenario s = scenario_for(g, ula_scenario());
  const double theta = a.theta_deg ? deg_to_rad(*a.theta_deg) : s.link.focus_angle();
  if (!(std::abs(theta) < std::numbers::pi / 2)) throw ConfigError("--theta-deg must lie inside (-90, 90)");
  const auto ranges = a.ranges.empty() ? std::vector<double>{s.link.range()} : parse_ranges(a.ranges, s);

  std::vector<GainProfile> profiles;
  for (double r : ranges) {
    if (a.evaluator == "fft")
      profiles.push_back(fft_spectrum(nf_response(s.tx, s.carrier, theta, r)));
    else
      profiles.push_back(gain_profile(s.tx, s.carrier, theta, r, s.tx_codebook,
                                      a.evaluator == "fresnel" ? GainEvaluator::fresnel : GainEvaluator::direct));
  }

  std::vector<OutputFile> files;
  const bool json = g.format == "json";
  if (g.out_dir.empty() && json) {
    std::string all = "[";
    for (std::size_t i = 0; i < profiles.size(); ++i) all += (i ? "," : "") + gain_profile_json(profiles[i]);
    files.push_back({"", all + "]\n"});
    return files;
  }
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const std::string name = "beamspace_" + std::to_string(i) + "_r" + range_tag(ranges[i]) + (json ? ".json" : ".csv");
    std::string body = json ? gain_profile_json(profiles[i]) + "\n" : gain_profile_csv(profiles[i]);
    if (g.out_dir.empty()) body = "# range_m=" + format_double(ranges[i]) + "\n" + body;
    files.push_back({name, std::move(body)});
  }
  return files;
}

// ---- edof-table ---------------------------------------------------------------

struct TableArgs {
  std::string ranges;
  std::string angles = "0:10:60";
  std::string evaluator = "edof2_direct";
};

std::vector<OutputFile> cmd_edof_table(const GlobalOptions& g, const TableArgs& a) {
  const Scenario s = scenario_for(g, ula_scenario());
  const auto ranges = parse_ranges(a.ranges.empty() ? "2Dt,4Dt,8Dt,16Dt,32Dt,64Dt,0.5RD,RD" : a.ranges, s);
  const auto angles = parse_angles(a.angles);

  std::vector<std::vector<double>> table(ranges.size(), std::vector<double>(angles.size()));
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    for (std::size_t j = 0; j < angles.size(); ++j) {
      const double th = deg_to_rad(angles[j]);
      const double r = ranges[i];
      double v = 0.0;
      if (a.evaluator == "edof2_direct" || a.evaluator == "edof2_fresnel") {
        v = edof2(s.tx, s.carrier, th, r, s.tx_codebook,
                  a.evaluator == "edof2_direct" ? GainEvaluator::direct : GainEvaluator::fresnel);
      } else {
        const LinkGeometry link(r, th, s.link.rx_orientation());
        if (a.evaluator == "edof1")
          v = edof1(ApertureLink::from(s.tx, s.rx, link), s.carrier, r);
        else
          v = spectral_edof(eigen_spectrum(build_channel(link, s.tx, s.rx, s.carrier)));
      }
      table[i][j] = v;
    }
  }

  std::string body;
  if (g.format == "json") {
    ojson j;
    j["evaluator"] = a.evaluator;
    j["angles_deg"] = angles;
    j["ranges_m"] = ranges;
    j["edof"] = table;
    body = j.dump(2) + "\n";
  } else {
    body = "range_m";
    for (double deg : angles) body += "," + format_double(deg);
    body += "\n";
    for (std::size_t i = 0; i < ranges.size(); ++i) {
      body += format_double(ranges[i]);
      for (double v : table[i]) body += "," + format_double(v);
      body += "\n";
    }
  }
  return {{g.format == "json" ? "edof_table.json" : "edof_table.csv", body}};
}

// ---- metrics ----------------------------------------------------------------

struct MetricsArgs {
  std::optional<double> theta_deg;
  std::string range;
  std::optional<int> edof2;
};

std::vector<OutputFile> cmd_metrics(const GlobalOptions& g, const MetricsArgs& a) {
  const Scenario s = scenario_for(g, ula_scenario());
  const double theta = a.theta_deg ? deg_to_rad(*a.theta_deg) : s.link.focus_angle();
  if (!(std::abs(theta) < std::numbers::pi / 2)) throw ConfigError("--theta-deg must lie inside (-90, 90)");
  double r = s.link.range();
  if (!a.range.empty()) r = parse_range_token(a.range, s.tx.aperture(), rayleigh_of(s));
  int e2 = 1;
  if (a.edof2) {
    if (*a.edof2 < 1) throw ConfigError("--edof2 must be at least 1");
    e2 = *a.edof2;
  } else {
    try {
      e2 = edof2(s.tx, s.carrier, theta, r, s.tx_codebook);
    } catch (const std::domain_error& e) {
      throw ConfigError(std::string(e.what()) + "; pass --edof2 explicitly");
    }
  }
  const auto rep = range_metrics(ApertureLink::from(s.tx, s.rx, s.link), s.carrier, r, theta, e2);
  if (g.format == "json") return {{"metrics.json", range_metrics_json(rep) + "\n"}};
  return {{"metrics.txt", range_metrics_text(rep)}};
}

// ---- experiment ---------------------------------------------------------------

struct ExperimentArgs {
  std::string ranges;
  std::string from_files;
  bool save_rssi = false;
};

struct ExperimentRow {
  EdofReport report;
  double edof1 = 0.0;
  int edof2_discrete = 1;
  int spectral = 1;
  std::string source;
};

ExperimentRow theory_row(const Scenario& s, EdofReport report, std::string source) {
  ExperimentRow row;
  const double r = report.range_m;
  const LinkGeometry link = s.link.with_range(r);
  row.edof1 = edof1(ApertureLink::from(s.tx, s.rx, link), s.carrier, r);
  const int cap = std::min(s.tx.num_elements(), s.rx.num_elements());
  row.edof2_discrete = std::clamp(static_cast<int>(std::floor(row.edof1 + 0.5)), 1, cap);
  row.spectral = spectral_edof(eigen_spectrum(build_channel(link, s.tx, s.rx, s.carrier)));
  row.report = std::move(report);
  row.source = std::move(source);
  return row;
}

std::vector<OutputFile> cmd_experiment(const GlobalOptions& g, const ExperimentArgs& a, std::ostream& err,
                                       bool& had_data_error) {
  if (a.save_rssi && g.out_dir.empty()) throw ConfigError("--save-rssi needs --out");
  const Scenario s = scenario_for(g, testbed_scenario());
  std::vector<ExperimentRow> rows;
  std::vector<OutputFile> files;

  if (!a.from_files.empty()) {
    if (!a.ranges.empty()) throw ConfigError("--range and --from-files are mutually exclusive");
    if (!fs::is_directory(a.from_files)) throw DataError("not a directory: " + a.from_files);
    std::vector<fs::path> inputs;
    for (const auto& entry : fs::directory_iterator(a.from_files))
      if (entry.is_regular_file() && entry.path().extension() == ".csv") inputs.push_back(entry.path());
    std::sort(inputs.begin(), inputs.end());
    if (inputs.empty()) throw DataError("no inputs: no .csv files in " + a.from_files);
    for (const auto& p : inputs) {
      try {
        rows.push_back(theory_row(s, estimate_edof(load_rssi(p.string())), p.filename().string()));
      } catch (const std::exception& e) {
        err << p.string() << ": " << e.what() << '\n';
        had_data_error = true;
      }
    }
  } else {
    const auto ranges = parse_ranges(a.ranges.empty() ? "0.15,0.25,0.35,0.55,1,2" : a.ranges, s);
    for (double r : ranges) {
      auto m = synth_rssi(s.link.with_range(r), s.tx, s.rx, s.carrier, s.tx_codebook, s.rx_codebook, s.phase_bits);
      const std::string name = "rssi/rssi_r" + range_tag(r) + ".csv";
      if (a.save_rssi) {
        std::ostringstream os;
        write_rssi(os, m);
        files.push_back({name, os.str()});
      }
      rows.push_back(theory_row(s, estimate_edof(m), "synthetic"));
    }
  }

  std::string table;
  if (g.format == "json") {
    auto arr = ojson::array();
    for (const auto& r : rows) {
      ojson j;
      j["source"] = r.source;
      j["range_m"] = r.report.range_m;
      j["estimated_edof"] = r.report.estimated_edof ? ojson(*r.report.estimated_edof) : ojson(nullptr);
      j["edof1"] = r.edof1;
      j["edof2_discrete"] = r.edof2_discrete;
      j["spectral_edof"] = r.spectral;
      arr.push_back(std::move(j));
    }
    table = arr.dump(2) + "\n";
  } else {
    table = "source,range_m,estimated_edof,edof1,edof2_discrete,spectral_edof\n";
    for (const auto& r : rows) {
      table += r.source + "," + format_double(r.report.range_m) + "," +
               (r.report.estimated_edof ? std::to_string(*r.report.estimated_edof) : std::string()) + "," +
               format_double(r.edof1) + "," + std::to_string(r.edof2_discrete) + "," + std::to_string(r.spectral) + "\n";
    }
  }
  files.push_back({g.format == "json" ? "experiment.json" : "experiment.csv", table});
  if (!g.out_dir.empty()) {
    std::string reports = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) reports += (i ? ",\n" : "\n") + edof_report_json(rows[i].report);
    files.push_back({"reports.json", reports + "\n]\n"});
  }
  return files;
}

}  // namespace

double parse_range_token(const std::string& token, double tx_aperture_m, double rayleigh_m) {
  std::string t = token;
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  double scale = 1.0;
  std::string number = t;
  auto ends_with = [&](const char* suffix) {
    const std::string sfx(suffix);
    return t.size() >= sfx.size() && t.compare(t.size() - sfx.size(), sfx.size(), sfx) == 0;
  };
  if (ends_with("RD")) {
    scale = rayleigh_m;
    number = t.substr(0, t.size() - 2);
  } else if (ends_with("Dt")) {
    scale = tx_aperture_m;
    number = t.substr(0, t.size() - 2);
  }
  double factor = 1.0;
  if (!number.empty() && !parse_double(number, factor)) throw ConfigError("bad range '" + token + "'");
  if (number.empty() && scale == 1.0) throw ConfigError("bad range '" + token + "'");
  const double r = factor * scale;
  if (!(r > 0.0) || !std::isfinite(r)) throw ConfigError("range must be positive: '" + token + "'");
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Effective degrees of freedom of near-field line-of-sight MIMO links", "nfedof"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--config", g.config, "Scenario file (INI)");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--out", g.out_dir, "Output directory; stdout when omitted");

  BeamspaceArgs bs;
  auto* beamspace = app.add_subcommand("beamspace", "Beamspace gain profile of a focused near-field beam");
  beamspace->add_option("--theta-deg", bs.theta_deg, "Focus angle in degrees");
  beamspace->add_option("--range", bs.ranges, "Comma-separated ranges: metres, <k>Dt or <k>RD");
  beamspace->add_option("--evaluator", bs.evaluator, "Gain evaluator")->check(CLI::IsMember({"direct", "fresnel", "fft"}));

  TableArgs tb;
  auto* table = app.add_subcommand("edof-table", "EDoF over a range x angle grid");
  table->add_option("--range", tb.ranges, "Comma-separated ranges: metres, <k>Dt or <k>RD");
  table->add_option("--theta-deg", tb.angles, "Angles in degrees: list or start:step:stop");
  table->add_option("--evaluator", tb.evaluator, "EDoF evaluator")
      ->check(CLI::IsMember({"edof2_direct", "edof2_fresnel", "edof1", "spectral"}));

  MetricsArgs mt;
  auto* metrics = app.add_subcommand("metrics", "Closed-form range metrics");
  metrics->add_option("--theta-deg", mt.theta_deg, "Focus angle in degrees");
  metrics->add_option("--range", mt.range, "Range: metres, <k>Dt or <k>RD");
  metrics->add_option("--edof2", mt.edof2, "Discrete EDoF used for the rescaled distance");

  ExperimentArgs ex;
  auto* experiment = app.add_subcommand("experiment", "Beam-sweep EDoF estimation against theory");
  experiment->add_option("--range", ex.ranges, "Comma-separated ranges for synthetic sweeps");
  experiment->add_option("--from-files", ex.from_files, "Directory of RSSI .csv files");
  experiment->add_flag("--save-rssi", ex.save_rssi, "Also write the synthetic RSSI matrices");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (g.format == "text" && !metrics->parsed()) throw ConfigError("--format text applies to metrics only");
    std::vector<OutputFile> files;
    bool had_data_error = false;
    if (beamspace->parsed()) files = cmd_beamspace(g, bs);
    if (table->parsed()) files = cmd_edof_table(g, tb);
    if (metrics->parsed()) files = cmd_metrics(g, mt);
    if (experiment->parsed()) files = cmd_experiment(g, ex, err, had_data_error);
    emit(g, files, out);
    return had_data_error ? kDataError : kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const RssiParseError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const RssiStructureError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace nfedof::cli
