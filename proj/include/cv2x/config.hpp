#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cv2x/channel.hpp"
#include "cv2x/scenario.hpp"
#include "cv2x/traffic_load.hpp"

namespace cv2x {

/// Where an L2S table comes from: a file, or the synthetic generator.
struct TableSource {
  bool synthetic = true;
  std::filesystem::path path;
};

/// Parameters for synthetic L2S tables. At speed v (km/h):
///   penalty  = channel_penalty_db + speed_penalty_db_per_100kmh * v / 100
///   L2S-1 gain = rx_diversity_gain_db
///   L2S-2 gain = rx_diversity_gain_db + retx_gain_db + retx_gain_db_per_100kmh * v / 100
struct SyntheticTableConfig {
  double channel_penalty_db = 0.0;
  double speed_penalty_db_per_100kmh = 1.0;
  double rx_diversity_gain_db = 3.0;
  double retx_gain_db = 5.0;
  double retx_gain_db_per_100kmh = 0.5;
  double slope = 5.0;
  double snr_min_db = -20.0;
  double snr_max_db = 40.0;
  double snr_step_db = 0.25;

  double penalty_db(double speed_kmh) const;
  double gain_db(double speed_kmh, bool retx) const;
};

struct SweepSpec {
  std::vector<double> ivd_m{3, 5, 10, 20, 40, 50, 80, 100};
  std::vector<double> message_rate_hz{10};
  std::vector<double> speed_kmh{100};
  std::vector<bool> retx{false, true};
};

struct RootConfig {
  ScenarioConfig scenario;
  TrafficConfig traffic;
  LinkBudget link_budget;
  int iterations = 1000;
  std::uint64_t seed = 1;
  SweepSpec sweep;
  // Keyed by (speed_kmh, retx). Missing entries resolve to synthetic.
  std::map<std::pair<double, bool>, TableSource> tables;
  std::optional<std::filesystem::path> mcs_table;  // nullopt: built-in ladder
  SyntheticTableConfig synthetic;
  std::filesystem::path output_dir = "out";

  TableSource table_source(double speed_kmh, bool retx) const;

  /// Throws std::invalid_argument with a field path.
  void validate() const;

  /// Deterministic key=value dump of every resolved setting except the
  /// output directory.
  std::string canonical() const;

  /// SHA-256 hex digest of canonical().
  std::string fingerprint() const;
};

/// INI-style text: [section] headers, key = value lines, '#'/';'
/// comments. Relative table paths resolve against `base_dir`.
RootConfig parse_config(std::istream& in, const std::filesystem::path& base_dir = ".",
                        const std::string& source = "<stream>");
RootConfig load_config(const std::filesystem::path& path);

}  // namespace cv2x
