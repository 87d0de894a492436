#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "cv2x/traffic_load.hpp"

namespace cv2x {

struct BlerPoint {
  double snr_db = 0.0;
  double bler = 1.0;

  friend bool operator==(const BlerPoint&, const BlerPoint&) = default;
};

/// Link-to-system table: one sampled SNR -> BLER curve per MCS.
struct L2sTable {
  std::string label;
  std::string channel = "EVA";
  double speed_kmh = 0.0;
  std::map<int, std::vector<BlerPoint>> curves;

  /// Each curve needs >= 2 points, strictly increasing SNR, BLER in
  /// [0, 1] and non-increasing. Throws std::invalid_argument.
  void validate() const;
};

struct BlerQuery {
  int mcs = 0;
  double sinr_db = 0.0;
};

/// Rows are `mcs,snr_db,bler`. Comment lines `# label: ...`,
/// `# channel: ...` and `# speed_kmh: ...` carry metadata; other '#'
/// lines are ignored. Errors name the source and line.
L2sTable parse_table(std::istream& in, const std::string& source = "<stream>");
L2sTable load_table(const std::filesystem::path& path);

void save_table(const L2sTable& table, std::ostream& out);
void save_table(const L2sTable& table, const std::filesystem::path& path);

/// Linear interpolation in (dB, BLER); constant extrapolation outside
/// the grid. Throws std::out_of_range for an unknown MCS.
double bler_lookup(const L2sTable& table, BlerQuery query);

struct SnrGrid {
  double min_db = -20.0;
  double max_db = 40.0;
  double step_db = 0.25;
};

inline constexpr double kSynthBlerFloor = 1e-5;
inline constexpr double kSynthDefaultSlope = 5.0;

/// 50% point of a synthetic waterfall: Shannon threshold of the MCS
/// shifted by the channel penalty and diversity gain.
double synth_snr50_db(double spectral_efficiency, double channel_penalty_db, double diversity_gain_db);

/// 0.5 * exp(-k (snr/snr50 - 1)) in linear SNR, clipped to [1e-5, 1].
double synth_bler(double snr_db, double snr50_db, double slope);

/// Synthetic stand-in for link-level curves; every MCS shares `grid`.
L2sTable synth_table(const McsTable& mcs_table, double channel_penalty_db, double diversity_gain_db,
                     std::string label, double slope = kSynthDefaultSlope, SnrGrid grid = {});

}  // namespace cv2x
