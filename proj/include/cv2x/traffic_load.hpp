#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace cv2x {

struct TrafficConfig {
  double packet_size_bytes = 256.0;
  double message_rate_hz = 10.0;
  double bandwidth_hz = 10e6;

  void validate() const;
};

struct McsEntry {
  int index = 0;
  double spectral_efficiency = 0.0;  // bits/s/Hz
};

/// MCS 0..20 with strictly increasing spectral efficiency.
class McsTable {
 public:
  static constexpr int kMaxIndex = 20;

  /// Throws std::invalid_argument when the ladder is not 0..20 or SE is
  /// not strictly increasing.
  explicit McsTable(std::vector<McsEntry> entries);

  /// LTE-derived QPSK/16QAM ladder calibrated so that the MCS choice of
  /// the highway baseline (ISD 1732 m, 6 lanes, 256 B) matches the
  /// reference load tables with and without retransmission.
  static McsTable lte_default();

  /// `index,spectral_efficiency` per line; '#' lines are comments.
  static McsTable parse(std::istream& in, const std::string& source = "<stream>");
  static McsTable load(const std::filesystem::path& path);

  const std::vector<McsEntry>& entries() const { return entries_; }
  double spectral_efficiency(int index) const;
  const McsEntry& highest() const { return entries_.back(); }

 private:
  std::vector<McsEntry> entries_;
};

struct LoadPlan {
  long ue_per_bs = 0;
  double data_volume_bps = 0.0;
  // Absent exactly when overloaded.
  std::optional<int> selected_mcs;
  // MCS actually used on air: selected_mcs, or the highest MCS under overload.
  int operating_mcs = 0;
  bool overloaded = false;
  long ue_supported = 0;
  double prr_max = 1.0;
  bool retx_enabled = false;
};

/// floor(isd / ivd * lanes).
long ue_count_per_bs(double isd_m, double ivd_m, int lanes);

/// Offered load of one cell in bits/s; doubled with retransmission.
double data_volume(const TrafficConfig& traffic, long ue_per_bs, bool retx);

/// Lowest MCS whose SE covers data_volume / bandwidth; nullopt on overload.
std::optional<int> select_mcs(const McsTable& table, double data_volume_bps, double bandwidth_hz);

struct PrrCeiling {
  long ue_supported = 0;
  double prr_max = 1.0;
};

PrrCeiling prr_max(const McsTable& table, const TrafficConfig& traffic, long ue_per_bs, bool retx);

LoadPlan plan_load(const McsTable& table, const TrafficConfig& traffic, long ue_per_bs, bool retx);

}  // namespace cv2x
