#include "cv2x/traffic_load.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace cv2x {
namespace {

constexpr double kFloorSlack = 1e-9;

double retx_factor(bool retx) { return retx ? 2.0 : 1.0; }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void TrafficConfig::validate() const {
  if (!(packet_size_bytes > 0)) throw std::invalid_argument("traffic.packet_size_bytes: must be > 0");
  if (!(message_rate_hz > 0)) throw std::invalid_argument("traffic.message_rate_hz: must be > 0");
  if (!(bandwidth_hz > 0)) throw std::invalid_argument("traffic.bandwidth_hz: must be > 0");
}

McsTable::McsTable(std::vector<McsEntry> entries) : entries_(std::move(entries)) {
  if (entries_.size() != kMaxIndex + 1) {
    throw std::invalid_argument("MCS table must list indices 0.." + std::to_string(kMaxIndex));
  }
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index != static_cast<int>(i)) {
      throw std::invalid_argument("MCS table index " + std::to_string(entries_[i].index) + " out of order at row " +
                                  std::to_string(i));
    }
    if (!(entries_[i].spectral_efficiency > 0)) {
      throw std::invalid_argument("MCS " + std::to_string(i) + ": spectral efficiency must be > 0");
    }
    if (i > 0 && !(entries_[i].spectral_efficiency > entries_[i - 1].spectral_efficiency)) {
      throw std::invalid_argument("MCS " + std::to_string(i) + ": spectral efficiency not strictly increasing");
    }
  }
}

McsTable McsTable::lte_default() {
  // QPSK 0-10, 16QAM 11-20. Entries 7, 13 and 20 deviate from the usual
  // TBS-derived ladder; see the load-table unit tests for the bounds.
  return McsTable({
      {0, 0.2344},  {1, 0.3066},  {2, 0.3770},  {3, 0.4902},  {4, 0.6016},  {5, 0.7402},  {6, 0.8770},
      {7, 1.0800},  {8, 1.1758},  {9, 1.3262},  {10, 1.4766}, {11, 1.6953}, {12, 1.9141}, {13, 2.0313},
      {14, 2.1602}, {15, 2.4063}, {16, 2.5703}, {17, 2.7305}, {18, 3.0293}, {19, 3.3223}, {20, 3.6094},
  });
}

McsTable McsTable::parse(std::istream& in, const std::string& source) {
  std::vector<McsEntry> entries;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::istringstream row(t);
    std::string idx, se;
    if (!std::getline(row, idx, ',') || !std::getline(row, se)) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": expected 'index,spectral_efficiency'");
    }
    try {
      const std::string idx_text = trim(idx);
      const std::string se_text = trim(se);
      std::size_t used_idx = 0, used_se = 0;
      const int index = std::stoi(idx_text, &used_idx);
      const double value = std::stod(se_text, &used_se);
      if (used_idx != idx_text.size() || used_se != se_text.size()) throw std::invalid_argument("trailing");
      entries.push_back({index, value});
    } catch (const std::logic_error&) {
      throw std::runtime_error(source + ":" + std::to_string(line_no) + ": malformed number in '" + t + "'");
    }
  }
  try {
    return McsTable(std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
}

McsTable McsTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open MCS table " + path.string());
  return parse(in, path.string());
}

double McsTable::spectral_efficiency(int index) const {
  if (index < 0 || index > kMaxIndex) throw std::out_of_range("unknown MCS index " + std::to_string(index));
  return entries_[static_cast<std::size_t>(index)].spectral_efficiency;
}

long ue_count_per_bs(double isd_m, double ivd_m, int lanes) {
  return static_cast<long>(std::floor(isd_m / ivd_m * lanes + kFloorSlack));
}

double data_volume(const TrafficConfig& traffic, long ue_per_bs, bool retx) {
  return traffic.packet_size_bytes * 8.0 * static_cast<double>(ue_per_bs) * traffic.message_rate_hz *
         retx_factor(retx);
}

std::optional<int> select_mcs(const McsTable& table, double data_volume_bps, double bandwidth_hz) {
  const double required = data_volume_bps / bandwidth_hz;
  for (const auto& e : table.entries()) {
    if (e.spectral_efficiency >= required) return e.index;
  }
  return std::nullopt;
}

PrrCeiling prr_max(const McsTable& table, const TrafficConfig& traffic, long ue_per_bs, bool retx) {
  if (ue_per_bs < 1) throw std::invalid_argument("prr_max: ue_per_bs must be >= 1");
  const double volume = data_volume(traffic, ue_per_bs, retx);
  if (select_mcs(table, volume, traffic.bandwidth_hz)) return {ue_per_bs, 1.0};
  const double per_ue_bps = traffic.packet_size_bytes * 8.0 * traffic.message_rate_hz * retx_factor(retx);
  const double capacity_bps = traffic.bandwidth_hz * table.highest().spectral_efficiency;
  const long supported = static_cast<long>(std::floor(capacity_bps / per_ue_bps + kFloorSlack));
  return {supported, static_cast<double>(supported) / static_cast<double>(ue_per_bs)};
}

LoadPlan plan_load(const McsTable& table, const TrafficConfig& traffic, long ue_per_bs, bool retx) {
  traffic.validate();
  LoadPlan plan;
  plan.ue_per_bs = ue_per_bs;
  plan.retx_enabled = retx;
  plan.data_volume_bps = data_volume(traffic, ue_per_bs, retx);
  plan.selected_mcs = select_mcs(table, plan.data_volume_bps, traffic.bandwidth_hz);
  plan.overloaded = !plan.selected_mcs.has_value();
  plan.operating_mcs = plan.selected_mcs.value_or(table.highest().index);
  const PrrCeiling ceiling = prr_max(table, traffic, ue_per_bs, retx);
  plan.ue_supported = ceiling.ue_supported;
  plan.prr_max = ceiling.prr_max;
  return plan;
}

}  // namespace cv2x
