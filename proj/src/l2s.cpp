#include "cv2x/l2s.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "cv2x/units.hpp"

namespace cv2x {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

// "# key: value" metadata comment.
bool parse_meta(const std::string& comment, L2sTable& table) {
  const std::string body = trim(std::string_view(comment).substr(1));
  const auto colon = body.find(':');
  if (colon == std::string::npos) return false;
  const std::string key = trim(std::string_view(body).substr(0, colon));
  const std::string value = trim(std::string_view(body).substr(colon + 1));
  if (key == "label") {
    table.label = value;
  } else if (key == "channel") {
    table.channel = value;
  } else if (key == "speed_kmh") {
    return parse_number(value, table.speed_kmh);
  } else {
    return false;
  }
  return true;
}

}  // namespace

void L2sTable::validate() const {
  if (curves.empty()) throw std::invalid_argument("L2S table '" + label + "' has no curves");
  for (const auto& [mcs, points] : curves) {
    if (points.size() < 2) throw std::invalid_argument(fmt::format("MCS {}: curve needs at least 2 points", mcs));
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& p = points[i];
      if (!(p.bler >= 0.0 && p.bler <= 1.0)) {
        throw std::invalid_argument(fmt::format("MCS {} point {}: bler {} outside [0,1]", mcs, i, p.bler));
      }
      if (i == 0) continue;
      if (!(p.snr_db > points[i - 1].snr_db)) {
        throw std::invalid_argument(fmt::format("MCS {} point {}: snr_db not strictly increasing", mcs, i));
      }
      if (p.bler > points[i - 1].bler) {
        throw std::invalid_argument(fmt::format("MCS {} point {}: bler increases with snr", mcs, i));
      }
    }
  }
}

L2sTable parse_table(std::istream& in, const std::string& source) {
  L2sTable table;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw std::runtime_error(fmt::format("{}:{}: {}", source, line_no, what));
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '#') {
      parse_meta(t, table);
      continue;
    }
    std::vector<std::string> fields;
    std::istringstream row(t);
    for (std::string f; std::getline(row, f, ',');) fields.push_back(trim(f));
    if (fields.size() != 3) fail("expected 'mcs,snr_db,bler', got '" + t + "'");
    int mcs = 0;
    BlerPoint p;
    if (!parse_number(fields[0], mcs) || !parse_number(fields[1], p.snr_db) || !parse_number(fields[2], p.bler)) {
      fail("malformed number in '" + t + "'");
    }
    if (!(p.bler >= 0.0 && p.bler <= 1.0)) fail(fmt::format("bler {} outside [0,1]", fields[2]));
    auto& curve = table.curves[mcs];
    if (!curve.empty() && !(p.snr_db > curve.back().snr_db)) {
      fail(fmt::format("snr_db {} not strictly increasing for MCS {}", fields[1], mcs));
    }
    if (!curve.empty() && p.bler > curve.back().bler) {
      fail(fmt::format("bler {} increases with snr for MCS {}", fields[2], mcs));
    }
    curve.push_back(p);
  }
  try {
    table.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(source + ": " + e.what());
  }
  return table;
}

L2sTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open L2S table " + path.string());
  return parse_table(in, path.string());
}

void save_table(const L2sTable& table, std::ostream& out) {
  out << "# label: " << table.label << '\n';
  out << "# channel: " << table.channel << '\n';
  out << "# speed_kmh: " << fmt::format("{}", table.speed_kmh) << '\n';
  out << "# mcs,snr_db,bler\n";
  for (const auto& [mcs, points] : table.curves) {
    for (const auto& p : points) out << fmt::format("{},{},{}\n", mcs, p.snr_db, p.bler);
  }
}

void save_table(const L2sTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write L2S table " + path.string());
  save_table(table, out);
}

double bler_lookup(const L2sTable& table, BlerQuery query) {
  const auto it = table.curves.find(query.mcs);
  if (it == table.curves.end()) {
    throw std::out_of_range(fmt::format("MCS {} not in L2S table '{}'", query.mcs, table.label));
  }
  const auto& pts = it->second;
  if (query.sinr_db <= pts.front().snr_db) return pts.front().bler;
  if (query.sinr_db >= pts.back().snr_db) return pts.back().bler;
  const auto hi = std::upper_bound(pts.begin(), pts.end(), query.sinr_db,
                                   [](double s, const BlerPoint& p) { return s < p.snr_db; });
  const auto lo = hi - 1;
  const double t = (query.sinr_db - lo->snr_db) / (hi->snr_db - lo->snr_db);
  return lo->bler + t * (hi->bler - lo->bler);
}

double synth_snr50_db(double spectral_efficiency, double channel_penalty_db, double diversity_gain_db) {
  return linear_to_db(std::exp2(spectral_efficiency) - 1.0) + channel_penalty_db - diversity_gain_db;
}

double synth_bler(double snr_db, double snr50_db, double slope) {
  const double ratio = db_to_linear(snr_db - snr50_db);
  const double b = 0.5 * std::exp(-slope * (ratio - 1.0));
  return std::clamp(b, kSynthBlerFloor, 1.0);
}

L2sTable synth_table(const McsTable& mcs_table, double channel_penalty_db, double diversity_gain_db,
                     std::string label, double slope, SnrGrid grid) {
  if (!std::isfinite(channel_penalty_db) || !std::isfinite(diversity_gain_db)) {
    throw std::invalid_argument("synth_table: penalties must be finite");
  }
  if (!(grid.step_db > 0) || !(grid.max_db > grid.min_db)) throw std::invalid_argument("synth_table: bad SNR grid");
  L2sTable table;
  table.label = std::move(label);
  const auto n = static_cast<long>(std::floor((grid.max_db - grid.min_db) / grid.step_db + 1e-9));
  for (const auto& e : mcs_table.entries()) {
    const double snr50 = synth_snr50_db(e.spectral_efficiency, channel_penalty_db, diversity_gain_db);
    auto& curve = table.curves[e.index];
    curve.reserve(static_cast<std::size_t>(n + 1));
    for (long i = 0; i <= n; ++i) {
      const double snr = grid.min_db + static_cast<double>(i) * grid.step_db;
      curve.push_back({snr, synth_bler(snr, snr50, slope)});
    }
  }
  return table;
}

}  // namespace cv2x
