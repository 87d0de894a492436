#include "cv2x/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <openssl/evp.h>

namespace cv2x {
namespace {

namespace pt = boost::property_tree;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw std::invalid_argument(field + ": " + what);
}

double to_double(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const char* first = t.data();
  const char* last = first + t.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) bad(field, "expected a number, got '" + t + "'");
  return v;
}

template <typename Int>
Int to_int(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  Int v = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) bad(field, "expected an integer, got '" + t + "'");
  return v;
}

bool to_flag(const std::string& field, const std::string& text) {
  const std::string t = trim(text);
  if (t == "on" || t == "true" || t == "1" || t == "yes") return true;
  if (t == "off" || t == "false" || t == "0" || t == "no") return false;
  bad(field, "expected on/off, got '" + t + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!trim(item).empty()) out.push_back(trim(item));
  }
  return out;
}

std::vector<double> to_doubles(const std::string& field, const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split_list(text)) out.push_back(to_double(field, s));
  if (out.empty()) bad(field, "list must not be empty");
  return out;
}

std::vector<bool> to_flags(const std::string& field, const std::string& text) {
  std::vector<bool> out;
  for (const auto& s : split_list(text)) out.push_back(to_flag(field, s));
  if (out.empty()) bad(field, "list must not be empty");
  return out;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(trim(value));
  return p.is_absolute() ? p : base / p;
}

using Setter = std::function<void(RootConfig&, const std::string& field, const std::string& value)>;

template <typename T>
Setter number(T RootConfig::*section, double T::*member) {
  return [=](RootConfig& c, const std::string& f, const std::string& v) { (c.*section).*member = to_double(f, v); };
}

template <typename T>
Setter integer(T RootConfig::*section, int T::*member) {
  return [=](RootConfig& c, const std::string& f, const std::string& v) { (c.*section).*member = to_int<int>(f, v); };
}

const std::map<std::string, std::map<std::string, Setter>>& setters() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"scenario",
       {
           {"highway_length_m", number(&RootConfig::scenario, &ScenarioConfig::highway_length_m)},
           {"lane_count", integer(&RootConfig::scenario, &ScenarioConfig::lane_count)},
           {"lane_width_m", number(&RootConfig::scenario, &ScenarioConfig::lane_width_m)},
           {"isd_m", number(&RootConfig::scenario, &ScenarioConfig::isd_m)},
           {"bs_count", integer(&RootConfig::scenario, &ScenarioConfig::bs_count)},
           {"antenna_height_m", number(&RootConfig::scenario, &ScenarioConfig::antenna_height_m)},
           {"comm_range_m", number(&RootConfig::scenario, &ScenarioConfig::comm_range_m)},
           {"bs_edge_offset_m", number(&RootConfig::scenario, &ScenarioConfig::bs_edge_offset_m)},
           {"offsets",
            [](RootConfig& c, const std::string& f, const std::string& v) {
              const std::string t = trim(v);
              if (t == "random") {
                c.scenario.offsets = OffsetMode::random;
              } else if (t == "zero") {
                c.scenario.offsets = OffsetMode::zero;
              } else {
                bad(f, "expected random or zero, got '" + t + "'");
              }
            }},
       }},
      {"traffic",
       {
           {"packet_size_bytes", number(&RootConfig::traffic, &TrafficConfig::packet_size_bytes)},
           {"bandwidth_hz", number(&RootConfig::traffic, &TrafficConfig::bandwidth_hz)},
       }},
      {"link",
       {
           {"eirp_dbm", number(&RootConfig::link_budget, &LinkBudget::eirp_dbm)},
           {"carrier_hz", number(&RootConfig::link_budget, &LinkBudget::carrier_hz)},
           {"noise_figure_db", number(&RootConfig::link_budget, &LinkBudget::noise_figure_db)},
           {"shadowing_sigma_db", number(&RootConfig::link_budget, &LinkBudget::shadowing_sigma_db)},
       }},
      {"sim",
       {
           {"iterations", [](RootConfig& c, const std::string& f,
                             const std::string& v) { c.iterations = to_int<int>(f, v); }},
           {"seed", [](RootConfig& c, const std::string& f,
                       const std::string& v) { c.seed = to_int<std::uint64_t>(f, v); }},
       }},
      {"sweep",
       {
           {"ivd_m", [](RootConfig& c, const std::string& f,
                        const std::string& v) { c.sweep.ivd_m = to_doubles(f, v); }},
           {"message_rate_hz", [](RootConfig& c, const std::string& f,
                                  const std::string& v) { c.sweep.message_rate_hz = to_doubles(f, v); }},
           {"speed_kmh", [](RootConfig& c, const std::string& f,
                            const std::string& v) { c.sweep.speed_kmh = to_doubles(f, v); }},
           {"retx", [](RootConfig& c, const std::string& f, const std::string& v) { c.sweep.retx = to_flags(f, v); }},
       }},
      {"synthetic",
       {
           {"channel_penalty_db", number(&RootConfig::synthetic, &SyntheticTableConfig::channel_penalty_db)},
           {"speed_penalty_db_per_100kmh",
            number(&RootConfig::synthetic, &SyntheticTableConfig::speed_penalty_db_per_100kmh)},
           {"rx_diversity_gain_db", number(&RootConfig::synthetic, &SyntheticTableConfig::rx_diversity_gain_db)},
           {"retx_gain_db", number(&RootConfig::synthetic, &SyntheticTableConfig::retx_gain_db)},
           {"retx_gain_db_per_100kmh", number(&RootConfig::synthetic, &SyntheticTableConfig::retx_gain_db_per_100kmh)},
           {"slope", number(&RootConfig::synthetic, &SyntheticTableConfig::slope)},
           {"snr_min_db", number(&RootConfig::synthetic, &SyntheticTableConfig::snr_min_db)},
           {"snr_max_db", number(&RootConfig::synthetic, &SyntheticTableConfig::snr_max_db)},
           {"snr_step_db", number(&RootConfig::synthetic, &SyntheticTableConfig::snr_step_db)},
       }},
      {"output",
       {
           {"dir", [](RootConfig& c, const std::string&, const std::string& v) { c.output_dir = trim(v); }},
       }},
  };
  return table;
}

// [tables] keys: `mcs`, `noretx_<speed>`, `retx_<speed>`.
void apply_table_key(RootConfig& c, const std::string& key, const std::string& value,
                     const std::filesystem::path& base) {
  const std::string field = "tables." + key;
  const std::string v = trim(value);
  if (key == "mcs") {
    if (v == "builtin") {
      c.mcs_table.reset();
    } else {
      c.mcs_table = resolve(base, v);
    }
    return;
  }
  bool retx;
  std::string speed_text;
  if (key.rfind("noretx_", 0) == 0) {
    retx = false;
    speed_text = key.substr(7);
  } else if (key.rfind("retx_", 0) == 0) {
    retx = true;
    speed_text = key.substr(5);
  } else {
    bad(field, "unknown key");
  }
  const double speed = to_double(field, speed_text);
  TableSource src;
  if (v != "synthetic") {
    src.synthetic = false;
    src.path = resolve(base, v);
  }
  c.tables[{speed, retx}] = src;
}

std::string sha256_hex(const std::string& text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_same_v<T, bool>) {
      out += values[i] ? "on" : "off";
    } else {
      out += fmt::format("{}", values[i]);
    }
  }
  return out;
}

}  // namespace

double SyntheticTableConfig::penalty_db(double speed_kmh) const {
  return channel_penalty_db + speed_penalty_db_per_100kmh * speed_kmh / 100.0;
}

double SyntheticTableConfig::gain_db(double speed_kmh, bool retx) const {
  if (!retx) return rx_diversity_gain_db;
  return rx_diversity_gain_db + retx_gain_db + retx_gain_db_per_100kmh * speed_kmh / 100.0;
}

TableSource RootConfig::table_source(double speed_kmh, bool retx) const {
  const auto it = tables.find({speed_kmh, retx});
  return it == tables.end() ? TableSource{} : it->second;
}

void RootConfig::validate() const {
  scenario.validate();
  traffic.validate();
  LinkBudget budget = link_budget;
  budget.antenna_height_m = scenario.antenna_height_m;
  budget.bandwidth_hz = traffic.bandwidth_hz;
  budget.validate();
  if (iterations < 1) bad("sim.iterations", "must be >= 1");
  if (sweep.ivd_m.empty()) bad("sweep.ivd_m", "list must not be empty");
  if (sweep.message_rate_hz.empty()) bad("sweep.message_rate_hz", "list must not be empty");
  if (sweep.speed_kmh.empty()) bad("sweep.speed_kmh", "list must not be empty");
  if (sweep.retx.empty()) bad("sweep.retx", "list must not be empty");
  for (double v : sweep.ivd_m) {
    if (!(v > 0)) bad("sweep.ivd_m", "values must be > 0");
  }
  for (double v : sweep.message_rate_hz) {
    if (!(v > 0)) bad("sweep.message_rate_hz", "values must be > 0");
  }
  for (double v : sweep.speed_kmh) {
    if (!(v >= 0)) bad("sweep.speed_kmh", "values must be >= 0");
  }
  if (!(synthetic.slope > 0)) bad("synthetic.slope", "must be > 0");
  if (!(synthetic.snr_step_db > 0)) bad("synthetic.snr_step_db", "must be > 0");
  if (!(synthetic.snr_max_db > synthetic.snr_min_db)) bad("synthetic.snr_max_db", "must exceed snr_min_db");
}

std::string RootConfig::canonical() const {
  std::string s;
  auto put = [&s](std::string_view key, const std::string& value) { s += fmt::format("{}={}\n", key, value); };
  auto num = [](double v) { return fmt::format("{}", v); };
  put("scenario.highway_length_m", num(scenario.highway_length_m));
  put("scenario.lane_count", std::to_string(scenario.lane_count));
  put("scenario.lane_width_m", num(scenario.lane_width_m));
  put("scenario.isd_m", num(scenario.isd_m));
  put("scenario.bs_count", std::to_string(scenario.bs_count));
  put("scenario.antenna_height_m", num(scenario.antenna_height_m));
  put("scenario.comm_range_m", num(scenario.comm_range_m));
  put("scenario.bs_edge_offset_m", num(scenario.bs_edge_offset_m));
  put("scenario.offsets", scenario.offsets == OffsetMode::random ? "random" : "zero");
  put("traffic.packet_size_bytes", num(traffic.packet_size_bytes));
  put("traffic.bandwidth_hz", num(traffic.bandwidth_hz));
  put("link.eirp_dbm", num(link_budget.eirp_dbm));
  put("link.carrier_hz", num(link_budget.carrier_hz));
  put("link.noise_figure_db", num(link_budget.noise_figure_db));
  put("link.shadowing_sigma_db", num(link_budget.shadowing_sigma_db));
  put("sim.iterations", std::to_string(iterations));
  put("sim.seed", std::to_string(seed));
  put("sweep.ivd_m", join(sweep.ivd_m));
  put("sweep.message_rate_hz", join(sweep.message_rate_hz));
  put("sweep.speed_kmh", join(sweep.speed_kmh));
  put("sweep.retx", join(sweep.retx));
  put("synthetic.channel_penalty_db", num(synthetic.channel_penalty_db));
  put("synthetic.speed_penalty_db_per_100kmh", num(synthetic.speed_penalty_db_per_100kmh));
  put("synthetic.rx_diversity_gain_db", num(synthetic.rx_diversity_gain_db));
  put("synthetic.retx_gain_db", num(synthetic.retx_gain_db));
  put("synthetic.retx_gain_db_per_100kmh", num(synthetic.retx_gain_db_per_100kmh));
  put("synthetic.slope", num(synthetic.slope));
  put("synthetic.snr_min_db", num(synthetic.snr_min_db));
  put("synthetic.snr_max_db", num(synthetic.snr_max_db));
  put("synthetic.snr_step_db", num(synthetic.snr_step_db));
  put("tables.mcs", mcs_table ? mcs_table->generic_string() : "builtin");
  for (double speed : sweep.speed_kmh) {
    for (bool retx : {false, true}) {
      const TableSource src = table_source(speed, retx);
      put(fmt::format("tables.{}_{}", retx ? "retx" : "noretx", speed),
          src.synthetic ? "synthetic" : src.path.generic_string());
    }
  }
  return s;
}

std::string RootConfig::fingerprint() const { return sha256_hex(canonical()); }

RootConfig parse_config(std::istream& in, const std::filesystem::path& base_dir, const std::string& source) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::runtime_error(fmt::format("{}:{}: {}", source, e.line(), e.message()));
  }

  RootConfig config;
  const auto& known = setters();
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      // An empty [section] is harmless; a bare key is not.
      if (section == "tables" || known.count(section)) continue;
      throw std::invalid_argument(fmt::format("{}: key '{}' outside of a section", source, section));
    }
    if (section == "tables") {
      for (const auto& [key, value] : body) apply_table_key(config, key, value.data(), base_dir);
      continue;
    }
    const auto sec = known.find(section);
    if (sec == known.end()) throw std::invalid_argument(fmt::format("{}: unknown section '{}'", source, section));
    for (const auto& [key, value] : body) {
      const auto setter = sec->second.find(key);
      if (setter == sec->second.end()) {
        throw std::invalid_argument(fmt::format("{}: unknown key '{}.{}'", source, section, key));
      }
      setter->second(config, section + "." + key, value.data());
    }
  }
  config.validate();
  return config;
}

RootConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path.string());
  return parse_config(in, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path(),
                      path.string());
}

}  // namespace cv2x
