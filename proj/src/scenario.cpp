#include "cv2x/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "cv2x/random.hpp"

namespace cv2x {
namespace {

// Guards floor() against products like 1732/10*6 landing a ulp below an integer.
constexpr double kFloorSlack = 1e-9;

void require(bool ok, const char* field, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("scenario.") + field + ": " + what);
}

// Number of positions offset + k*ivd that fit on [0, length].
long lane_count_for(double offset, double ivd, double length) {
  return static_cast<long>(std::floor((length - offset) / ivd + kFloorSlack)) + 1;
}

std::vector<double> draw_offsets(const ScenarioConfig& c) {
  std::vector<double> offsets(static_cast<std::size_t>(c.lane_count), 0.0);
  if (c.offsets == OffsetMode::zero) return offsets;

  Rng rng(derive_seed(c.rng_seed, Stream::lane_offsets));
  const double ratio = c.highway_length_m / c.ivd_m;
  const double whole = std::floor(ratio + kFloorSlack);
  const double frac = std::max(0.0, ratio - whole);
  const double split = frac * c.ivd_m;  // offsets <= split yield one extra vehicle
  const long total = ue_count_highway(c.highway_length_m, c.ivd_m, c.lane_count);
  const long long_lanes = total - static_cast<long>(whole) * c.lane_count;

  std::vector<int> order(offsets.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[rng.uniform_index(i)]);
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    double o;
    if (static_cast<long>(k) < long_lanes) {
      o = split * rng.uniform01();
    } else {
      do {
        o = split + (c.ivd_m - split) * rng.uniform01();
      } while (o <= split || o >= c.ivd_m);
    }
    offsets[static_cast<std::size_t>(order[k])] = o;
  }
  return offsets;
}

}  // namespace

void ScenarioConfig::validate() const {
  require(highway_length_m > 0, "highway_length_m", "must be > 0");
  require(ivd_m > 0, "ivd_m", "must be > 0");
  require(lane_count >= 1, "lane_count", "must be >= 1");
  require(lane_width_m > 0, "lane_width_m", "must be > 0");
  require(bs_count >= 2, "bs_count", "must be >= 2");
  require(isd_m > 0, "isd_m", "must be > 0");
  require(antenna_height_m > 0, "antenna_height_m", "must be > 0");
  require(comm_range_m > 0, "comm_range_m", "must be > 0");
  require(comm_range_m < isd_m, "comm_range_m", "must be < isd_m");
  require(bs_edge_offset_m >= 0, "bs_edge_offset_m", "must be >= 0");
}

std::vector<std::vector<int>> Deployment::controlled_by_bs() const {
  std::vector<std::vector<int>> groups(base_stations.size());
  for (const auto& v : vehicles) groups.at(static_cast<std::size_t>(v.controlling_bs)).push_back(v.id);
  return groups;
}

long ue_count_highway(double length_m, double ivd_m, int lanes) {
  return static_cast<long>(std::floor(length_m / ivd_m * lanes + kFloorSlack));
}

int nearest_bs(std::span<const BaseStation> base_stations, double x_m, double y_m) {
  int best = -1;
  double best_d2 = 0.0;
  for (std::size_t i = 0; i < base_stations.size(); ++i) {
    const double dx = base_stations[i].x_m - x_m;
    const double dy = base_stations[i].y_m - y_m;
    const double d2 = dx * dx + dy * dy;
    if (best < 0 || d2 < best_d2) {
      best = static_cast<int>(i);
      best_d2 = d2;
    }
  }
  return best;
}

Deployment make_deployment(std::vector<Vehicle> vehicles, std::vector<BaseStation> base_stations,
                           Interval eval_region, double comm_range_m) {
  if (vehicles.empty()) throw std::invalid_argument("deployment has zero vehicles");
  if (base_stations.empty()) throw std::invalid_argument("deployment has zero base stations");
  for (std::size_t i = 0; i < base_stations.size(); ++i) base_stations[i].id = static_cast<int>(i);
  for (std::size_t i = 0; i < vehicles.size(); ++i) {
    vehicles[i].id = static_cast<int>(i);
    vehicles[i].controlling_bs = nearest_bs(base_stations, vehicles[i].x_m, vehicles[i].y_m);
  }
  return Deployment{std::move(vehicles), std::move(base_stations), eval_region, comm_range_m};
}

Deployment deploy(const ScenarioConfig& config) {
  config.validate();

  const double center_x = config.highway_length_m / 2.0;
  const double half_width = config.lane_count * config.lane_width_m / 2.0;

  std::vector<BaseStation> bss;
  for (int b = 0; b < config.bs_count; ++b) {
    const double x = center_x + (b - (config.bs_count - 1) / 2.0) * config.isd_m;
    bss.push_back({b, x, half_width + config.bs_edge_offset_m});
  }

  const std::vector<double> offsets = draw_offsets(config);
  std::vector<Vehicle> vehicles;
  for (int lane = 0; lane < config.lane_count; ++lane) {
    const double y = (lane - (config.lane_count - 1) / 2.0) * config.lane_width_m;
    const double offset = offsets[static_cast<std::size_t>(lane)];
    const long n = lane_count_for(offset, config.ivd_m, config.highway_length_m);
    for (long k = 0; k < n; ++k) {
      const double x = std::min(offset + static_cast<double>(k) * config.ivd_m, config.highway_length_m);
      vehicles.push_back({0, lane, x, y, 0});
    }
  }
  if (vehicles.empty()) throw std::invalid_argument("scenario produces zero vehicles");

  Interval region{bss.front().x_m, bss.back().x_m};
  return make_deployment(std::move(vehicles), std::move(bss), region, config.comm_range_m);
}

double distance_m(const Vehicle& a, const Vehicle& b) { return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m); }

bool in_comm_range(const Vehicle& tx, const Vehicle& rx, double comm_range_m) {
  return distance_m(tx, rx) <= comm_range_m;
}

}  // namespace cv2x
