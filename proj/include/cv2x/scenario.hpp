#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cv2x {

/// How each lane's leading offset is chosen.
///  - random: stratified uniform offsets on [0, ivd) that keep the total
///    vehicle count equal to ue_count_highway().
///  - zero: every lane starts at x = 0.
enum class OffsetMode { random, zero };

struct ScenarioConfig {
  double highway_length_m = 3464.0;
  int lane_count = 6;
  double lane_width_m = 4.0;
  double ivd_m = 10.0;
  double isd_m = 1732.0;
  int bs_count = 2;
  double antenna_height_m = 1.5;
  double comm_range_m = 400.0;
  // Lateral BS distance from the nearest highway edge.
  double bs_edge_offset_m = 35.0;
  OffsetMode offsets = OffsetMode::random;
  std::uint64_t rng_seed = 1;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct Vehicle {
  int id = 0;
  int lane = 0;
  double x_m = 0.0;
  double y_m = 0.0;
  int controlling_bs = 0;
};

struct BaseStation {
  int id = 0;
  double x_m = 0.0;
  double y_m = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Immutable result of deploy(). Vehicle ids equal their index.
struct Deployment {
  std::vector<Vehicle> vehicles;
  std::vector<BaseStation> base_stations;
  // Transmitters are PRR-evaluated only inside this x-interval.
  Interval eval_region;
  double comm_range_m = 400.0;

  /// Vehicle indices grouped by controlling BS.
  std::vector<std::vector<int>> controlled_by_bs() const;
};

/// floor(length / ivd * lanes), the nominal vehicle count on the highway.
long ue_count_highway(double length_m, double ivd_m, int lanes);

Deployment deploy(const ScenarioConfig& config);

/// Builds a deployment from hand-placed vehicles: renumbers ids to
/// indices and assigns each vehicle to its nearest BS.
Deployment make_deployment(std::vector<Vehicle> vehicles, std::vector<BaseStation> base_stations,
                           Interval eval_region, double comm_range_m);

/// Index of the nearest BS; ties go to the lower index.
int nearest_bs(std::span<const BaseStation> base_stations, double x_m, double y_m);

double distance_m(const Vehicle& a, const Vehicle& b);

/// Inclusive at the boundary.
bool in_comm_range(const Vehicle& tx, const Vehicle& rx, double comm_range_m);

}  // namespace cv2x
