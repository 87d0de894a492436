#pragma once

#include <span>

#include "cv2x/scenario.hpp"

namespace cv2x {

struct LinkBudget {
  double eirp_dbm = 23.0;
  double carrier_hz = 5.9e9;
  double bandwidth_hz = 10e6;
  double noise_figure_db = 9.0;
  double antenna_height_m = 1.5;
  // Log-normal shadowing; 0 disables it.
  double shadowing_sigma_db = 0.0;

  void validate() const;
};

struct SinrSample {
  double signal_dbm = 0.0;
  double interference_mw = 0.0;
  double noise_mw = 0.0;
  double sinr_db = 0.0;
};

inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kMinPathlossDistance = 3.0;

/// d_bp = 4 h'_tx h'_rx f / c with effective heights h' = h - 1 m.
double breakpoint_distance_m(const LinkBudget& budget);

/// WINNER II B1 LOS two-slope pathloss. Distances below 3 m are clamped.
double pathloss_db(double distance_m, const LinkBudget& budget);

/// Thermal floor -174 dBm/Hz over the bandwidth plus noise figure.
double noise_power_mw(const LinkBudget& budget);

double received_power_dbm(double distance_m, const LinkBudget& budget);

SinrSample make_sinr_sample(double signal_dbm, double interference_mw, double noise_mw);

/// SINR at rx for tx's signal with all `interferers` active.
SinrSample sinr(const Vehicle& tx, const Vehicle& rx, std::span<const Vehicle> interferers,
                const LinkBudget& budget);

}  // namespace cv2x
