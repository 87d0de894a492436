#pragma once

// Test-only helpers and independent oracles. Nothing here calls into the
// code paths it is used to check.

#include <cmath>
#include <vector>

#include "cv2x/l2s.hpp"

namespace cv2x::test {

/// BLER fixed at `bler` for every SINR and every MCS 0..20.
inline L2sTable constant_table(double bler, const char* label = "const") {
  L2sTable t;
  t.label = label;
  for (int m = 0; m <= 20; ++m) t.curves[m] = {{-100.0, bler}, {100.0, bler}};
  return t;
}

/// BLER 1 below `threshold_db`, 0 from threshold + 1e-3 dB upward.
inline L2sTable step_table(double threshold_db) {
  L2sTable t;
  t.label = "step";
  for (int m = 0; m <= 20; ++m) t.curves[m] = {{threshold_db, 1.0}, {threshold_db + 1e-3, 0.0}};
  return t;
}

/// Independent WINNER II B1 LOS evaluation for 1.5 m antennas at 5.9 GHz.
inline double oracle_pathloss_db(double d) {
  const double c = 299792458.0;
  const double f = 5.9e9;
  const double h = 0.5;
  const double dbp = 4 * h * h * f / c;
  if (d < 3.0) d = 3.0;
  if (d <= dbp) return 22.7 * std::log10(d) + 41.0 + 20.0 * std::log10(5.9 / 5.0);
  return 40.0 * std::log10(d) + 9.45 - 2 * 17.3 * std::log10(h) + 2.7 * std::log10(5.9 / 5.0);
}

/// SINR in dB with 23 dBm EIRP and a -95 dBm floor (10 MHz, NF 9 dB).
inline double oracle_sinr_db(double signal_distance, const std::vector<double>& interferer_distances) {
  auto mw = [](double dbm) { return std::pow(10.0, dbm / 10.0); };
  const double signal = mw(23.0 - oracle_pathloss_db(signal_distance));
  double noise_plus_i = mw(-95.0);
  for (double d : interferer_distances) noise_plus_i += mw(23.0 - oracle_pathloss_db(d));
  return 10.0 * std::log10(signal / noise_plus_i);
}

}  // namespace cv2x::test
