#include "cv2x/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cv2x/units.hpp"

namespace cv2x {
namespace {

constexpr double kEffectiveHeightDrop = 1.0;

double effective_height(const LinkBudget& b) { return b.antenna_height_m - kEffectiveHeightDrop; }

}  // namespace

void LinkBudget::validate() const {
  if (!(carrier_hz > 0)) throw std::invalid_argument("link.carrier_hz: must be > 0");
  if (!(bandwidth_hz > 0)) throw std::invalid_argument("link.bandwidth_hz: must be > 0");
  if (!(antenna_height_m > kEffectiveHeightDrop)) {
    throw std::invalid_argument("link.antenna_height_m: must exceed 1 m (effective height)");
  }
  if (!(shadowing_sigma_db >= 0)) throw std::invalid_argument("link.shadowing_sigma_db: must be >= 0");
}

double breakpoint_distance_m(const LinkBudget& budget) {
  const double h = effective_height(budget);
  return 4.0 * h * h * budget.carrier_hz / kSpeedOfLight;
}

double pathloss_db(double distance_m, const LinkBudget& budget) {
  const double d = std::max(distance_m, kMinPathlossDistance);
  const double f_ghz = budget.carrier_hz / 1e9;
  if (d <= breakpoint_distance_m(budget)) {
    return 22.7 * std::log10(d) + 41.0 + 20.0 * std::log10(f_ghz / 5.0);
  }
  const double h = effective_height(budget);
  return 40.0 * std::log10(d) + 9.45 - 17.3 * std::log10(h) - 17.3 * std::log10(h) + 2.7 * std::log10(f_ghz / 5.0);
}

double noise_power_mw(const LinkBudget& budget) {
  return dbm_to_mw(-174.0 + 10.0 * std::log10(budget.bandwidth_hz) + budget.noise_figure_db);
}

double received_power_dbm(double distance_m, const LinkBudget& budget) {
  return budget.eirp_dbm - pathloss_db(distance_m, budget);
}

SinrSample make_sinr_sample(double signal_dbm, double interference_mw, double noise_mw) {
  const double sinr_lin = dbm_to_mw(signal_dbm) / (interference_mw + noise_mw);
  return {signal_dbm, interference_mw, noise_mw, linear_to_db(sinr_lin)};
}

SinrSample sinr(const Vehicle& tx, const Vehicle& rx, std::span<const Vehicle> interferers,
                const LinkBudget& budget) {
  const double signal = received_power_dbm(distance_m(tx, rx), budget);
  double interference = 0.0;
  for (const auto& i : interferers) interference += dbm_to_mw(received_power_dbm(distance_m(i, rx), budget));
  return make_sinr_sample(signal, interference, noise_power_mw(budget));
}

}  // namespace cv2x
