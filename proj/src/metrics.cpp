#include "cv2x/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include <fmt/format.h>

namespace cv2x {

double effective_prr(double prr_max, double runtime_prr) { return prr_max * runtime_prr; }

double confidence_interval(long received, long evaluated) {
  if (evaluated < 1) throw std::invalid_argument("confidence_interval: evaluated must be >= 1");
  const double n = static_cast<double>(evaluated);
  const double p = static_cast<double>(received) / n;
  return 1.96 * std::sqrt(p * (1.0 - p) / n);
}

bool sweep_order(const SweepKey& a, const SweepKey& b) {
  return std::tie(a.retx_enabled, a.message_rate_hz, a.ivd_m, a.speed_kmh) <
         std::tie(b.retx_enabled, b.message_rate_hz, b.ivd_m, b.speed_kmh);
}

SweepPoint make_point(const CellResult& cell) {
  SweepPoint p;
  p.ivd_m = cell.key.ivd_m;
  p.message_rate_hz = cell.key.message_rate_hz;
  p.speed_kmh = cell.key.speed_kmh;
  p.retx_enabled = cell.key.retx_enabled;
  p.selected_mcs = cell.plan.operating_mcs;
  p.overloaded = cell.plan.overloaded;
  p.ue_per_bs = cell.plan.ue_per_bs;
  p.data_volume_bps = cell.plan.data_volume_bps;
  p.prr_max = cell.plan.prr_max;
  p.runtime_prr = cell.run.runtime_prr;
  p.effective_prr = effective_prr(p.prr_max, p.runtime_prr);
  p.ci95_halfwidth = p.prr_max * confidence_interval(cell.run.received_total, cell.run.evaluated_total);
  p.mean_sinr_db = cell.run.sinr.mean_db();
  p.received = cell.run.received_total;
  p.evaluated = cell.run.evaluated_total;
  return p;
}

SweepResult assemble_sweep(std::span<const SweepKey> grid, std::span<const CellResult> results,
                           std::string config_fingerprint) {
  SweepResult out;
  out.config_fingerprint = std::move(config_fingerprint);
  for (const auto& key : grid) {
    const auto it = std::find_if(results.begin(), results.end(), [&](const CellResult& c) { return c.key == key; });
    if (it == results.end()) {
      throw std::invalid_argument(fmt::format("missing grid cell ivd={} rate={} speed={} retx={}", key.ivd_m,
                                              key.message_rate_hz, key.speed_kmh, key.retx_enabled));
    }
    out.points.push_back(make_point(*it));
  }
  std::sort(out.points.begin(), out.points.end(),
            [](const SweepPoint& a, const SweepPoint& b) { return sweep_order(a.key(), b.key()); });
  return out;
}

}  // namespace cv2x
