#pragma once

#include <span>
#include <string>
#include <vector>

#include "cv2x/engine.hpp"
#include "cv2x/traffic_load.hpp"

namespace cv2x {

/// Overload-corrected PRR: prr_max * runtime_prr.
double effective_prr(double prr_max, double runtime_prr);

/// Normal-approximation binomial 95% half-width.
double confidence_interval(long received, long evaluated);

struct SweepKey {
  double ivd_m = 0.0;
  double message_rate_hz = 0.0;
  double speed_kmh = 0.0;
  bool retx_enabled = false;

  friend bool operator==(const SweepKey&, const SweepKey&) = default;
};

/// Sort order of sweep rows: retx, message rate, IVD, then speed.
bool sweep_order(const SweepKey& a, const SweepKey& b);

struct SweepPoint {
  double ivd_m = 0.0;
  double message_rate_hz = 0.0;
  double speed_kmh = 0.0;
  bool retx_enabled = false;
  int selected_mcs = 0;  // operating MCS
  bool overloaded = false;
  long ue_per_bs = 0;
  double data_volume_bps = 0.0;
  double prr_max = 1.0;
  double runtime_prr = 0.0;
  double effective_prr = 0.0;
  // Half-width on effective_prr.
  double ci95_halfwidth = 0.0;
  double mean_sinr_db = 0.0;
  long received = 0;
  long evaluated = 0;

  SweepKey key() const { return {ivd_m, message_rate_hz, speed_kmh, retx_enabled}; }
};

struct SweepResult {
  std::vector<SweepPoint> points;
  std::string config_fingerprint;
};

struct CellResult {
  SweepKey key;
  LoadPlan plan;
  RunResult run;
};

SweepPoint make_point(const CellResult& cell);

/// One point per grid cell, sorted by sweep_order. Throws
/// std::invalid_argument naming the first grid cell without a result.
SweepResult assemble_sweep(std::span<const SweepKey> grid, std::span<const CellResult> results,
                           std::string config_fingerprint);

}  // namespace cv2x
