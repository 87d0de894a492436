#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "cv2x/config.hpp"
#include "cv2x/metrics.hpp"

namespace cv2x {

struct SweepOptions {
  bool parallel = true;
  unsigned max_workers = 0;  // 0: hardware concurrency
};

struct CellFailure {
  SweepKey key;
  std::string message;
};

struct SweepOutcome {
  SweepResult result;
  std::vector<CellResult> cells;  // same order as result.points
  std::vector<CellFailure> failures;
};

/// Every (ivd, rate, speed, retx) combination of the sweep lists.
std::vector<SweepKey> sweep_grid(const SweepSpec& sweep);

/// Seed shared by the retx and no-retx cells of one (ivd, rate, speed).
std::uint64_t cell_seed(std::uint64_t root, const SweepKey& key);

/// Deploys, plans, runs and aggregates every grid cell. A failing cell is
/// reported in `failures` and left out of the result; others proceed.
SweepOutcome run_sweep(const RootConfig& config, SweepOptions options = {});

inline constexpr const char* kSweepCsvHeader =
    "ivd_m,message_rate_hz,speed_kmh,retx,mcs,ue_per_bs,data_volume_mbps,prr_max,runtime_prr,effective_prr,ci95";

/// data_volume in Mbps as printed: transmissions x per-transmission
/// volume rounded to 4 decimals.
double display_data_volume_mbps(const SweepPoint& point);

void write_sweep_csv(const SweepResult& result, std::ostream& out);

/// Writes sweep.csv, fingerprint.txt and one point-<id>.csv per cell;
/// returns the paths written.
std::vector<std::filesystem::path> write_outputs(const SweepOutcome& outcome, const std::filesystem::path& dir);

std::string point_id(const SweepKey& key);
std::string series_id(double message_rate_hz, double speed_kmh, bool retx);

/// One file per (message rate, speed, retx) series with columns
/// ivd_m,effective_prr,ci95.
std::vector<std::filesystem::path> emit_plot_data(const SweepResult& result, const std::filesystem::path& dir);

struct SeriesRow {
  double ivd_m = 0.0;
  double effective_prr = 0.0;
  double ci95 = 0.0;
};

std::vector<SeriesRow> read_series(const std::filesystem::path& path);

}  // namespace cv2x
