#include "cv2x/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>

#include "cv2x/engine.hpp"
#include "cv2x/l2s.hpp"
#include "cv2x/random.hpp"
#include "cv2x/scenario.hpp"

namespace cv2x {
namespace {

std::uint64_t mix_double(std::uint64_t h, double v) { return splitmix64(h ^ std::bit_cast<std::uint64_t>(v)); }

// Tables per (speed, retx); a failed load is kept as an error message.
struct TableSlot {
  std::shared_ptr<const L2sTable> table;
  std::string error;
};

using TableCache = std::map<std::pair<double, bool>, TableSlot>;

TableCache build_tables(const RootConfig& config, const McsTable& mcs) {
  TableCache cache;
  for (double speed : config.sweep.speed_kmh) {
    for (bool retx : config.sweep.retx) {
      TableSlot slot;
      const TableSource src = config.table_source(speed, retx);
      try {
        L2sTable t;
        if (src.synthetic) {
          const auto& s = config.synthetic;
          t = synth_table(mcs, s.penalty_db(speed), s.gain_db(speed, retx), retx ? "L2S-2" : "L2S-1", s.slope,
                          {s.snr_min_db, s.snr_max_db, s.snr_step_db});
          t.speed_kmh = speed;
        } else {
          t = load_table(src.path);
        }
        slot.table = std::make_shared<const L2sTable>(std::move(t));
      } catch (const std::exception& e) {
        slot.error = e.what();
      }
      cache[{speed, retx}] = std::move(slot);
    }
  }
  return cache;
}

CellResult run_cell(const RootConfig& config, const McsTable& mcs, const TableCache& tables, const SweepKey& key) {
  const TableSlot& slot = tables.at({key.speed_kmh, key.retx_enabled});
  if (!slot.table) throw std::runtime_error(slot.error);

  ScenarioConfig scenario = config.scenario;
  scenario.ivd_m = key.ivd_m;
  scenario.rng_seed = derive_seed(config.seed, Stream::deployment, std::bit_cast<std::uint64_t>(key.ivd_m));
  const Deployment deployment = deploy(scenario);

  TrafficConfig traffic = config.traffic;
  traffic.message_rate_hz = key.message_rate_hz;
  const long ue_per_bs = ue_count_per_bs(scenario.isd_m, scenario.ivd_m, scenario.lane_count);
  const LoadPlan plan = plan_load(mcs, traffic, ue_per_bs, key.retx_enabled);

  LinkBudget budget = config.link_budget;
  budget.bandwidth_hz = traffic.bandwidth_hz;
  budget.antenna_height_m = scenario.antenna_height_m;

  SimConfig sim;
  sim.iterations = config.iterations;
  sim.retx_enabled = key.retx_enabled;
  sim.rng_seed = cell_seed(config.seed, key);
  if (key.retx_enabled) {
    sim.table_retx = slot.table;
  } else {
    sim.table_first = slot.table;
  }

  return CellResult{key, plan, run(deployment, plan, sim, budget)};
}

std::string fmt_prr(double v) { return fmt::format("{:.4f}", v); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace

std::vector<SweepKey> sweep_grid(const SweepSpec& sweep) {
  std::vector<SweepKey> grid;
  for (bool retx : sweep.retx) {
    for (double rate : sweep.message_rate_hz) {
      for (double speed : sweep.speed_kmh) {
        for (double ivd : sweep.ivd_m) grid.push_back({ivd, rate, speed, retx});
      }
    }
  }
  return grid;
}

std::uint64_t cell_seed(std::uint64_t root, const SweepKey& key) {
  std::uint64_t h = derive_seed(root, Stream::cell);
  h = mix_double(h, key.ivd_m);
  h = mix_double(h, key.message_rate_hz);
  return mix_double(h, key.speed_kmh);
}

SweepOutcome run_sweep(const RootConfig& config, SweepOptions options) {
  config.validate();
  const McsTable mcs = config.mcs_table ? McsTable::load(*config.mcs_table) : McsTable::lte_default();
  const TableCache tables = build_tables(config, mcs);
  const std::vector<SweepKey> grid = sweep_grid(config.sweep);

  std::vector<std::optional<CellResult>> results(grid.size());
  std::vector<std::string> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        results[i] = run_cell(config, mcs, tables, grid[i]);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };

  unsigned workers = 1;
  if (options.parallel) {
    workers = options.max_workers ? options.max_workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, grid.size()));
  }
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  SweepOutcome outcome;
  std::vector<SweepKey> done;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (results[i]) {
      done.push_back(grid[i]);
      outcome.cells.push_back(std::move(*results[i]));
    } else {
      outcome.failures.push_back({grid[i], errors[i]});
    }
  }
  outcome.result = assemble_sweep(done, outcome.cells, config.fingerprint());
  std::sort(outcome.cells.begin(), outcome.cells.end(),
            [](const CellResult& a, const CellResult& b) { return sweep_order(a.key, b.key); });
  return outcome;
}

double display_data_volume_mbps(const SweepPoint& point) {
  const double factor = point.retx_enabled ? 2.0 : 1.0;
  const double single = point.data_volume_bps / factor / 1e6;
  return factor * (std::round(single * 1e4) / 1e4);
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
  out << kSweepCsvHeader << '\n';
  for (const auto& p : result.points) {
    out << fmt::format("{},{},{},{},{},{},{:.4f},{},{},{},{}\n", p.ivd_m, p.message_rate_hz, p.speed_kmh,
                       p.retx_enabled ? 1 : 0, p.selected_mcs, p.ue_per_bs, display_data_volume_mbps(p),
                       fmt_prr(p.prr_max), fmt_prr(p.runtime_prr), fmt_prr(p.effective_prr),
                       fmt_prr(p.ci95_halfwidth));
  }
}

std::string point_id(const SweepKey& key) {
  return fmt::format("ivd{}-rate{}-v{}-{}", key.ivd_m, key.message_rate_hz, key.speed_kmh,
                     key.retx_enabled ? "retx" : "noretx");
}

std::string series_id(double message_rate_hz, double speed_kmh, bool retx) {
  return fmt::format("rate{}-v{}-{}", message_rate_hz, speed_kmh, retx ? "retx" : "noretx");
}

std::vector<std::filesystem::path> write_outputs(const SweepOutcome& outcome, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;

  std::ostringstream sweep;
  write_sweep_csv(outcome.result, sweep);
  written.push_back(dir / "sweep.csv");
  write_file(written.back(), sweep.str());

  written.push_back(dir / "fingerprint.txt");
  write_file(written.back(), outcome.result.config_fingerprint + "\n");

  for (std::size_t i = 0; i < outcome.cells.size(); ++i) {
    const CellResult& cell = outcome.cells[i];
    const SweepPoint& p = outcome.result.points.at(i);
    std::string text;
    text += fmt::format("# ivd_m: {}\n# message_rate_hz: {}\n# speed_kmh: {}\n# retx: {}\n", p.ivd_m,
                        p.message_rate_hz, p.speed_kmh, p.retx_enabled ? 1 : 0);
    text += fmt::format("# mcs: {}\n# overloaded: {}\n# ue_per_bs: {}\n# ue_supported: {}\n", p.selected_mcs,
                        p.overloaded ? 1 : 0, p.ue_per_bs, cell.plan.ue_supported);
    text += fmt::format("# received: {}\n# evaluated: {}\n# runtime_prr: {}\n# effective_prr: {}\n", p.received,
                        p.evaluated, fmt_prr(p.runtime_prr), fmt_prr(p.effective_prr));
    text += fmt::format("# mean_sinr_db: {:.4f}\n", p.mean_sinr_db);
    text += "sinr_low_db,sinr_high_db,samples,received\n";
    const SinrHistogram& h = cell.run.sinr;
    for (int b = 0; b < SinrHistogram::kBins; ++b) {
      const double lo = SinrHistogram::kLowDb + b * SinrHistogram::kWidthDb;
      text += fmt::format("{},{},{},{}\n", lo, lo + SinrHistogram::kWidthDb, h.counts[static_cast<std::size_t>(b)],
                          h.received[static_cast<std::size_t>(b)]);
    }
    written.push_back(dir / ("point-" + point_id(cell.key) + ".csv"));
    write_file(written.back(), text);
  }
  return written;
}

std::vector<std::filesystem::path> emit_plot_data(const SweepResult& result, const std::filesystem::path& dir) {
  if (result.points.empty()) throw std::invalid_argument("emit_plot_data: empty sweep result");
  std::filesystem::create_directories(dir);
  std::map<std::string, std::vector<const SweepPoint*>> series;
  std::vector<std::string> order;
  for (const auto& p : result.points) {
    const std::string id = series_id(p.message_rate_hz, p.speed_kmh, p.retx_enabled);
    if (!series.count(id)) order.push_back(id);
    series[id].push_back(&p);
  }
  std::vector<std::filesystem::path> written;
  for (const auto& id : order) {
    auto pts = series[id];
    std::sort(pts.begin(), pts.end(), [](const SweepPoint* a, const SweepPoint* b) { return a->ivd_m < b->ivd_m; });
    std::string text = "ivd_m,effective_prr,ci95\n";
    for (const auto* p : pts) {
      text += fmt::format("{},{},{}\n", p->ivd_m, fmt_prr(p->effective_prr), fmt_prr(p->ci95_halfwidth));
    }
    written.push_back(dir / ("series-" + id + ".csv"));
    write_file(written.back(), text);
  }
  return written;
}

std::vector<SeriesRow> read_series(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "ivd_m,effective_prr,ci95") throw std::runtime_error(path.string() + ": unexpected header");
  std::vector<SeriesRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    SeriesRow r;
    char c1 = 0, c2 = 0;
    std::istringstream row(line);
    if (!(row >> r.ivd_m >> c1 >> r.effective_prr >> c2 >> r.ci95) || c1 != ',' || c2 != ',') {
      throw std::runtime_error(path.string() + ": malformed row '" + line + "'");
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace cv2x
