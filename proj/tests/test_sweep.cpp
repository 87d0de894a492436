#include <doctest.h>

#include <fstream>
#include <sstream>

#include "cv2x/sweep.hpp"

using namespace cv2x;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("cv2x-test-" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RootConfig small() {
  RootConfig c;
  c.iterations = 20;
  c.sweep.ivd_m = {20, 100};
  c.sweep.retx = {false, true};
  return c;
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream out;
  write_sweep_csv(r, out);
  return out.str();
}

}  // namespace

TEST_CASE("run_sweep covers the grid and is reproducible") {
  const RootConfig c = small();
  const SweepOutcome a = run_sweep(c, {.parallel = true, .max_workers = 3});
  const SweepOutcome b = run_sweep(c, {.parallel = false});
  CHECK(a.failures.empty());
  REQUIRE(a.result.points.size() == 4);
  CHECK(csv_of(a.result) == csv_of(b.result));
  CHECK(a.result.config_fingerprint == c.fingerprint());

  const std::string csv = csv_of(a.result);
  CHECK(csv.rfind(std::string(kSweepCsvHeader) + "\n", 0) == 0);
  CHECK(csv.find("20,10,100,0,7,519,10.6291,1.0000,") != std::string::npos);
  CHECK(csv.find("100,10,100,1,3,103,4.2188,1.0000,") != std::string::npos);

  RootConfig reseeded = c;
  reseeded.seed = 2;
  CHECK(csv_of(run_sweep(reseeded, {.parallel = false}).result) != csv);
}

TEST_CASE("a failing cell is reported while the others complete") {
  const fs::path dir = scratch("fail");
  RootConfig c = small();
  c.tables[{100.0, true}] = TableSource{false, dir / "missing.csv"};
  const SweepOutcome o = run_sweep(c, {.parallel = false});
  CHECK(o.result.points.size() == 2);
  REQUIRE(o.failures.size() == 2);
  CHECK(o.failures[0].message.find("missing.csv") != std::string::npos);
  for (const auto& p : o.result.points) CHECK_FALSE(p.retx_enabled);
}

TEST_CASE("file-backed tables are used as given") {
  const fs::path dir = scratch("tables");
  {
    std::ofstream f(dir / "perfect.csv");
    for (int m = 0; m <= 20; ++m) f << m << ",-50,0\n" << m << ",50,0\n";
  }
  RootConfig c = small();
  c.sweep.retx = {false};
  c.tables[{100.0, false}] = TableSource{false, dir / "perfect.csv"};
  const SweepOutcome o = run_sweep(c, {.parallel = false});
  REQUIRE(o.result.points.size() == 2);
  for (const auto& p : o.result.points) CHECK(p.runtime_prr == 1.0);
}

TEST_CASE("write_outputs and emit_plot_data") {
  const fs::path dir = scratch("out");
  const SweepOutcome o = run_sweep(small(), {.parallel = false});
  const auto files = write_outputs(o, dir);
  CHECK(files.size() == 2 + 4);
  CHECK(fs::exists(dir / "sweep.csv"));
  CHECK(slurp(dir / "fingerprint.txt") == o.result.config_fingerprint + "\n");
  CHECK(fs::exists(dir / ("point-" + point_id({20, 10, 100, true}) + ".csv")));

  const auto series = emit_plot_data(o.result, dir);
  REQUIRE(series.size() == 2);
  const auto no_retx = read_series(dir / ("series-" + series_id(10, 100, false) + ".csv"));
  const auto retx = read_series(dir / ("series-" + series_id(10, 100, true) + ".csv"));
  REQUIRE(no_retx.size() == 2);
  REQUIRE(retx.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) CHECK(no_retx[i].ivd_m == retx[i].ivd_m);

  // Values re-read equal the emitted ones at printed precision.
  for (std::size_t i = 0; i < 2; ++i) {
    const SweepPoint& p = o.result.points[i];
    CHECK(no_retx[i].effective_prr == doctest::Approx(p.effective_prr).epsilon(0.5e-4 / p.effective_prr));
    CHECK(std::abs(no_retx[i].ci95 - p.ci95_halfwidth) <= 0.5e-4);
  }
  CHECK_THROWS(emit_plot_data(SweepResult{}, dir));
}

TEST_CASE("single series of eight points") {
  const fs::path dir = scratch("series8");
  RootConfig c;
  c.iterations = 20;
  c.sweep.retx = {false};
  const SweepOutcome o = run_sweep(c, {.parallel = false});
  const auto files = emit_plot_data(o.result, dir);
  REQUIRE(files.size() == 1);
  const auto rows = read_series(files[0]);
  REQUIRE(rows.size() == 8);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i - 1].ivd_m < rows[i].ivd_m);
}

TEST_CASE("display data volume follows the load tables' rounding") {
  SweepPoint p;
  p.retx_enabled = true;
  p.data_volume_bps = 2 * 42557440.0;
  CHECK(display_data_volume_mbps(p) == doctest::Approx(85.1148));
  p.data_volume_bps = 2 * 4239360.0;
  CHECK(display_data_volume_mbps(p) == doctest::Approx(8.4788));
  p.retx_enabled = false;
  p.data_volume_bps = 70942720.0;
  CHECK(display_data_volume_mbps(p) == doctest::Approx(70.9427));
}
