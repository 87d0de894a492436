#include <doctest.h>

#include <sstream>

#include "cv2x/config.hpp"
#include "cv2x/sweep.hpp"

using namespace cv2x;

namespace {
RootConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "/cfg", "c.ini");
}
}  // namespace

TEST_CASE("empty config yields the baseline") {
  const RootConfig c = parse("");
  CHECK(c.scenario.highway_length_m == 3464);
  CHECK(c.scenario.lane_count == 6);
  CHECK(c.scenario.bs_count == 2);
  CHECK(c.scenario.isd_m == 1732);
  CHECK(c.scenario.comm_range_m == 400);
  CHECK(c.scenario.antenna_height_m == 1.5);
  CHECK(c.traffic.packet_size_bytes == 256);
  CHECK(c.traffic.message_rate_hz == 10);
  CHECK(c.traffic.bandwidth_hz == 10e6);
  CHECK(c.link_budget.eirp_dbm == 23);
  CHECK(c.link_budget.carrier_hz == 5.9e9);
  CHECK(c.iterations == 1000);
  CHECK(c.sweep.ivd_m == std::vector<double>{3, 5, 10, 20, 40, 50, 80, 100});
  CHECK(c.sweep.message_rate_hz == std::vector<double>{10});
  CHECK(c.table_source(100, true).synthetic);
  CHECK_FALSE(c.mcs_table.has_value());
}

TEST_CASE("sweep lists") {
  const RootConfig c = parse("[sweep]\nivd_m = 10, 20, 40, 50, 80, 100\nretx = off\n");
  CHECK(sweep_grid(c.sweep).size() == 6);
  const RootConfig d = parse("[sweep]\nmessage_rate_hz = 2,5,10\nspeed_kmh=100,250\nretx=off,on\nivd_m=10\n");
  CHECK(sweep_grid(d.sweep).size() == 12);
}

TEST_CASE("sections and table keys") {
  const RootConfig c = parse(
      "[scenario]\nhighway_length_m = 6928\nbs_count = 4\noffsets = zero\n"
      "[link]\nnoise_figure_db = 7\nshadowing_sigma_db = 3\n"
      "[sim]\niterations = 50\nseed = 9\n"
      "[tables]\nmcs = mcs.csv\nnoretx_100 = l2s1.csv\nretx_100 = /abs/l2s2.csv\nnoretx_250 = synthetic\n"
      "[output]\ndir = results\n");
  CHECK(c.scenario.highway_length_m == 6928);
  CHECK(c.scenario.bs_count == 4);
  CHECK(c.scenario.offsets == OffsetMode::zero);
  CHECK(c.link_budget.noise_figure_db == 7);
  CHECK(c.iterations == 50);
  CHECK(c.seed == 9);
  CHECK(*c.mcs_table == std::filesystem::path("/cfg/mcs.csv"));
  CHECK(c.table_source(100, false).path == std::filesystem::path("/cfg/l2s1.csv"));
  CHECK(c.table_source(100, true).path == std::filesystem::path("/abs/l2s2.csv"));
  CHECK(c.table_source(250, false).synthetic);
  CHECK(c.output_dir == std::filesystem::path("results"));
}

TEST_CASE("config errors name the field") {
  CHECK_THROWS_WITH(parse("[scenario]\nlane_cnt = 3\n"), doctest::Contains("scenario.lane_cnt"));
  CHECK_THROWS_WITH(parse("[bogus]\nx = 1\n"), doctest::Contains("bogus"));
  CHECK_THROWS_WITH(parse("[scenario]\nivd_m = 3\n"), doctest::Contains("scenario.ivd_m"));
  CHECK_THROWS_WITH(parse("[sim]\niterations = many\n"), doctest::Contains("sim.iterations"));
  CHECK_THROWS_WITH(parse("[sim]\niterations = 0\n"), doctest::Contains("sim.iterations"));
  CHECK_THROWS_WITH(parse("[scenario]\ncomm_range_m = 2000\n"), doctest::Contains("scenario.comm_range_m"));
  CHECK_THROWS_WITH(parse("[sweep]\nretx = maybe\n"), doctest::Contains("sweep.retx"));
  CHECK_THROWS_WITH(parse("[sweep]\nivd_m = \n"), doctest::Contains("sweep.ivd_m"));
  CHECK_THROWS_WITH(parse("[tables]\nfast = x.csv\n"), doctest::Contains("tables.fast"));
  CHECK_THROWS_WITH(parse("[sim]\nseed = 1\nseed = 2\n"), doctest::Contains("c.ini:"));
  CHECK_THROWS(parse("[sim\n"));
}

TEST_CASE("fingerprint is stable and sensitive") {
  const RootConfig a = parse("[sim]\nseed = 3\n");
  const RootConfig b = parse("[sim]\nseed = 3\n");
  CHECK(a.fingerprint() == b.fingerprint());
  CHECK(a.fingerprint().size() == 64);
  CHECK(a.fingerprint() != parse("[sim]\nseed = 4\n").fingerprint());
  RootConfig c = a;
  c.output_dir = "elsewhere";
  CHECK(c.fingerprint() == a.fingerprint());
}
