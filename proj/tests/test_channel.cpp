#include <doctest.h>

#include <cmath>
#include <vector>

#include "cv2x/channel.hpp"
#include "cv2x/random.hpp"
#include "cv2x/units.hpp"
#include "support.hpp"

using namespace cv2x;

namespace {
Vehicle at(double x, double y = 0) { return Vehicle{0, 0, x, y, 0}; }
}  // namespace

TEST_CASE("pathloss_db reference values") {
  const LinkBudget b;
  // 22.7 * 1 + 41.0 + 20 * log10(1.18) = 65.1376
  CHECK(pathloss_db(10, b) == doctest::Approx(65.1376).epsilon(1e-5));
  CHECK(breakpoint_distance_m(b) == doctest::Approx(19.6801).epsilon(1e-4));

  // Continuity at the breakpoint.
  const double dbp = breakpoint_distance_m(b);
  const double near = 22.7 * std::log10(dbp) + 41.0 + 20.0 * std::log10(1.18);
  const double far = 40.0 * std::log10(dbp) + 9.45 - 34.6 * std::log10(0.5) + 2.7 * std::log10(1.18);
  CHECK(std::abs(near - far) < 0.5);
  CHECK(std::abs(pathloss_db(dbp * (1 + 1e-9), b) - pathloss_db(dbp, b)) < 0.5);

  // 22.7 dB per decade before the breakpoint (tall antennas push it out).
  LinkBudget tall;
  tall.antenna_height_m = 10.0;
  CHECK(pathloss_db(100, tall) - pathloss_db(10, tall) == doctest::Approx(22.7));

  // Clamp below 3 m.
  CHECK(pathloss_db(0.1, b) == pathloss_db(3.0, b));
  CHECK(pathloss_db(0.0, b) == pathloss_db(3.0, b));

  for (double d : {3.0, 15.0, 19.0, 25.0, 100.0, 400.0, 1732.0}) {
    CHECK(pathloss_db(d, b) == doctest::Approx(test::oracle_pathloss_db(d)).epsilon(1e-12));
  }
}

TEST_CASE("noise_power_mw") {
  LinkBudget b;
  CHECK(mw_to_dbm(noise_power_mw(b)) == doctest::Approx(-95.0));
  b.bandwidth_hz = 1;
  b.noise_figure_db = 0;
  CHECK(mw_to_dbm(noise_power_mw(b)) == doctest::Approx(-174.0));
  b.bandwidth_hz = 10e6;
  CHECK(mw_to_dbm(noise_power_mw(b)) == doctest::Approx(-104.0));
}

TEST_CASE("sinr examples") {
  CHECK(make_sinr_sample(-95.0, 0.0, dbm_to_mw(-95.0)).sinr_db == doctest::Approx(0.0));

  const LinkBudget b;
  const Vehicle tx = at(0, 0);
  const Vehicle rx = at(10, 0);
  const std::vector<Vehicle> colocated{at(0, 0)};
  const SinrSample s = sinr(tx, rx, colocated, b);
  CHECK(s.sinr_db == doctest::Approx(0.0).epsilon(1e-4));
  CHECK(s.sinr_db < 0.0);

  // Signal at 100 m, interferer at 1000 m; oracle from closed-form pathloss.
  const std::vector<Vehicle> far{at(1100, 0)};
  const SinrSample mixed = sinr(at(0), at(100), far, b);
  CHECK(std::abs(mixed.sinr_db - test::oracle_sinr_db(100, {1000})) < 0.01);
  CHECK(mixed.interference_mw > 0.0);
  CHECK(mixed.signal_dbm == doctest::Approx(23.0 - test::oracle_pathloss_db(100)));
}

TEST_CASE("pathloss is monotone non-decreasing in distance") {
  const LinkBudget b;
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double d1 = 3.0 + 2000 * rng.uniform01();
    const double d2 = 3.0 + 2000 * rng.uniform01();
    CHECK(pathloss_db(std::min(d1, d2), b) <= pathloss_db(std::max(d1, d2), b));
  }
}

TEST_CASE("sinr is antitone in interferer proximity and count") {
  const LinkBudget b;
  Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Vehicle tx = at(0, 0);
    const Vehicle rx = at(400 * rng.uniform01(), -10 + 20 * rng.uniform01());
    std::vector<Vehicle> interferers;
    const int n = 1 + static_cast<int>(rng.uniform_index(3));
    for (int k = 0; k < n; ++k) interferers.push_back(at(-2000 + 4000 * rng.uniform01(), -10 + 20 * rng.uniform01()));
    const double base = sinr(tx, rx, interferers, b).sinr_db;

    // Move one interferer toward rx.
    std::vector<Vehicle> closer = interferers;
    auto& moved = closer[rng.uniform_index(closer.size())];
    const double t = rng.uniform01();
    moved.x_m = rx.x_m + t * (moved.x_m - rx.x_m);
    moved.y_m = rx.y_m + t * (moved.y_m - rx.y_m);
    CHECK(sinr(tx, rx, closer, b).sinr_db <= base + 1e-12);

    // Drop one interferer.
    std::vector<Vehicle> fewer = interferers;
    fewer.erase(fewer.begin() + static_cast<long>(rng.uniform_index(fewer.size())));
    CHECK(sinr(tx, rx, fewer, b).sinr_db >= base - 1e-12);
  }
}

TEST_CASE("dB and mW round-trip") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double mw = std::pow(10.0, -20 + 25 * rng.uniform01());
    CHECK(std::abs(dbm_to_mw(mw_to_dbm(mw)) - mw) <= 1e-9 * mw);
    const double db = -200 + 300 * rng.uniform01();
    CHECK(std::abs(linear_to_db(db_to_linear(db)) - db) <= 1e-9 * std::max(1.0, std::abs(db)));
  }
}
