#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace cv2x {

/// Named substreams derived from one root seed. Each consumer owns its
/// stream so that enabling one feature never shifts another's draws.
enum class Stream : std::uint64_t {
  lane_offsets = 1,
  drop = 2,
  tx_select = 3,
  retx_redraw = 4,
  reception = 5,
  shadowing = 6,
  cell = 7,
  deployment = 8,
};

std::uint64_t splitmix64(std::uint64_t x);

/// Seed for substream `stream` at position `index` (iteration, cell, ...).
std::uint64_t derive_seed(std::uint64_t root, Stream stream, std::uint64_t index = 0);

/// Thin wrapper over mt19937_64. Uniforms are built from raw 64-bit
/// draws so sequences do not depend on the standard library's
/// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n);

  /// Standard normal draw (Box-Muller on uniform01).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace cv2x
