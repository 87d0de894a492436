// Command-line driver: runs a PRR sweep and writes CSV results.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cv2x/config.hpp"
#include "cv2x/sweep.hpp"

int main(int argc, char** argv) {
  CLI::App app{"C-V2X sidelink mode-3 PRR simulator with optional blind retransmission"};

  std::string config_path;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  bool no_parallel = false;
  app.add_option("--config", config_path, "INI configuration file (omit for baseline defaults)");
  app.add_option("--output", output_dir, "Output directory (overrides [output] dir)");
  app.add_option("--seed", seed, "Root RNG seed (overrides [sim] seed)");
  app.add_flag("--no-parallel", no_parallel, "Run grid cells sequentially");
  CLI11_PARSE(app, argc, argv);

  try {
    cv2x::RootConfig config = config_path.empty() ? cv2x::RootConfig{} : cv2x::load_config(config_path);
    if (seed) config.seed = *seed;
    if (!output_dir.empty()) config.output_dir = output_dir;
    config.validate();

    const cv2x::SweepOutcome outcome = cv2x::run_sweep(config, {.parallel = !no_parallel});
    for (const auto& f : outcome.failures) {
      std::cerr << fmt::format("cell {} failed: {}\n", cv2x::point_id(f.key), f.message);
    }
    if (!outcome.result.points.empty()) {
      cv2x::write_outputs(outcome, config.output_dir);
      cv2x::emit_plot_data(outcome.result, config.output_dir);
    }
    std::cout << fmt::format("{} cells, {} failed, results in {}\n", outcome.result.points.size(),
                             outcome.failures.size(), config.output_dir.string());
    return outcome.failures.empty() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
