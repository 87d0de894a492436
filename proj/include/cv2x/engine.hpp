#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "cv2x/channel.hpp"
#include "cv2x/l2s.hpp"
#include "cv2x/random.hpp"
#include "cv2x/scenario.hpp"
#include "cv2x/traffic_load.hpp"

namespace cv2x {

struct SimConfig {
  int iterations = 1000;
  bool retx_enabled = false;
  std::uint64_t rng_seed = 1;
  std::shared_ptr<const L2sTable> table_first;  // no retransmission
  std::shared_ptr<const L2sTable> table_retx;   // one blind retransmission
  bool record_iterations = false;

  void validate() const;
};

struct Reception {
  int rx_id = 0;
  double sinr_db_first = 0.0;
  std::optional<double> sinr_db_second;
  double effective_sinr_db = 0.0;
  double bler = 1.0;
  bool received = false;
};

struct TxRecord {
  int bs = 0;
  int tx_id = 0;
  // False when the Tx lies outside the evaluation region; receptions empty.
  bool evaluated = false;
  // Other-BS transmitters redrawn for the retransmission slot.
  std::vector<int> retx_interferer_ids;
  std::vector<Reception> receptions;
};

struct IterationOutcome {
  std::vector<TxRecord> per_bs;
};

/// 1 dB bins over effective SINR; out-of-range samples land in the edge bins.
struct SinrHistogram {
  static constexpr double kLowDb = -30.0;
  static constexpr double kWidthDb = 1.0;
  static constexpr int kBins = 80;

  std::vector<long> counts = std::vector<long>(kBins, 0);
  std::vector<long> received = std::vector<long>(kBins, 0);
  double sum_db = 0.0;
  long samples = 0;

  void add(double sinr_db, bool was_received);
  void merge(const SinrHistogram& other);
  double mean_db() const;
  static int bin_of(double sinr_db);
};

struct RunResult {
  double runtime_prr = 0.0;
  long received_total = 0;
  long evaluated_total = 0;
  SinrHistogram sinr;
  std::vector<IterationOutcome> per_iteration;
};

/// Vehicle indices eligible to transmit, per BS.
using SupportedSets = std::vector<std::vector<int>>;

/// Per-iteration random substreams.
struct IterationStreams {
  Rng tx_select;
  Rng retx_redraw;
  Rng reception;
  Rng shadowing;

  static IterationStreams for_iteration(std::uint64_t seed, std::uint64_t iteration);
};

/// Keeps every controlled UE when not overloaded; otherwise a uniformly
/// random subset of ue_supported UEs per BS (drawn once per run).
SupportedSets supported_ues(const Deployment& deployment, const LoadPlan& plan, std::uint64_t seed);

/// One uniformly random supported UE per BS. Throws std::runtime_error
/// if a BS has no supported UE.
std::vector<int> select_transmitters(const Deployment& deployment, const SupportedSets& supported, Rng& rng);

/// Received iff X >= bler for X ~ U[0,1).
bool receive_decision(double bler, Rng& rng);

/// Mean of two SINRs in linear scale, returned in dB.
double average_sinr_db(double first_db, double second_db);

IterationOutcome run_iteration(const Deployment& deployment, const LoadPlan& plan, const SimConfig& sim,
                               const LinkBudget& budget, const SupportedSets& supported,
                               IterationStreams& streams);

RunResult run(const Deployment& deployment, const LoadPlan& plan, const SimConfig& sim, const LinkBudget& budget);

}  // namespace cv2x
