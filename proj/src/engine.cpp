#include "cv2x/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "cv2x/units.hpp"

namespace cv2x {
namespace {

// Received power from `from` at `to`, with an optional shadowing draw.
double link_power_dbm(const Vehicle& from, const Vehicle& to, const LinkBudget& budget, Rng& shadowing) {
  double p = received_power_dbm(distance_m(from, to), budget);
  if (budget.shadowing_sigma_db > 0) p += budget.shadowing_sigma_db * shadowing.normal();
  return p;
}

double sinr_db_at(const Deployment& dep, int tx, int rx, const std::vector<int>& interferers,
                  const LinkBudget& budget, double noise_mw, Rng& shadowing) {
  const auto& rxv = dep.vehicles[static_cast<std::size_t>(rx)];
  const double signal = link_power_dbm(dep.vehicles[static_cast<std::size_t>(tx)], rxv, budget, shadowing);
  double interference = 0.0;
  for (int i : interferers) {
    if (i == rx || i == tx) continue;
    interference += dbm_to_mw(link_power_dbm(dep.vehicles[static_cast<std::size_t>(i)], rxv, budget, shadowing));
  }
  return make_sinr_sample(signal, interference, noise_mw).sinr_db;
}

std::vector<int> others(const std::vector<int>& txs, std::size_t skip) {
  std::vector<int> out;
  out.reserve(txs.size());
  for (std::size_t b = 0; b < txs.size(); ++b) {
    if (b != skip) out.push_back(txs[b]);
  }
  return out;
}

}  // namespace

void SimConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("sim.iterations: must be >= 1");
  if (!table_first && !retx_enabled) throw std::invalid_argument("sim.table_first: required without retransmission");
  if (retx_enabled && !table_retx) throw std::invalid_argument("sim.table_retx: required with retransmission");
}

int SinrHistogram::bin_of(double sinr_db) {
  const auto b = static_cast<int>(std::floor((sinr_db - kLowDb) / kWidthDb));
  return std::clamp(b, 0, kBins - 1);
}

void SinrHistogram::add(double sinr_db, bool was_received) {
  const auto b = static_cast<std::size_t>(bin_of(sinr_db));
  ++counts[b];
  if (was_received) ++received[b];
  sum_db += sinr_db;
  ++samples;
}

void SinrHistogram::merge(const SinrHistogram& other) {
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts[i] += other.counts[i];
    received[i] += other.received[i];
  }
  sum_db += other.sum_db;
  samples += other.samples;
}

double SinrHistogram::mean_db() const { return samples > 0 ? sum_db / static_cast<double>(samples) : 0.0; }

IterationStreams IterationStreams::for_iteration(std::uint64_t seed, std::uint64_t iteration) {
  return {Rng(derive_seed(seed, Stream::tx_select, iteration)), Rng(derive_seed(seed, Stream::retx_redraw, iteration)),
          Rng(derive_seed(seed, Stream::reception, iteration)), Rng(derive_seed(seed, Stream::shadowing, iteration))};
}

SupportedSets supported_ues(const Deployment& deployment, const LoadPlan& plan, std::uint64_t seed) {
  SupportedSets sets = deployment.controlled_by_bs();
  if (!plan.overloaded) return sets;
  Rng rng(derive_seed(seed, Stream::drop));
  for (auto& ues : sets) {
    const auto keep = static_cast<std::size_t>(std::max<long>(plan.ue_supported, 0));
    if (ues.size() <= keep) continue;
    // Partial Fisher-Yates: the first `keep` slots become a uniform subset.
    for (std::size_t i = 0; i < keep; ++i) {
      std::swap(ues[i], ues[i + rng.uniform_index(ues.size() - i)]);
    }
    ues.resize(keep);
    std::sort(ues.begin(), ues.end());
  }
  return sets;
}

std::vector<int> select_transmitters(const Deployment& deployment, const SupportedSets& supported, Rng& rng) {
  if (supported.size() != deployment.base_stations.size()) {
    throw std::invalid_argument("supported set count does not match BS count");
  }
  std::vector<int> txs;
  txs.reserve(supported.size());
  for (std::size_t b = 0; b < supported.size(); ++b) {
    if (supported[b].empty()) throw std::runtime_error("BS " + std::to_string(b) + " has no supported UE");
    txs.push_back(supported[b][rng.uniform_index(supported[b].size())]);
  }
  return txs;
}

bool receive_decision(double bler, Rng& rng) { return rng.uniform01() >= bler; }

double average_sinr_db(double first_db, double second_db) {
  return linear_to_db((db_to_linear(first_db) + db_to_linear(second_db)) / 2.0);
}

IterationOutcome run_iteration(const Deployment& deployment, const LoadPlan& plan, const SimConfig& sim,
                               const LinkBudget& budget, const SupportedSets& supported,
                               IterationStreams& streams) {
  const std::vector<int> txs = select_transmitters(deployment, supported, streams.tx_select);
  const L2sTable& table = sim.retx_enabled ? *sim.table_retx : *sim.table_first;
  const double noise_mw = noise_power_mw(budget);

  IterationOutcome outcome;
  outcome.per_bs.reserve(txs.size());
  for (std::size_t b = 0; b < txs.size(); ++b) {
    TxRecord record;
    record.bs = static_cast<int>(b);
    record.tx_id = txs[b];
    const Vehicle& tx = deployment.vehicles[static_cast<std::size_t>(record.tx_id)];
    record.evaluated = deployment.eval_region.contains(tx.x_m);
    if (!record.evaluated) {
      outcome.per_bs.push_back(std::move(record));
      continue;
    }

    const std::vector<int> first_interferers = others(txs, b);
    std::vector<int> second_interferers;
    if (sim.retx_enabled) {
      // Independent redraw of every other BS's transmitter for the retx slot.
      second_interferers.reserve(first_interferers.size());
      for (std::size_t o = 0; o < supported.size(); ++o) {
        if (o == b) continue;
        second_interferers.push_back(supported[o][streams.retx_redraw.uniform_index(supported[o].size())]);
      }
      record.retx_interferer_ids = second_interferers;
    }

    for (const auto& rx : deployment.vehicles) {
      if (rx.id == tx.id || !in_comm_range(tx, rx, deployment.comm_range_m)) continue;
      Reception r;
      r.rx_id = rx.id;
      r.sinr_db_first = sinr_db_at(deployment, tx.id, rx.id, first_interferers, budget, noise_mw, streams.shadowing);
      r.effective_sinr_db = r.sinr_db_first;
      if (sim.retx_enabled) {
        r.sinr_db_second =
            sinr_db_at(deployment, tx.id, rx.id, second_interferers, budget, noise_mw, streams.shadowing);
        r.effective_sinr_db = average_sinr_db(r.sinr_db_first, *r.sinr_db_second);
      }
      r.bler = bler_lookup(table, {plan.operating_mcs, r.effective_sinr_db});
      r.received = receive_decision(r.bler, streams.reception);
      record.receptions.push_back(r);
    }
    outcome.per_bs.push_back(std::move(record));
  }
  return outcome;
}

RunResult run(const Deployment& deployment, const LoadPlan& plan, const SimConfig& sim, const LinkBudget& budget) {
  sim.validate();
  budget.validate();
  const SupportedSets supported = supported_ues(deployment, plan, sim.rng_seed);

  RunResult result;
  for (int it = 0; it < sim.iterations; ++it) {
    IterationStreams streams = IterationStreams::for_iteration(sim.rng_seed, static_cast<std::uint64_t>(it));
    IterationOutcome outcome = run_iteration(deployment, plan, sim, budget, supported, streams);
    for (const auto& rec : outcome.per_bs) {
      for (const auto& r : rec.receptions) {
        ++result.evaluated_total;
        if (r.received) ++result.received_total;
        result.sinr.add(r.effective_sinr_db, r.received);
      }
    }
    if (sim.record_iterations) result.per_iteration.push_back(std::move(outcome));
  }
  if (result.evaluated_total == 0) {
    throw std::runtime_error("no evaluated receptions: no transmitter inside the evaluation region had receivers");
  }
  result.runtime_prr = static_cast<double>(result.received_total) / static_cast<double>(result.evaluated_total);
  return result;
}

}  // namespace cv2x
