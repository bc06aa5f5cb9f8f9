#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "lsched/model.hpp"
#include "lsched/queues.hpp"
#include "lsched/scheduler.hpp"

namespace lsched {

/// Time averages over one run of `horizon_slots` slots.
struct RunMetrics {
  std::uint64_t slots = 0;
  std::vector<double> nrt_throughput;        // sum mu R / (L T_s K), per NRT user
  std::vector<double> delivered_throughput;  // same, capped by the backlog
  std::vector<double> admitted_rate;         // admitted packets per slot
  std::vector<double> mean_q;                // average Q over slots 1..K, bits
  double avg_power = 0.0;                    // sum P mu / (K T_s)
  std::vector<double> rt_delivery_ratio;     // served packets / K
  std::vector<double> rt_arrival_rate;       // arrived packets / K
  std::vector<double> y_stability;           // Y(K) / K
  double x_stability = 0.0;                  // X(K) / K
  double avg_evaluations = 0.0;
  double mean_eligible_subsets = 0.0;        // average of 2^(arrived RT users)
  ControllerState final_state;

  friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

struct RunOptions {
  /// When set, receives one CSV row per slot boundary (slot 0..K).
  std::ostream* trajectory = nullptr;
};

/// What one slot did to the queues.
struct SlotStep {
  ControllerState next;
  std::vector<double> served_bits;     // mu R per NRT user
  std::vector<double> delivered_bits;  // min(mu R, Q + L r) per NRT user
  double energy = 0.0;                 // sum P mu over all users
};

/// Applies a decision: data, QoS and power queue updates for one slot.
SlotStep advance(const SystemConfig& config, const ControllerState& state,
                 const SlotObservation& obs, const SlotDecision& decision);

/// Runs the slot loop. Deterministic in config.rng_seed.
RunMetrics run(const SystemConfig& config, Algorithm algorithm, const RunOptions& options = {});

/// Constant of the drift bound and the resulting throughput gap C1 / (L B_max).
struct BoundReport {
  double c1 = 0.0;
  double gap_bound = 0.0;
  double r_max = 0.0;  // log(1 + p_max)
};

BoundReport throughput_gap_bound(const SystemConfig& config);

struct SweepPoint {
  std::size_t n_rt = 0;
  Algorithm algorithm = Algorithm::kLambertStrict;
  double avg_evaluations = 0.0;
  double mean_eligible_subsets = 0.0;
};

/// Seed used for the run at `n_rt`; shared by both algorithms.
std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t n_rt);

/// One run per n_rt value, executed concurrently, returned in input order.
std::vector<SweepPoint> complexity_sweep(const SystemConfig& base,
                                         std::span<const std::size_t> n_rt_values,
                                         Algorithm algorithm);

/// A random controller state and slot, for oracle comparisons.
struct SampledSlot {
  ControllerState state;
  SlotObservation obs;
};

/// Y uniform on [0, 100] (half of the draws rounded to integers, to produce
/// ties), X zero with probability 0.2 and otherwise uniform on [0, 30], Q
/// uniform on [0, b_max], gains from the configured fading, arrivals
/// Bernoulli(0.75) for every user.
SampledSlot sample_slot(const SystemConfig& config, Rng& rng);

struct EquivalenceReport {
  std::size_t samples = 0;
  std::size_t n_rt = 0;
  double max_discrepancy = 0.0;        // max |objective difference|
  std::size_t decision_mismatches = 0; // slots whose decisions differ in any field but evaluations
  double mean_evaluations_lambert = 0.0;
  double mean_evaluations_exhaustive = 0.0;
};

/// Runs both schedulers on `samples` sampled slots with shared tie-break seeds.
EquivalenceReport equivalence_check(const SystemConfig& config, std::size_t samples,
                                    std::uint64_t seed);

}  // namespace lsched
