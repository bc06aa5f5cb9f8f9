#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lsched/model.hpp"
#include "lsched/policy.hpp"
#include "lsched/queues.hpp"

namespace lsched {

/// Everything the controller decides in one slot.
struct SlotDecision {
  std::vector<std::size_t> rt_set;      // RT ids, ascending
  std::optional<std::size_t> nrt_user;  // NRT index of the scheduled NRT user
  std::vector<double> powers;           // per user, 0 when unscheduled
  std::vector<double> airtimes;         // per user, seconds
  std::vector<int> admissions;          // per NRT user
  double objective = 0.0;
  std::uint64_t evaluations = 0;        // sets whose objective was computed

  friend bool operator==(const SlotDecision&, const SlotDecision&) = default;
};

enum class Algorithm { kLambertStrict, kExhaustive };

std::string_view to_string(Algorithm algorithm);
/// Accepts "lambert", "lambert_strict", "exhaustive". Throws ConfigError.
Algorithm parse_algorithm(std::string_view name);

/// Largest N_R the exhaustive search accepts.
inline constexpr std::size_t kExhaustiveMaxUsers = 20;

enum class PruneVerdict { kViable, kPrunable };

/// A set is prunable when some outsider beats some member strictly on both
/// the QoS virtual queue and the channel gain. `set` holds RT ids; `eligible`
/// lists the RT ids that may be scheduled this slot (outsiders are drawn
/// from it).
PruneVerdict prune_check(std::span<const std::size_t> set, std::span<const std::size_t> eligible,
                         std::span<const double> y, std::span<const double> gains);

/// The Lambert-Strict controller: NRT candidate, dominance-pruned search over
/// RT sets of arrived users, packing, argmax, leftover airtime to the NRT
/// user, admission control.
SlotDecision lambert_strict(const ControllerState& state, const SlotObservation& obs,
                            const SystemConfig& config, Rng& rng);

/// Same as lambert_strict without pruning; evaluates all 2^|eligible| sets.
/// Throws SizeGuardError when n_rt exceeds kExhaustiveMaxUsers.
SlotDecision exhaustive_search(const ControllerState& state, const SlotObservation& obs,
                               const SystemConfig& config, Rng& rng);

SlotDecision schedule(Algorithm algorithm, const ControllerState& state, const SlotObservation& obs,
                      const SystemConfig& config, Rng& rng);

}  // namespace lsched
