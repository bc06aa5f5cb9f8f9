#include "lsched/scheduler.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "lsched/errors.hpp"

namespace lsched {
namespace {

using Mask = std::uint64_t;
constexpr std::size_t kMaxMaskUsers = 63;

// Arrived RT users sorted by descending Y, ties by ascending id. Every strict
// dominator of a user precedes it in this order.
std::vector<std::size_t> eligible_by_queue(const ControllerState& state,
                                           const SlotObservation& obs,
                                           const SystemConfig& config) {
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < config.n_rt; ++i) {
    if (obs.rt_arrival(i)) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return state.y[a] > state.y[b]; });
  return order;
}

std::vector<std::size_t> members_of(Mask mask, const std::vector<std::size_t>& order) {
  std::vector<std::size_t> ids;
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (mask >> p & 1U) ids.push_back(order[p]);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

void sort_by_cardinality(std::vector<Mask>& masks) {
  std::stable_sort(masks.begin(), masks.end(),
                   [](Mask a, Mask b) { return std::popcount(a) < std::popcount(b); });
}

std::vector<Mask> all_sets(std::size_t n) {
  std::vector<Mask> masks(std::size_t{1} << n);
  std::iota(masks.begin(), masks.end(), Mask{0});
  sort_by_cardinality(masks);
  return masks;
}

// Sets closed under strict dominators, i.e. exactly those prune_check keeps.
std::vector<Mask> viable_sets(const std::vector<std::size_t>& order, const ControllerState& state,
                              const SlotObservation& obs) {
  const std::size_t n = order.size();
  std::vector<Mask> dominators(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (state.y[order[i]] > state.y[order[j]] && obs.gains[order[i]] > obs.gains[order[j]]) {
        dominators[j] |= Mask{1} << i;
      }
    }
  }
  std::vector<Mask> masks;
  auto visit = [&](auto&& self, std::size_t pos, Mask mask) -> void {
    if (pos == n) {
      masks.push_back(mask);
      return;
    }
    self(self, pos + 1, mask);
    if ((dominators[pos] & ~mask) == 0) self(self, pos + 1, mask | Mask{1} << pos);
  };
  visit(visit, 0, 0);
  sort_by_cardinality(masks);
  return masks;
}

bool beats(double objective, const std::vector<std::size_t>& ids, double best_objective,
           const std::vector<std::size_t>& best_ids) {
  if (objective != best_objective) return objective > best_objective;
  if (ids.size() != best_ids.size()) return ids.size() < best_ids.size();
  return ids < best_ids;
}

SlotDecision search(const std::vector<Mask>& masks, const std::vector<std::size_t>& order,
                    const ControllerState& state, const SlotObservation& obs,
                    const SystemConfig& config, Rng& rng) {
  const auto nrt = select_nrt(state, obs, config, rng);
  const double psi_star = nrt ? nrt->psi_star : 0.0;

  std::optional<RtAllocation> best;
  std::uint64_t evaluations = 0;
  for (const Mask mask : masks) {
    const auto ids = members_of(mask, order);
    ++evaluations;
    auto alloc = pack_rt_set(ids, state, obs, psi_star, config);
    if (!alloc) continue;
    if (!best || beats(alloc->objective, alloc->set, best->objective, best->set)) {
      best = std::move(alloc);
    }
  }

  SlotDecision decision;
  const std::size_t n = config.n_users();
  decision.powers.assign(n, 0.0);
  decision.airtimes.assign(n, 0.0);
  decision.evaluations = evaluations;
  // The empty set always packs, so `best` is set.
  decision.rt_set = best->set;
  decision.objective = best->objective;
  for (std::size_t m = 0; m < best->set.size(); ++m) {
    decision.powers[best->set[m]] = best->powers[m];
    decision.airtimes[best->set[m]] = best->airtimes[m];
  }
  if (nrt && best->nrt_airtime > 0.0) {
    const std::size_t idx = config.nrt_index(nrt->user);
    decision.nrt_user = nrt->user;
    decision.powers[idx] = nrt->power;
    decision.airtimes[idx] = best->nrt_airtime;
  }
  decision.admissions.resize(config.n_nrt);
  for (std::size_t i = 0; i < config.n_nrt; ++i) {
    decision.admissions[i] =
        admit(state.q[i], obs.arrivals[config.nrt_index(i)], config.b_max);
  }
  return decision;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  return algorithm == Algorithm::kLambertStrict ? "lambert_strict" : "exhaustive";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "lambert" || name == "lambert_strict") return Algorithm::kLambertStrict;
  if (name == "exhaustive") return Algorithm::kExhaustive;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

PruneVerdict prune_check(std::span<const std::size_t> set, std::span<const std::size_t> eligible,
                         std::span<const double> y, std::span<const double> gains) {
  for (const std::size_t i : eligible) {
    if (std::find(set.begin(), set.end(), i) != set.end()) continue;
    for (const std::size_t j : set) {
      if (y[i] > y[j] && gains[i] > gains[j]) return PruneVerdict::kPrunable;
    }
  }
  return PruneVerdict::kViable;
}

SlotDecision lambert_strict(const ControllerState& state, const SlotObservation& obs,
                            const SystemConfig& config, Rng& rng) {
  const auto order = eligible_by_queue(state, obs, config);
  if (order.size() > kMaxMaskUsers) {
    throw SizeGuardError("lambert_strict: more than 63 arrived real-time users");
  }
  return search(viable_sets(order, state, obs), order, state, obs, config, rng);
}

SlotDecision exhaustive_search(const ControllerState& state, const SlotObservation& obs,
                               const SystemConfig& config, Rng& rng) {
  if (config.n_rt > kExhaustiveMaxUsers) {
    throw SizeGuardError("exhaustive_search: n_rt = " + std::to_string(config.n_rt) +
                         " exceeds the limit of " + std::to_string(kExhaustiveMaxUsers));
  }
  const auto order = eligible_by_queue(state, obs, config);
  return search(all_sets(order.size()), order, state, obs, config, rng);
}

SlotDecision schedule(Algorithm algorithm, const ControllerState& state, const SlotObservation& obs,
                      const SystemConfig& config, Rng& rng) {
  return algorithm == Algorithm::kLambertStrict ? lambert_strict(state, obs, config, rng)
                                                : exhaustive_search(state, obs, config, rng);
}

}  // namespace lsched
