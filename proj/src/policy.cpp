#include "lsched/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lsched/errors.hpp"
#include "lsched/mathkit.hpp"

namespace lsched {
namespace {

constexpr double kSeriesCutoff = 1e-12;
constexpr int kMaxBracketDoublings = 2048;

double leftover(std::span<const double> airtimes, double slot_seconds) {
  double used = 0.0;
  for (double mu : airtimes) used += mu;
  return std::max(slot_seconds - used, 0.0);
}

double objective_value(std::span<const double> psi, std::span<const double> airtimes,
                       double psi_star, double slot_seconds) {
  double total = 0.0;
  for (double v : psi) total += v;
  return total + psi_star * leftover(airtimes, slot_seconds);
}

}  // namespace

double nrt_power(double q_i, double x, double gain, double p_max, double slot_seconds) {
  if (!(gain > 0.0)) return 0.0;
  if (x == 0.0) return p_max;
  const double level = slot_seconds * q_i / x - 1.0 / gain;
  return std::min(std::max(level, 0.0), p_max);
}

double nrt_psi(double q_i, double x, double gain, double power, double slot_seconds) {
  return q_i * rate(power, gain) - x * power / slot_seconds;
}

std::optional<NrtCandidate> select_nrt(const ControllerState& state, const SlotObservation& obs,
                                       const SystemConfig& config, Rng& rng) {
  std::vector<NrtCandidate> best;
  for (std::size_t i = 0; i < config.n_nrt; ++i) {
    const double gain = obs.gains[config.nrt_index(i)];
    const double power = nrt_power(state.q[i], state.x, gain, config.p_max, config.slot_seconds);
    const double psi = nrt_psi(state.q[i], state.x, gain, power, config.slot_seconds);
    if (best.empty() || psi > best.front().psi_star) {
      best.assign(1, NrtCandidate{i, power, psi});
    } else if (psi == best.front().psi_star) {
      best.push_back(NrtCandidate{i, power, psi});
    }
  }
  if (best.empty() || !(best.front().psi_star > 0.0)) return std::nullopt;
  if (best.size() == 1) return best.front();
  return best[rng.pick(best.size())];
}

double rt_power(double gain, double phi_tilde, double p_max) {
  if (!(gain > 0.0)) throw DomainError("rt_power: gain must be positive");
  if (!(phi_tilde >= 0.0)) throw DomainError("rt_power: phi_tilde must be nonnegative");
  const double z = phi_tilde * gain - 1.0;
  if (!std::isfinite(z)) return p_max;
  const double ratio =
      std::abs(z) <= kSeriesCutoff ? mathkit::kE : z / mathkit::lambert_w0(z * mathkit::kInvE).value;
  const double power = (ratio - 1.0) / gain;
  return std::min(std::max(power, 0.0), p_max);
}

double rt_power_as_printed(double gain, double phi_tilde, double p_max) {
  if (!(gain > 0.0)) throw DomainError("rt_power_as_printed: gain must be positive");
  const double z = phi_tilde * gain - 1.0;
  if (z < 0.0) throw DomainError("rt_power_as_printed: phi_tilde * gain - 1 is negative");
  if (!std::isfinite(z)) return p_max;
  const double ratio = z <= kSeriesCutoff ? 1.0 : z / mathkit::lambert_w0(z).value;
  return std::min(std::max((ratio - 1.0) / gain, 0.0), p_max);
}

double rt_psi(double y_i, double x, double power, double airtime, double slot_seconds,
              bool scheduled) {
  if (!scheduled) return 0.0;
  return y_i - x * power * airtime / slot_seconds;
}

std::optional<RtAllocation> pack_rt_set(std::span<const std::size_t> set,
                                        const ControllerState& state, const SlotObservation& obs,
                                        double nrt_psi_star, const SystemConfig& config) {
  const double ts = config.slot_seconds;
  const double bits = config.packet_bits;
  const double p_max = config.p_max;
  const double x = state.x;
  const std::size_t n = set.size();

  RtAllocation alloc;
  alloc.set.assign(set.begin(), set.end());
  alloc.powers.assign(n, p_max);
  alloc.airtimes.assign(n, 0.0);
  alloc.psi.assign(n, 0.0);

  std::vector<double> gains(n);
  for (std::size_t m = 0; m < n; ++m) {
    gains[m] = obs.gains[set[m]];
    if (!(gains[m] > 0.0)) return std::nullopt;
  }

  auto total_airtime = [&](const std::vector<double>& powers) {
    double total = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
      const double r = rate(powers[m], gains[m]);
      total += r > 0.0 ? bits / r : std::numeric_limits<double>::infinity();
    }
    return total;
  };

  if (total_airtime(alloc.powers) > ts) return std::nullopt;

  if (x > 0.0 && n > 0) {
    std::vector<double> powers(n);
    auto powers_at = [&](double phi) {
      const double phi_tilde = (nrt_psi_star + phi) * ts / x;
      for (std::size_t m = 0; m < n; ++m) powers[m] = rt_power(gains[m], phi_tilde, p_max);
      return total_airtime(powers);
    };

    double phi = 0.0;
    if (powers_at(0.0) > ts) {
      double hi = config.phi_max;
      for (int k = 0; k < kMaxBracketDoublings; ++k) {
        powers_at(hi);
        if (std::all_of(powers.begin(), powers.end(), [&](double p) { return p == p_max; })) break;
        hi *= 2.0;
      }
      phi = mathkit::solve_monotone_root([&](double v) { return powers_at(v) - ts; }, 0.0, hi,
                                         0.0, config.airtime_tolerance());
    }
    powers_at(phi);
    alloc.powers = powers;
    alloc.phi = phi;
  }

  for (std::size_t m = 0; m < n; ++m) {
    alloc.airtimes[m] = rt_airtime(alloc.powers[m], gains[m], bits);
    alloc.psi[m] = rt_psi(state.y[set[m]], x, alloc.powers[m], alloc.airtimes[m], ts);
  }
  alloc.nrt_airtime = leftover(alloc.airtimes, ts);
  alloc.objective = objective_value(alloc.psi, alloc.airtimes, nrt_psi_star, ts);
  return alloc;
}

double set_objective(const RtAllocation& alloc, const std::optional<NrtCandidate>& nrt,
                     double slot_seconds) {
  return objective_value(alloc.psi, alloc.airtimes, nrt ? nrt->psi_star : 0.0, slot_seconds);
}

}  // namespace lsched
