#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lsched/model.hpp"
#include "lsched/queues.hpp"

namespace lsched {

/// Best non-real-time user of a slot with its water-filling power.
struct NrtCandidate {
  std::size_t user = 0;   // NRT index, 0..n_nrt-1
  double power = 0.0;
  double psi_star = 0.0;  // value per second of airtime given to this user
};

/// Powers and airtimes for one packed real-time set. Vectors are parallel
/// to `set`, which holds RT ids in ascending order.
struct RtAllocation {
  std::vector<std::size_t> set;
  std::vector<double> powers;
  std::vector<double> airtimes;
  std::vector<double> psi;  // per-member rt_psi
  double phi = 0.0;
  double nrt_airtime = 0.0;  // T_s minus the RT airtime, never negative
  double objective = 0.0;
};

/// Water-filling power maximising q R - x P / T_s:
/// min((T_s q / x - 1/gain)^+, p_max). Returns p_max when x == 0 and 0 when
/// gain <= 0.
double nrt_power(double q_i, double x, double gain, double p_max, double slot_seconds);

/// q log(1 + P gain) - x P / T_s.
double nrt_psi(double q_i, double x, double gain, double power, double slot_seconds);

/// Argmax of nrt_psi over NRT users at their own nrt_power. Exact ties are
/// broken uniformly with `rng`, which is only consumed when a tie occurs.
/// Returns nullopt when there are no NRT users or the best value is <= 0.
std::optional<NrtCandidate> select_nrt(const ControllerState& state, const SlotObservation& obs,
                                       const SystemConfig& config, Rng& rng);

/// Lambert power for a real-time packet at multiplier phi_tilde:
///   P = min((1/g) [z / W0(z/e) - 1], p_max),  z = phi_tilde g - 1,
/// the minimiser of (P + phi_tilde) / log(1 + P g). For |z| <= 1e-12 the
/// ratio z / W0(z/e) takes its limit e. Throws DomainError for gain <= 0 or
/// phi_tilde < 0.
double rt_power(double gain, double phi_tilde, double p_max);

/// The Lambert power with W0 applied to z rather than z/e. Not an optimiser
/// of the slot objective; kept for comparison with rt_power. Throws
/// DomainError when z < 0.
double rt_power_as_printed(double gain, double phi_tilde, double p_max);

/// y - x P mu / T_s for a scheduled user, 0 otherwise.
double rt_psi(double y_i, double x, double power, double airtime, double slot_seconds,
              bool scheduled = true);

/// Packs the RT users in `set` into one slot.
///
/// The multiplier phi >= 0 is found by bisection on the decreasing total
/// airtime T(phi) with phi_tilde = (nrt_psi_star + phi) T_s / x; phi = 0
/// when T(0) already fits. With x == 0 every member transmits at p_max.
/// Returns nullopt when the members cannot fit into T_s even at p_max or a
/// member has zero gain. `set` may be empty.
std::optional<RtAllocation> pack_rt_set(std::span<const std::size_t> set,
                                        const ControllerState& state, const SlotObservation& obs,
                                        double nrt_psi_star, const SystemConfig& config);

/// Sum of member rt_psi plus psi_star times the leftover airtime.
double set_objective(const RtAllocation& alloc, const std::optional<NrtCandidate>& nrt,
                     double slot_seconds);

}  // namespace lsched
