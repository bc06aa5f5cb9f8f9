#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

#include "lsched/model.hpp"

namespace lsched {

/// Data queues Q (bits, one per NRT user), QoS virtual queues Y (one per RT
/// user) and the power virtual queue X. All entries stay nonnegative.
struct ControllerState {
  std::vector<double> q;
  std::vector<double> y;
  double x = 0.0;
  std::uint64_t slot = 0;

  static ControllerState empty(const SystemConfig& config);

  friend bool operator==(const ControllerState&, const ControllerState&) = default;
};

/// Admission gate: the arrival is admitted only while the queue is below b_max.
inline int admit(double q_i, int arrival, double b_max) {
  return (arrival != 0 && q_i < b_max) ? 1 : 0;
}

/// max(q + L r - served_bits, 0).
double step_data_queue(double q_i, int admitted, double served_bits, double packet_bits);

/// max(y + a q_target - served, 0).
double step_qos_queue(double y_i, int arrival, double q_target, int served);

/// max(x + energy / T_s - p_avg, 0), energy = sum of power * airtime.
double step_power_queue(double x, double energy, double slot_seconds, double p_avg);

/// Final value over horizon for a trajectory holding slots 1..K, i.e.
/// trajectory.back() / trajectory.size(). Tends to 0 for a mean rate stable
/// queue. Throws std::invalid_argument on an empty trajectory.
double mean_rate_stability_stat(std::span<const double> trajectory);

/// CSV header `slot,X,Y_1..,Q_1..` for trajectory dumps.
void write_trajectory_header(std::ostream& out, const SystemConfig& config);
void write_trajectory_row(std::ostream& out, const ControllerState& state);

}  // namespace lsched
