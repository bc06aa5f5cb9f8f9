#include "lsched/queues.hpp"

#include <algorithm>
#include <stdexcept>

namespace lsched {

ControllerState ControllerState::empty(const SystemConfig& config) {
  ControllerState state;
  state.q.assign(config.n_nrt, 0.0);
  state.y.assign(config.n_rt, 0.0);
  return state;
}

double step_data_queue(double q_i, int admitted, double served_bits, double packet_bits) {
  return std::max(q_i + packet_bits * admitted - served_bits, 0.0);
}

double step_qos_queue(double y_i, int arrival, double q_target, int served) {
  return std::max(y_i + arrival * q_target - served, 0.0);
}

double step_power_queue(double x, double energy, double slot_seconds, double p_avg) {
  return std::max(x + energy / slot_seconds - p_avg, 0.0);
}

double mean_rate_stability_stat(std::span<const double> trajectory) {
  if (trajectory.empty()) {
    throw std::invalid_argument("mean_rate_stability_stat: empty trajectory");
  }
  return trajectory.back() / static_cast<double>(trajectory.size());
}

void write_trajectory_header(std::ostream& out, const SystemConfig& config) {
  out << "slot,X";
  for (std::size_t i = 1; i <= config.n_rt; ++i) out << ",Y_" << i;
  for (std::size_t i = 1; i <= config.n_nrt; ++i) out << ",Q_" << i;
  out << '\n';
}

void write_trajectory_row(std::ostream& out, const ControllerState& state) {
  out << state.slot << ',' << state.x;
  for (double y : state.y) out << ',' << y;
  for (double q : state.q) out << ',' << q;
  out << '\n';
}

}  // namespace lsched
