#include "lsched/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace lsched {

SlotStep advance(const SystemConfig& config, const ControllerState& state,
                 const SlotObservation& obs, const SlotDecision& decision) {
  SlotStep step;
  step.next.slot = state.slot + 1;
  step.next.q.resize(config.n_nrt);
  step.next.y.resize(config.n_rt);
  step.served_bits.assign(config.n_nrt, 0.0);
  step.delivered_bits.assign(config.n_nrt, 0.0);

  for (std::size_t i = 0; i < config.n_users(); ++i) {
    step.energy += decision.powers[i] * decision.airtimes[i];
  }
  for (std::size_t i = 0; i < config.n_nrt; ++i) {
    const std::size_t idx = config.nrt_index(i);
    const double served = decision.airtimes[idx] * rate(decision.powers[idx], obs.gains[idx]);
    const int admitted = decision.admissions[i];
    step.served_bits[i] = served;
    step.delivered_bits[i] = std::min(served, state.q[i] + config.packet_bits * admitted);
    step.next.q[i] = step_data_queue(state.q[i], admitted, served, config.packet_bits);
  }
  for (std::size_t i = 0; i < config.n_rt; ++i) {
    const int served = decision.airtimes[i] > 0.0 ? 1 : 0;
    step.next.y[i] = step_qos_queue(state.y[i], obs.arrivals[i], config.q[i], served);
  }
  step.next.x = step_power_queue(state.x, step.energy, config.slot_seconds, config.p_avg);
  return step;
}

RunMetrics run(const SystemConfig& config, Algorithm algorithm, const RunOptions& options) {
  config.validate();
  Rng environment(config.rng_seed, kEnvironmentStream);
  Rng tie_break(config.rng_seed, kTieBreakStream);

  const std::size_t n_rt = config.n_rt;
  const std::size_t n_nrt = config.n_nrt;
  std::vector<double> served_bits(n_nrt, 0.0), delivered_bits(n_nrt, 0.0), admitted(n_nrt, 0.0),
      q_sum(n_nrt, 0.0), rt_served(n_rt, 0.0), rt_arrived(n_rt, 0.0);
  double energy = 0.0;
  double evaluations = 0.0;
  double eligible_subsets = 0.0;

  ControllerState state = ControllerState::empty(config);
  if (options.trajectory) {
    write_trajectory_header(*options.trajectory, config);
    write_trajectory_row(*options.trajectory, state);
  }

  for (std::uint64_t k = 0; k < config.horizon_slots; ++k) {
    const SlotObservation obs = draw_slot(config, environment);
    const SlotDecision decision = schedule(algorithm, state, obs, config, tie_break);
    SlotStep step = advance(config, state, obs, decision);

    energy += step.energy;
    evaluations += static_cast<double>(decision.evaluations);
    std::size_t arrived = 0;
    for (std::size_t i = 0; i < n_rt; ++i) {
      arrived += obs.arrivals[i];
      rt_arrived[i] += obs.arrivals[i];
      rt_served[i] += decision.airtimes[i] > 0.0 ? 1.0 : 0.0;
    }
    eligible_subsets += std::ldexp(1.0, static_cast<int>(arrived));
    for (std::size_t i = 0; i < n_nrt; ++i) {
      served_bits[i] += step.served_bits[i];
      delivered_bits[i] += step.delivered_bits[i];
      admitted[i] += decision.admissions[i];
      q_sum[i] += step.next.q[i];
    }
    state = std::move(step.next);
    if (options.trajectory) write_trajectory_row(*options.trajectory, state);
  }

  RunMetrics m;
  m.slots = config.horizon_slots;
  const double k = config.horizon_slots > 0 ? static_cast<double>(config.horizon_slots) : 1.0;
  const double packet_slot = config.packet_bits * config.slot_seconds * k;
  for (std::size_t i = 0; i < n_nrt; ++i) {
    m.nrt_throughput.push_back(served_bits[i] / packet_slot);
    m.delivered_throughput.push_back(delivered_bits[i] / packet_slot);
    m.admitted_rate.push_back(admitted[i] / k);
    m.mean_q.push_back(q_sum[i] / k);
  }
  m.avg_power = energy / (k * config.slot_seconds);
  for (std::size_t i = 0; i < n_rt; ++i) {
    m.rt_delivery_ratio.push_back(rt_served[i] / k);
    m.rt_arrival_rate.push_back(rt_arrived[i] / k);
    m.y_stability.push_back(state.y[i] / k);
  }
  m.x_stability = state.x / k;
  m.avg_evaluations = evaluations / k;
  m.mean_eligible_subsets = eligible_subsets / k;
  m.final_state = std::move(state);
  return m;
}

BoundReport throughput_gap_bound(const SystemConfig& config) {
  BoundReport report;
  report.r_max = std::log1p(config.p_max);
  double c1 = 0.0;
  for (double q : config.q) c1 += q * q + 1.0;
  const double n_nrt = static_cast<double>(config.n_nrt);
  c1 += config.p_max * config.p_max + config.p_avg * config.p_avg;
  c1 += n_nrt * config.packet_bits * config.packet_bits;
  c1 += n_nrt * config.slot_seconds * config.slot_seconds * report.r_max * report.r_max;
  report.c1 = c1;
  report.gap_bound = c1 / (config.packet_bits * config.b_max);
  return report;
}

std::uint64_t sweep_seed(std::uint64_t base_seed, std::size_t n_rt) {
  return base_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(n_rt) + 1);
}

std::vector<SweepPoint> complexity_sweep(const SystemConfig& base,
                                         std::span<const std::size_t> n_rt_values,
                                         Algorithm algorithm) {
  std::vector<std::future<SweepPoint>> jobs;
  jobs.reserve(n_rt_values.size());
  for (const std::size_t n_rt : n_rt_values) {
    SystemConfig config = base;
    resize_users(config, n_rt, base.n_nrt);
    config.rng_seed = sweep_seed(base.rng_seed, n_rt);
    jobs.push_back(std::async(std::launch::async, [config, algorithm] {
      const RunMetrics m = run(config, algorithm);
      return SweepPoint{config.n_rt, algorithm, m.avg_evaluations, m.mean_eligible_subsets};
    }));
  }
  std::vector<SweepPoint> points;
  points.reserve(jobs.size());
  for (auto& job : jobs) points.push_back(job.get());
  return points;
}

SampledSlot sample_slot(const SystemConfig& config, Rng& rng) {
  SampledSlot s;
  s.state = ControllerState::empty(config);
  for (double& y : s.state.y) {
    y = 100.0 * rng.uniform();
    if (rng.uniform() < 0.5) y = std::round(y);
  }
  s.state.x = rng.uniform() < 0.2 ? 0.0 : 30.0 * rng.uniform();
  for (double& q : s.state.q) q = config.b_max * rng.uniform();
  s.obs = draw_slot(config, rng);
  for (auto& a : s.obs.arrivals) a = rng.uniform() < 0.75 ? 1 : 0;
  return s;
}

EquivalenceReport equivalence_check(const SystemConfig& config, std::size_t samples,
                                    std::uint64_t seed) {
  EquivalenceReport report;
  report.samples = samples;
  report.n_rt = config.n_rt;
  Rng rng(seed, kEnvironmentStream);
  double evals_lambert = 0.0;
  double evals_exhaustive = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const SampledSlot slot = sample_slot(config, rng);
    const std::uint64_t tie_seed = rng.next();
    Rng tie_a(tie_seed, kTieBreakStream);
    Rng tie_b(tie_seed, kTieBreakStream);
    SlotDecision fast = lambert_strict(slot.state, slot.obs, config, tie_a);
    SlotDecision full = exhaustive_search(slot.state, slot.obs, config, tie_b);
    evals_lambert += static_cast<double>(fast.evaluations);
    evals_exhaustive += static_cast<double>(full.evaluations);
    report.max_discrepancy =
        std::max(report.max_discrepancy, std::abs(fast.objective - full.objective));
    fast.evaluations = full.evaluations = 0;
    if (!(fast == full)) ++report.decision_mismatches;
  }
  if (samples > 0) {
    report.mean_evaluations_lambert = evals_lambert / static_cast<double>(samples);
    report.mean_evaluations_exhaustive = evals_exhaustive / static_cast<double>(samples);
  }
  return report;
}

}  // namespace lsched
