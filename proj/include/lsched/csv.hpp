#pragma once

#include <ostream>
#include <span>

#include "lsched/sim.hpp"

namespace lsched::csv {

/// Significant digits of every number written by this module.
inline constexpr int kPrecision = 9;

/// algorithm,slots,avg_power,x_stability,avg_evaluations,mean_eligible_subsets,
/// then per-user groups nrt_throughput_i, delivered_throughput_i,
/// admitted_rate_i, mean_q_i (NRT) and rt_delivery_ratio_i, rt_arrival_rate_i,
/// y_stability_i (RT), 1-based.
void write_metrics(std::ostream& out, const RunMetrics& metrics, Algorithm algorithm);

/// n_rt,algorithm,avg_evaluations,mean_eligible_subsets
void write_sweep(std::ostream& out, std::span<const SweepPoint> points);

/// samples,n_rt,max_discrepancy,decision_mismatches,mean_evaluations_lambert,
/// mean_evaluations_exhaustive
void write_equivalence(std::ostream& out, const EquivalenceReport& report);

/// c1,gap_bound,r_max
void write_bound(std::ostream& out, const BoundReport& report);

}  // namespace lsched::csv
