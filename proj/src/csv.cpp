#include "lsched/csv.hpp"

#include <iomanip>
#include <string_view>
#include <vector>

namespace lsched::csv {
namespace {

class PrecisionGuard {
 public:
  explicit PrecisionGuard(std::ostream& out)
      : out_(out), precision_(out.precision()), flags_(out.flags()) {
    out_.unsetf(std::ios::floatfield);
    out_ << std::setprecision(kPrecision);
  }
  ~PrecisionGuard() {
    out_.precision(precision_);
    out_.flags(flags_);
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::ostream& out_;
  std::streamsize precision_;
  std::ios::fmtflags flags_;
};

void header_group(std::ostream& out, std::string_view name, std::size_t count) {
  for (std::size_t i = 1; i <= count; ++i) out << ',' << name << '_' << i;
}

void value_group(std::ostream& out, const std::vector<double>& values) {
  for (double v : values) out << ',' << v;
}

}  // namespace

void write_metrics(std::ostream& out, const RunMetrics& m, Algorithm algorithm) {
  PrecisionGuard guard(out);
  const std::size_t n_nrt = m.nrt_throughput.size();
  const std::size_t n_rt = m.rt_delivery_ratio.size();
  out << "algorithm,slots,avg_power,x_stability,avg_evaluations,mean_eligible_subsets";
  header_group(out, "nrt_throughput", n_nrt);
  header_group(out, "delivered_throughput", n_nrt);
  header_group(out, "admitted_rate", n_nrt);
  header_group(out, "mean_q", n_nrt);
  header_group(out, "rt_delivery_ratio", n_rt);
  header_group(out, "rt_arrival_rate", n_rt);
  header_group(out, "y_stability", n_rt);
  out << '\n';
  out << to_string(algorithm) << ',' << m.slots << ',' << m.avg_power << ',' << m.x_stability
      << ',' << m.avg_evaluations << ',' << m.mean_eligible_subsets;
  value_group(out, m.nrt_throughput);
  value_group(out, m.delivered_throughput);
  value_group(out, m.admitted_rate);
  value_group(out, m.mean_q);
  value_group(out, m.rt_delivery_ratio);
  value_group(out, m.rt_arrival_rate);
  value_group(out, m.y_stability);
  out << '\n';
}

void write_sweep(std::ostream& out, std::span<const SweepPoint> points) {
  PrecisionGuard guard(out);
  out << "n_rt,algorithm,avg_evaluations,mean_eligible_subsets\n";
  for (const auto& p : points) {
    out << p.n_rt << ',' << to_string(p.algorithm) << ',' << p.avg_evaluations << ','
        << p.mean_eligible_subsets << '\n';
  }
}

void write_equivalence(std::ostream& out, const EquivalenceReport& r) {
  PrecisionGuard guard(out);
  out << "samples,n_rt,max_discrepancy,decision_mismatches,mean_evaluations_lambert,"
         "mean_evaluations_exhaustive\n";
  out << r.samples << ',' << r.n_rt << ',' << r.max_discrepancy << ',' << r.decision_mismatches
      << ',' << r.mean_evaluations_lambert << ',' << r.mean_evaluations_exhaustive << '\n';
}

void write_bound(std::ostream& out, const BoundReport& r) {
  PrecisionGuard guard(out);
  out << "c1,gap_bound,r_max\n" << r.c1 << ',' << r.gap_bound << ',' << r.r_max << '\n';
}

}  // namespace lsched::csv
