#include "lsched/model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "lsched/errors.hpp"

namespace lsched {
namespace {

constexpr double kDefaultQ = 0.9;
constexpr double kDefaultGain = 1.0;

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace

void SystemConfig::validate() const {
  const std::size_t n = n_users();
  require(lambda.size() == n, "lambda needs one entry per user");
  require(q.size() == n_rt, "q needs one entry per real-time user");
  require(mean_gain.size() == n, "mean_gain needs one entry per user");
  for (double l : lambda) require(l >= 0.0 && l <= 1.0, "lambda must lie in [0, 1]");
  for (double v : q) require(v >= 0.0 && v <= 1.0, "q must lie in [0, 1]");
  for (double g : mean_gain) require(std::isfinite(g) && g > 0.0, "mean_gain must be positive");
  require(std::isfinite(packet_bits) && packet_bits > 0.0, "packet_bits must be positive");
  require(std::isfinite(slot_seconds) && slot_seconds > 0.0, "slot_seconds must be positive");
  require(std::isfinite(p_avg) && p_avg > 0.0, "p_avg must be positive");
  require(std::isfinite(p_max) && p_max >= p_avg, "p_max must be finite and >= p_avg");
  require(std::isfinite(b_max) && b_max > 0.0, "b_max must be positive");
  require(std::isfinite(gain_cap) && gain_cap > 0.0, "gain_cap must be positive and finite");
  require(finite_nonneg(phi_tol), "phi_tol must be >= 0");
  require(std::isfinite(phi_max) && phi_max > 0.0, "phi_max must be positive");
}

SystemConfig make_config(std::size_t n_rt, std::size_t n_nrt, double lambda_rt,
                         double lambda_nrt) {
  SystemConfig config;
  config.n_rt = n_rt;
  config.n_nrt = n_nrt;
  config.lambda.assign(n_rt, lambda_rt);
  config.lambda.insert(config.lambda.end(), n_nrt, lambda_nrt);
  config.q.assign(n_rt, kDefaultQ);
  config.mean_gain.assign(n_rt + n_nrt, kDefaultGain);
  return config;
}

void resize_users(SystemConfig& config, std::size_t n_rt, std::size_t n_nrt) {
  auto resize_class = [](std::vector<double> values, std::size_t from, std::size_t old_count,
                         std::size_t new_count, double fallback) {
    std::vector<double> out(values.begin() + static_cast<std::ptrdiff_t>(from),
                            values.begin() + static_cast<std::ptrdiff_t>(from + old_count));
    const double fill = out.empty() ? fallback : out.back();
    out.resize(new_count, fill);
    return out;
  };
  const std::size_t old_rt = config.n_rt;
  const std::size_t old_nrt = config.n_nrt;

  auto lambda_rt = resize_class(config.lambda, 0, old_rt, n_rt, 0.0);
  auto lambda_nrt = resize_class(config.lambda, old_rt, old_nrt, n_nrt, 0.0);
  auto gain_rt = resize_class(config.mean_gain, 0, old_rt, n_rt, kDefaultGain);
  auto gain_nrt = resize_class(config.mean_gain, old_rt, old_nrt, n_nrt, kDefaultGain);
  config.q = resize_class(config.q, 0, old_rt, n_rt, kDefaultQ);

  config.lambda = std::move(lambda_rt);
  config.lambda.insert(config.lambda.end(), lambda_nrt.begin(), lambda_nrt.end());
  config.mean_gain = std::move(gain_rt);
  config.mean_gain.insert(config.mean_gain.end(), gain_nrt.begin(), gain_nrt.end());
  config.n_rt = n_rt;
  config.n_nrt = n_nrt;
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

std::size_t Rng::pick(std::size_t n) {
  const auto idx = static_cast<std::size_t>(uniform() * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

SlotObservation draw_slot(const SystemConfig& config, Rng& rng) {
  const std::size_t n = config.n_users();
  SlotObservation obs;
  obs.gains.resize(n);
  obs.arrivals.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    // Inverse CDF of Exp(mean) conditioned on [0, cap).
    const double mean = config.mean_gain[i];
    const double mass = -std::expm1(-config.gain_cap / mean);
    obs.gains[i] = -mean * std::log1p(-rng.uniform() * mass);
  }
  for (std::size_t i = 0; i < n; ++i) {
    obs.arrivals[i] = rng.uniform() < config.lambda[i] ? 1 : 0;
  }
  return obs;
}

double rate(double power, double gain) { return std::log1p(power * gain); }

double rt_airtime(double power, double gain, double packet_bits) {
  const double r = rate(power, gain);
  if (!(r > 0.0)) {
    std::ostringstream msg;
    msg << "rt_airtime: zero rate at power " << power << ", gain " << gain;
    throw InfeasibleRateError(msg.str());
  }
  return packet_bits / r;
}

}  // namespace lsched
