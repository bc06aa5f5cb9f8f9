#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace lsched {

/// Every parameter of one simulated downlink.
///
/// Users are indexed 0..n_rt-1 for real-time users followed by
/// n_rt..n_rt+n_nrt-1 for non-real-time users. `lambda` and `mean_gain`
/// cover all users in that order; `q` covers the real-time users only.
struct SystemConfig {
  std::size_t n_rt = 4;
  std::size_t n_nrt = 2;
  std::vector<double> lambda;     // packets/slot, one per user
  std::vector<double> q;          // delivery-ratio target, one per RT user
  double packet_bits = 1.0;       // L
  double slot_seconds = 5.0;      // T_s
  double p_avg = 10.0;
  double p_max = 20.0;
  double b_max = 100.0;
  std::vector<double> mean_gain;  // one per user
  double gain_cap = 50.0;
  std::uint64_t horizon_slots = 10000;
  std::uint64_t rng_seed = 1;
  double phi_tol = 0.0;  // seconds of airtime slack; 0 selects 1e-9 * slot_seconds
  double phi_max = 1.0;  // initial upper bracket of the multiplier search

  std::size_t n_users() const { return n_rt + n_nrt; }
  std::size_t nrt_index(std::size_t nrt_user) const { return n_rt + nrt_user; }
  double airtime_tolerance() const {
    return phi_tol > 0.0 ? phi_tol : 1e-9 * slot_seconds;
  }

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
};

/// Reference defaults (L=1, B_max=100, T_s=5, P_avg=10, q=0.9, P_max=20, unit
/// mean gain) with homogeneous arrival rates per class.
SystemConfig make_config(std::size_t n_rt, std::size_t n_nrt, double lambda_rt,
                         double lambda_nrt);

/// Changes the user counts. New users copy the last existing user of their
/// class (or the reference defaults when the class was empty).
void resize_users(SystemConfig& config, std::size_t n_rt, std::size_t n_nrt);

/// Per-slot randomness for all users, real-time users first.
struct SlotObservation {
  std::vector<double> gains;
  std::vector<std::uint8_t> arrivals;

  double rt_gain(std::size_t i) const { return gains[i]; }
  bool rt_arrival(std::size_t i) const { return arrivals[i] != 0; }
};

/// Seeded stream for environment draws and tie-breaks. Draws are built from
/// raw 64-bit mt19937_64 output so sequences are identical across standard
/// libraries.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform index in [0, n), n > 0.
  std::size_t pick(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

/// Environment stream and tie-break stream for one run.
inline constexpr std::uint64_t kEnvironmentStream = 0;
inline constexpr std::uint64_t kTieBreakStream = 1;

/// Draws gains (truncated exponential, mean scale `mean_gain`, cap
/// `gain_cap`) for every user, then Bernoulli(lambda) arrivals.
SlotObservation draw_slot(const SystemConfig& config, Rng& rng);

/// Shannon rate log(1 + power * gain) in nats per second.
double rate(double power, double gain);

/// Seconds needed to send one packet of `packet_bits` at the given power.
/// Throws InfeasibleRateError when the rate is zero.
double rt_airtime(double power, double gain, double packet_bits);

}  // namespace lsched
