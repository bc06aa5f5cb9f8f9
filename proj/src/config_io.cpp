#include "lsched/config_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "lsched/errors.hpp"

namespace lsched {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  text = trim(text);
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError("config key '" + std::string(key) + "': cannot parse '" +
                      std::string(text) + "' as a number");
  }
  return value;
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(parse_number<double>(key, text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void assign_per_user(std::string_view key, std::string_view text, std::vector<double>& target,
                     std::size_t offset, std::size_t count) {
  const auto values = parse_list(key, text);
  if (values.size() == 1) {
    std::fill_n(target.begin() + static_cast<std::ptrdiff_t>(offset), count, values.front());
    return;
  }
  if (values.size() != count) {
    throw ConfigError("config key '" + std::string(key) + "': expected 1 or " +
                      std::to_string(count) + " values, got " + std::to_string(values.size()));
  }
  std::copy(values.begin(), values.end(), target.begin() + static_cast<std::ptrdiff_t>(offset));
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

SystemConfig default_config() { return make_config(4, 2, 0.3, 1.0); }

ConfigPairs parse_key_values(std::string_view text) {
  ConfigPairs pairs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key or value");
    }
    pairs.emplace_back(std::string(key), std::string(value));
  }
  return pairs;
}

std::pair<std::string, std::string> parse_override(std::string_view text) {
  auto pairs = parse_key_values(text);
  if (pairs.size() != 1) {
    throw ConfigError("override '" + std::string(text) + "' must be a single key=value");
  }
  return pairs.front();
}

SystemConfig apply_config(SystemConfig config, const ConfigPairs& pairs) {
  std::size_t n_rt = config.n_rt;
  std::size_t n_nrt = config.n_nrt;
  for (const auto& [key, value] : pairs) {
    if (key == "n_rt") n_rt = parse_number<std::size_t>(key, value);
    if (key == "n_nrt") n_nrt = parse_number<std::size_t>(key, value);
  }
  resize_users(config, n_rt, n_nrt);
  const std::size_t n = config.n_users();

  for (const auto& [key, value] : pairs) {
    if (key == "n_rt" || key == "n_nrt") {
      continue;
    } else if (key == "lambda") {
      assign_per_user(key, value, config.lambda, 0, n);
    } else if (key == "lambda_rt") {
      std::fill_n(config.lambda.begin(), n_rt, parse_number<double>(key, value));
    } else if (key == "lambda_nrt") {
      std::fill_n(config.lambda.begin() + static_cast<std::ptrdiff_t>(n_rt), n_nrt,
                  parse_number<double>(key, value));
    } else if (key == "q") {
      assign_per_user(key, value, config.q, 0, n_rt);
    } else if (key == "mean_gain") {
      assign_per_user(key, value, config.mean_gain, 0, n);
    } else if (key == "packet_bits") {
      config.packet_bits = parse_number<double>(key, value);
    } else if (key == "slot_seconds") {
      config.slot_seconds = parse_number<double>(key, value);
    } else if (key == "p_avg") {
      config.p_avg = parse_number<double>(key, value);
    } else if (key == "p_max") {
      config.p_max = parse_number<double>(key, value);
    } else if (key == "b_max") {
      config.b_max = parse_number<double>(key, value);
    } else if (key == "gain_cap") {
      config.gain_cap = parse_number<double>(key, value);
    } else if (key == "horizon_slots") {
      config.horizon_slots = parse_number<std::uint64_t>(key, value);
    } else if (key == "rng_seed") {
      config.rng_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "phi_tol") {
      config.phi_tol = parse_number<double>(key, value);
    } else if (key == "phi_max") {
      config.phi_max = parse_number<double>(key, value);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SystemConfig load_config(const std::filesystem::path& path, const ConfigPairs& overrides) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot read config file '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  auto pairs = parse_key_values(text.str());
  pairs.insert(pairs.end(), overrides.begin(), overrides.end());
  return apply_config(default_config(), pairs);
}

std::string format_config(const SystemConfig& c) {
  std::ostringstream out;
  out << "n_rt = " << c.n_rt << '\n'
      << "n_nrt = " << c.n_nrt << '\n'
      << "lambda = " << format_list(c.lambda) << '\n'
      << "q = " << format_list(c.q) << '\n'
      << "packet_bits = " << format_double(c.packet_bits) << '\n'
      << "slot_seconds = " << format_double(c.slot_seconds) << '\n'
      << "p_avg = " << format_double(c.p_avg) << '\n'
      << "p_max = " << format_double(c.p_max) << '\n'
      << "b_max = " << format_double(c.b_max) << '\n'
      << "mean_gain = " << format_list(c.mean_gain) << '\n'
      << "gain_cap = " << format_double(c.gain_cap) << '\n'
      << "horizon_slots = " << c.horizon_slots << '\n'
      << "rng_seed = " << c.rng_seed << '\n'
      << "phi_tol = " << format_double(c.phi_tol) << '\n'
      << "phi_max = " << format_double(c.phi_max) << '\n';
  return out.str();
}

}  // namespace lsched
