// Copyright 2026 The vqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vqite/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "vqite/errors.hpp"

namespace vqite {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw ConfigError("invalid value '" + std::string(value) + "' for key '" + std::string(key) +
                    "'");
}

double to_double(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) bad_value(key, value);
  return v;
}

template <typename Int>
Int to_int(std::string_view key, std::string_view value) {
  Int v{};
  // Accept "1e4" style budgets as long as they are integral.
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec == std::errc() && ptr == value.data() + value.size()) return v;
  const double d = to_double(key, value);
  if (d != std::floor(d) || std::abs(d) > 9e15) bad_value(key, value);
  if constexpr (std::is_unsigned_v<Int>) {
    if (d < 0) bad_value(key, value);
  }
  return static_cast<Int>(d);
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  bad_value(key, value);
}

template <typename T, typename F>
std::vector<T> to_list(std::string_view value, F&& convert) {
  std::vector<T> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(convert(item));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    if constexpr (std::is_floating_point_v<T>) {
      out += fmt_double(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

}  // namespace

std::string to_string(RegularizationMethod method) {
  return method == RegularizationMethod::Tikhonov ? "tikhonov" : "eigencut";
}

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::ThetaDot:
      return "theta-dot";
    case CostKind::Wavefunction:
      return "wavefunction";
    case CostKind::McLachlan:
      return "mclachlan";
  }
  return "theta-dot";
}

std::string to_string(NoiseMode mode) { return mode == NoiseMode::Exact ? "exact" : "sampled"; }

RegularizationMethod parse_method(std::string_view text) {
  if (text == "tikhonov") return RegularizationMethod::Tikhonov;
  if (text == "eigencut") return RegularizationMethod::EigenCut;
  bad_value("method", text);
}

CostKind parse_cost(std::string_view text) {
  if (text == "theta-dot") return CostKind::ThetaDot;
  if (text == "wavefunction") return CostKind::Wavefunction;
  if (text == "mclachlan") return CostKind::McLachlan;
  bad_value("cost", text);
}

void RunConfig::validate() const {
  model.validate();
  if (layers < 1) throw ConfigError("layers must be >= 1");
  if (init_scale < 0.0) throw ConfigError("init_scale must be >= 0");
  if (!(regularization.epsilon > 0.0)) throw ConfigError("eps must be positive");
  if (!(step.dt_max > 0.0) || !(step.dtheta_max > 0.0) || !(step.tau_final > 0.0)) {
    throw ConfigError("dt_max, dtheta_max and tau_final must be positive");
  }
  if (shots < 1) throw ConfigError("shots must be >= 1");
  if (!(r > 0.0 && r <= 1.0)) throw ConfigError("r must lie in (0, 1]");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  if (!(grid_step > 0.0)) throw ConfigError("grid_step must be positive");
  for (auto v : shot_values) {
    if (v < 1) throw ConfigError("shot_values must be positive");
  }
  for (double t : snapshots) {
    if (t < 0.0 || t > step.tau_final + 1e-12) {
      throw ConfigError("snapshot outside [0, tau_final]");
    }
  }
  if (compare_shots < 1 || !(compare_r > 0.0 && compare_r <= 1.0)) {
    throw ConfigError("invalid comparison point");
  }
}

void set_config_value(RunConfig& c, std::string_view key, std::string_view value) {
  if (key == "n") {
    c.model.num_sites = to_int<int>(key, value);
  } else if (key == "j") {
    c.model.coupling = to_double(key, value);
  } else if (key == "delta") {
    c.model.field = to_double(key, value);
  } else if (key == "layers") {
    c.layers = to_int<int>(key, value);
  } else if (key == "init_mode") {
    if (value == "uniform") {
      c.init_mode = InitMode::Uniform;
    } else if (value == "constant") {
      c.init_mode = InitMode::Constant;
    } else {
      bad_value(key, value);
    }
  } else if (key == "init_scale") {
    c.init_scale = to_double(key, value);
  } else if (key == "init_seed") {
    c.init_seed = to_int<std::uint64_t>(key, value);
  } else if (key == "method") {
    c.regularization.method = parse_method(value);
  } else if (key == "eps") {
    c.regularization.epsilon = to_double(key, value);
  } else if (key == "dt_max") {
    c.step.dt_max = to_double(key, value);
  } else if (key == "dtheta_max") {
    c.step.dtheta_max = to_double(key, value);
  } else if (key == "tau_final") {
    c.step.tau_final = to_double(key, value);
  } else if (key == "noise") {
    if (value == "exact") {
      c.noise = NoiseMode::Exact;
    } else if (value == "sampled") {
      c.noise = NoiseMode::Sampled;
    } else {
      bad_value(key, value);
    }
  } else if (key == "sampler") {
    if (value == "bernoulli") {
      c.sampler = SamplerKind::Bernoulli;
    } else if (value == "gaussian") {
      c.sampler = SamplerKind::Gaussian;
    } else {
      bad_value(key, value);
    }
  } else if (key == "shots") {
    c.shots = to_int<std::int64_t>(key, value);
  } else if (key == "r") {
    c.r = to_double(key, value);
  } else if (key == "cost") {
    c.cost = parse_cost(value);
  } else if (key == "weights") {
    if (value == "noisy") {
      c.weights = WeightSource::Noisy;
    } else if (value == "exact") {
      c.weights = WeightSource::Exact;
    } else {
      bad_value(key, value);
    }
  } else if (key == "runs") {
    c.runs = to_int<int>(key, value);
  } else if (key == "seed") {
    c.seed = to_int<std::uint64_t>(key, value);
  } else if (key == "threads") {
    c.threads = to_int<int>(key, value);
  } else if (key == "out") {
    c.out = std::string(value);
  } else if (key == "dump_allocation") {
    c.dump_allocation = to_bool(key, value);
  } else if (key == "grid_step") {
    c.grid_step = to_double(key, value);
  } else if (key == "r_values") {
    c.r_values = to_list<double>(value, [&](auto v) { return to_double(key, v); });
  } else if (key == "shot_values") {
    c.shot_values =
        to_list<std::int64_t>(value, [&](auto v) { return to_int<std::int64_t>(key, v); });
  } else if (key == "snapshots") {
    c.snapshots = to_list<double>(value, [&](auto v) { return to_double(key, v); });
  } else if (key == "compare_r") {
    c.compare_r = to_double(key, value);
  } else if (key == "compare_shots") {
    c.compare_shots = to_int<std::int64_t>(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError("duplicate key '" + std::string(key) + "'");
    }
    set_config_value(config, key, value);
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_text(const RunConfig& c) {
  std::ostringstream os;
  os << "n = " << c.model.num_sites << '\n'
     << "j = " << fmt_double(c.model.coupling) << '\n'
     << "delta = " << fmt_double(c.model.field) << '\n'
     << "layers = " << c.layers << '\n'
     << "init_mode = " << (c.init_mode == InitMode::Uniform ? "uniform" : "constant") << '\n'
     << "init_scale = " << fmt_double(c.init_scale) << '\n'
     << "init_seed = " << c.init_seed << '\n'
     << "method = " << to_string(c.regularization.method) << '\n'
     << "eps = " << fmt_double(c.regularization.epsilon) << '\n'
     << "dt_max = " << fmt_double(c.step.dt_max) << '\n'
     << "dtheta_max = " << fmt_double(c.step.dtheta_max) << '\n'
     << "tau_final = " << fmt_double(c.step.tau_final) << '\n'
     << "noise = " << to_string(c.noise) << '\n'
     << "sampler = " << (c.sampler == SamplerKind::Bernoulli ? "bernoulli" : "gaussian") << '\n'
     << "shots = " << c.shots << '\n'
     << "r = " << fmt_double(c.r) << '\n'
     << "cost = " << to_string(c.cost) << '\n'
     << "weights = " << (c.weights == WeightSource::Noisy ? "noisy" : "exact") << '\n'
     << "runs = " << c.runs << '\n'
     << "seed = " << c.seed << '\n'
     << "threads = " << c.threads << '\n'
     << "out = " << c.out << '\n'
     << "dump_allocation = " << (c.dump_allocation ? "true" : "false") << '\n'
     << "grid_step = " << fmt_double(c.grid_step) << '\n'
     << "r_values = " << join(c.r_values) << '\n'
     << "shot_values = " << join(c.shot_values) << '\n'
     << "snapshots = " << join(c.snapshots) << '\n'
     << "compare_r = " << fmt_double(c.compare_r) << '\n'
     << "compare_shots = " << c.compare_shots << '\n';
  return os.str();
}

std::string config_hash(const RunConfig& config) {
  // Output location and worker count do not change results.
  RunConfig keyed = config;
  keyed.out.clear();
  keyed.threads = 0;
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : to_text(keyed)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace vqite
