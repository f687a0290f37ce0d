#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>

#include "kwlab/error.hpp"
#include "kwlab/experiments.hpp"
#include "params.hpp"

namespace kwlab::cli {
namespace {

using Defaults = std::map<std::string, std::string>;

const std::map<std::string, Defaults>& table() {
  static const std::map<std::string, Defaults> t{
      {"simulate",
       {{"M", "256"}, {"L", "6.283185307179586"}, {"beta", "1"}, {"lambda", "1"}, {"dt", "1e-4"},
        {"t_end", "1"}, {"stride", "100"}, {"nonlinear", "1"}, {"dealias", "galerkin_consistent"},
        {"init", "random"}, {"amplitude", "0.05"}, {"decay", "2"}, {"kmax", "8"}}},
      {"energy-track",
       {{"M", "32"}, {"L", "50.26548245743669"}, {"beta", "1"}, {"dt", "1e-3"}, {"t_end", "0.04"},
        {"stride", "1"}, {"nonlinear", "1"}, {"amplitude", "0.05"}, {"decay", "1"}, {"kmax", "0"},
        {"N", "1"}, {"s", "-38/21"}, {"eps_den", "1e-9"}}},
      {"acl-scaling",
       {{"M", "136"}, {"L", "6.283185307179586"}, {"beta", "1"}, {"amplitude", "0.05"}, {"decay", "1"},
        {"kmax", "0"}, {"N", "4,8,16,32"}, {"s", "-38/21"}, {"T", "1"}, {"dt", "1e-5"},
        {"spacing", "0.02"}, {"eps_den", "1e-9"}}},
      {"norm",
       {{"input", ""}, {"M", "32"}, {"L", "6.283185307179586"}, {"beta", "1"}, {"lambda", "1"},
        {"dt", "1e-3"}, {"nonlinear", "1"}, {"amplitude", "0.05"}, {"decay", "2"}, {"kmax", "8"},
        {"tmodes", "64"}, {"taper", "hann"}, {"s", "-38/21"}, {"b", "1/2"}}},
      {"bilinear-test",
       {{"estimate", "w"}, {"cases", "i,ii,iii,iv,v,vi"}, {"s", "-38/21"}, {"max_exp", "7"},
        {"count", "64"}, {"hhl_N", "8,16,32,64,128"}, {"hhl_s", "-38/21,-2"}, {"N2", "2"},
        {"ratios", "8,16,32,64,128"}, {"b", "19/42,1/2"}, {"improved_count", "8"}}},
      {"smoothing-test", {{"which", "smooth_0,smooth_4,smooth_2,l4"}, {"N", "2,4,8,16,32,64"}, {"count", "4"}}},
      {"gwp-schedule", {{"s", "-38/21"}, {"T", "100"}, {"eps0", "0.1"}, {"C1", "1"}, {"C2", "1"}}},
  };
  return t;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::uint64_t parse_seed(const std::string& v) {
  if (v.empty() || !std::all_of(v.begin(), v.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigError("config: seed must be an unsigned integer, got '" + v + "'");
  try {
    return std::stoull(v);
  } catch (const std::exception&) {
    throw ConfigError("config: seed out of range '" + v + "'");
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"simulate",        "energy-track",   "acl-scaling", "norm",
                                          "bilinear-test",   "smoothing-test", "gwp-schedule"};
  return c;
}

const std::map<std::string, std::string>& defaults(const std::string& command) {
  const auto it = table().find(command);
  if (it == table().end()) throw ConfigError("unknown command '" + command + "'");
  return it->second;
}

ExperimentConfig parse_config(std::istream& in, const std::string& command) {
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.params = defaults(command);
  std::map<std::string, std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string pair;
    while (words >> pair) {
      const auto eq = pair.find('=');
      const std::string where = "config line " + std::to_string(lineno) + ": ";
      if (eq == std::string::npos || eq == 0) throw ConfigError(where + "expected key=value, got '" + pair + "'");
      const std::string key = pair.substr(0, eq), value = trim(pair.substr(eq + 1));
      if (seen.count(key)) throw ConfigError(where + "duplicate key '" + key + "'");
      seen[key] = value;
      if (key == "command") {
        if (value != command) throw ConfigError(where + "command '" + value + "' does not match '" + command + "'");
      } else if (key == "seed") {
        cfg.seed = parse_seed(value);
      } else if (cfg.params.count(key)) {
        cfg.params[key] = value;
      } else {
        throw ConfigError(where + "unknown key '" + key + "' for " + command);
      }
    }
  }
  if (in.bad()) throw ConfigError("config: read failure");
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& command) {
  std::istringstream in(text);
  return parse_config(in, command);
}

std::string config_echo(const ExperimentConfig& cfg) {
  std::string out = "command=" + cfg.command + "\nseed=" + std::to_string(cfg.seed) + "\n";
  for (const auto& [k, v] : cfg.params) out += k + "=" + v + "\n";
  return out;
}

std::string run_id(const ExperimentConfig& cfg) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : config_echo(cfg)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double parse_number(const std::string& key, const std::string& value) {
  auto one = [&](const std::string& v) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(v, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (v.empty() || used != v.size() || !std::isfinite(x))
      throw ConfigError("config: '" + key + "' expects a number, got '" + value + "'");
    return x;
  };
  const auto slash = value.find('/');
  if (slash == std::string::npos) return one(value);
  const double den = one(value.substr(slash + 1));
  if (den == 0.0) throw ConfigError("config: '" + key + "' has a zero denominator");
  return one(value.substr(0, slash)) / den;
}

const std::string& Params::text(const std::string& key) const {
  const auto it = cfg_.params.find(key);
  if (it == cfg_.params.end()) throw ConfigError("config: missing key '" + key + "'");
  return it->second;
}

double Params::number(const std::string& key) const { return parse_number(key, text(key)); }

std::int64_t Params::integer(const std::string& key) const {
  const double x = number(key);
  if (x != std::floor(x) || std::abs(x) > 9.0e15)
    throw ConfigError("config: '" + key + "' expects an integer, got '" + text(key) + "'");
  return static_cast<std::int64_t>(x);
}

std::size_t Params::count(const std::string& key) const {
  const auto n = integer(key);
  if (n < 1) throw ConfigError("config: '" + key + "' must be >= 1");
  return static_cast<std::size_t>(n);
}

bool Params::flag(const std::string& key) const {
  const auto& v = text(key);
  if (v == "1" || v == "true" || v == "on") return true;
  if (v == "0" || v == "false" || v == "off") return false;
  throw ConfigError("config: '" + key + "' expects 0/1, got '" + v + "'");
}

std::vector<std::string> Params::words(const std::string& key) const {
  std::vector<std::string> out;
  std::istringstream in(text(key));
  std::string w;
  while (std::getline(in, w, ',')) {
    w = trim(w);
    if (w.empty()) throw ConfigError("config: '" + key + "' has an empty list entry");
    out.push_back(w);
  }
  if (out.empty()) throw ConfigError("config: '" + key + "' must not be empty");
  return out;
}

std::vector<double> Params::numbers(const std::string& key) const {
  std::vector<double> out;
  for (const auto& w : words(key)) out.push_back(parse_number(key, w));
  return out;
}

}  // namespace kwlab::cli
