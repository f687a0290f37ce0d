#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/experiments.hpp"

namespace kwlab::cli {

/// Typed access to a parsed config; every failure is a ConfigError naming the key.
class Params {
 public:
  explicit Params(const ExperimentConfig& cfg) : cfg_(cfg) {}

  const std::string& text(const std::string& key) const;
  double number(const std::string& key) const;  // accepts p/q fractions
  std::int64_t integer(const std::string& key) const;
  std::size_t count(const std::string& key) const;  // integer >= 1
  bool flag(const std::string& key) const;
  std::vector<double> numbers(const std::string& key) const;  // comma separated
  std::vector<std::string> words(const std::string& key) const;

 private:
  const ExperimentConfig& cfg_;
};

double parse_number(const std::string& key, const std::string& value);

}  // namespace kwlab::cli
