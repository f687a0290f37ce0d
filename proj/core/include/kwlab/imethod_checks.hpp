#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/symbols.hpp"

namespace kwlab {

/// Random zero-sum tuples: the first k-1 entries have log-uniform magnitudes in
/// [lo_factor * N, hi_factor * N] and random signs; the last closes the sum.
struct TupleSampling {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  double lo_factor = 1.0 / 16.0;
  double hi_factor = 256.0;
};

struct BoundCheck {
  std::string name;
  std::size_t samples = 0;
  std::size_t skipped = 0;  // zero bound or resonant
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::array<double, 4> argmax{};
  std::uint64_t seed = 0;
};

/// max |M3| / (|xi3| m^2(xi3)) with |xi1| >= |xi2| >= |xi3|.
BoundCheck m3_bound_check(const SymbolContext& ctx, const TupleSampling& opt);

/// max |M4| / B4 with sorted magnitudes and
/// B4 = |a4 + beta lambda^-2 b4| m^2(xi4*) / ((N+|xi1|)^2 (N+|xi2|)^2 (N+|xi3|)^3 (N+|xi4|)),
/// xi4* = min{|xi4|, |xi12|, |xi13|, |xi14|}.
BoundCheck m4_bound_check(const SymbolContext& ctx, const TupleSampling& opt);

struct FixedTimeCheck {
  std::size_t fields = 0;
  double C = 0.0;  // max |E4 - E2| / (|Iu|^3 + |Iu|^4)
  std::vector<double> s_values;
  std::vector<double> C_per_s;
  std::size_t excluded = 0;
};

struct FixedTimeOptions {
  std::vector<double> s_values{-7.0 / 4.0, -38.0 / 21.0, -2.0};
  std::size_t fields = 1000;  // per s value
  std::size_t modes = 32;
  double length = 6.283185307179586;
  int beta = 1;
  double N = 4.0;
  double amp_lo = 1e-3;  // L2 norm range of the random fields, log-uniform
  double amp_hi = 1e-1;
  std::uint64_t seed = 7;
};

FixedTimeCheck fixed_time_difference_check(const FixedTimeOptions& opt);

struct GwpSchedule {
  double lambda = 1.0;
  double N = 1.0;
  std::uint64_t iteration_count = 0;  // ceil(lambda^5 T) unit steps of the rescaled problem
  double growth = 0.0;                // eps0 C1 C2 lambda^-s N^-s
  double exponent_a = 0.0;            // 7 / (5 (2s + 5))
  double exponent_b = 0.0;            // (7/5) (2s + 5)
  double bound_a = 0.0;               // T^exponent_a
  double bound_b = 0.0;               // T^exponent_b
};

/// Smallest dyadic N, then smallest lambda >= 1, with lambda^(-s-7/2) N^-s <= eps0 and
/// lambda^5 T <= N^(-5s).
GwpSchedule gwp_schedule(double s, double T, double eps0, double C1 = 1.0, double C2 = 1.0);

}  // namespace kwlab
