#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "kwlab/cells.hpp"

namespace kwlab {

struct RatioReport {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<double> scales;  // dyadic scale of each sample
  std::vector<double> ratios;
  double max = 0.0;
  double mean = 0.0;
  std::vector<std::pair<double, double>> scale_max;  // (scale, max ratio), increasing scale

  std::size_t count() const { return ratios.size(); }
  void add(double scale, double ratio);
  /// Recomputes max, mean and scale_max; throws NumericalError on a negative or non-finite ratio.
  void finalize();
  /// Appends the other report's samples; names and seeds must match.
  void merge(const RatioReport& other);
  double max_at(double scale) const;
};

/// One line per sample: scale,ratio.
void write_ratio_csv(std::ostream& out, const RatioReport& r);

/// Per-sample generator: seed_seq{seed, stream, index}.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// ||u_{N1} v_{N2}||_{L2} / (N1^{-4b} N2^{1/2-b} ||u||_{X21(0,1/2)} ||v||_{X21(0,b)}).
/// u: Gaussian boxes within unit modulation on xi in [N1, N1 + N2); v: Gaussian boxes on
/// xi in [N2, 2 N2) in modulation shells 2^(k*+1..k*+3), 2^k* = N1^4 N2.
RatioReport improved_bilinear_check(double N1, double N2, double b, std::size_t count, std::uint64_t seed);

/// The product L2 norm of two cell fields, ||u * v||_{L2(tau, xi)}.
double product_l2(const CellField& u, const CellField& v);

enum class Smoothing { Smooth0, Smooth4, Smooth2, L4 };
std::string to_string(Smoothing w);
Smoothing parse_smoothing(const std::string& s);
/// Exponent e with ||u_N|| <~ N^e ||u_N||_{X21(0,1/2)}: -2, 1/4, 5/4, -3/8.
double smoothing_exponent(Smoothing w);

/// Windowed linear packet at xi ~ N: Gaussian amplitudes on `points` lattice frequencies
/// N + j dxi, dxi = 1 / (40 N^4), unit-width boxes on the characteristic.
CellField linear_packet(double N, std::size_t points, std::uint64_t seed, bool random_phase = true);

RatioReport smoothing_check(double N, Smoothing which, std::size_t count, std::uint64_t seed);

enum class InteractionCase { I, II, III, IV, V, VI };
std::string to_string(InteractionCase c);
InteractionCase parse_interaction_case(const std::string& s);

/// Random W^s ratios bilinear_lhs / (W(u) W(v)) with (N0, N1, N2) drawn from one of
/// the six frequency patterns at each scale 2^1..2^max_exp.
RatioReport bilinear_ratio_test(InteractionCase c, double s, int max_exp, std::size_t count,
                                std::uint64_t seed);

/// delta in max ratio ~ scale^{-delta}, least squares over the per-scale maxima past the first.
double decay_exponent(const RatioReport& r);

}  // namespace kwlab
