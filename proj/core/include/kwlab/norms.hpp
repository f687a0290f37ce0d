#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kwlab/spectral.hpp"

namespace kwlab {

/// tau - p_lambda(xi).
double modulation(double tau, double xi, double lambda, int beta);

enum class Region { D1, D2, D3 };
std::string to_string(Region r);

/// (31/32)|xi|^5 + (7/8) beta lambda^-2 |xi|^3, taken literally for every beta.
double region_threshold(double xi, double lambda, int beta);

/// D3 iff |xi| <= 1; otherwise D2 iff |tau - p| > threshold, else D1.
Region region_classify(double tau, double xi, double lambda, int beta);

enum class NormKind { X, X21, Y, Z, W };
std::string to_string(NormKind k);
NormKind parse_norm_kind(const std::string& s);

struct NormSpec {
  NormKind kind = NormKind::W;
  double s = 0.0;
  double b = 0.5;  // used by X and X21
  double s2 = 25.0 / 168.0;
  double b2 = 79.0 / 168.0;
  double b1 = 19.0 / 42.0;

  void validate() const;
};

/// Quadrature samples of a space-time spectral density, grouped by frequency.
/// Integrals are sum over columns of w_xi * sum over samples of w_tau * f.
struct SampleColumn {
  double xi = 0.0;
  double w_xi = 0.0;
  std::vector<double> tau;
  std::vector<double> w_tau;
  std::vector<cplx> value;
};

struct SampleSet {
  double lambda = 1.0;
  int beta = 0;
  std::vector<SampleColumn> columns;

  std::size_t size() const;
  /// Keeps the samples for which keep(tau, xi) holds.
  SampleSet restrict_to(const std::function<bool(double, double)>& keep) const;
  SampleSet restrict_to(Region r) const;
  /// value -> f(tau, xi) * value.
  SampleSet weighted(const std::function<cplx(double, double)>& f) const;
};

/// L2 of <xi>^s <tau - p>^b |u|.
double x_norm(const SampleSet& f, double s, double b);
/// l2 over <xi> shells of l1 over <tau - p> shells of block L2 masses.
double x21_norm(const SampleSet& f, double s, double b);
/// l2 over xi of the tau-integral of <xi>^s |u|.
double y_norm(const SampleSet& f, double s);
double norm(const SampleSet& f, const NormSpec& spec);

/// Dyadic shell index j with 2^j <= <x> < 2^(j+1).
int shell_index(double x);

}  // namespace kwlab
