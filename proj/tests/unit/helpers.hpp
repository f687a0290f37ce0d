#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "kwlab/spectral.hpp"

namespace kwtest {

inline constexpr double kPi = std::numbers::pi;

inline kwlab::GridSpec grid(std::size_t m, double length = 2 * kPi, int beta = 0,
                            double lambda = 1.0) {
  kwlab::GridSpec g;
  g.modes = m;
  g.length = length;
  g.beta = beta;
  g.lambda = lambda;
  return g;
}

/// Real mean-zero field with Gaussian coefficients damped as exp(-(k/width)^2), modes |k|<=kmax.
inline kwlab::SpectralField random_field(const kwlab::GridSpec& g, std::mt19937_64& rng,
                                         double amplitude, int kmax = -1, double width = 4.0) {
  std::normal_distribution<double> n(0.0, 1.0);
  kwlab::SpectralField u(g);
  const int top = kmax < 0 ? g.retained() : kmax;
  for (int k = 1; k <= top; ++k) {
    const double env = amplitude * std::exp(-(k * k) / (width * width));
    const kwlab::cplx c(env * n(rng), env * n(rng));
    u.at(k) = c;
    u.at(-k) = std::conj(c);
  }
  return u;
}

inline kwlab::SpectralField cosine(const kwlab::GridSpec& g, int k = 1, double amp = 1.0) {
  kwlab::SpectralField u(g);
  u.at(k) = amp / 2;
  u.at(-k) = amp / 2;
  return u;
}

inline double max_diff(const kwlab::SpectralField& a, const kwlab::SpectralField& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

}  // namespace kwtest
