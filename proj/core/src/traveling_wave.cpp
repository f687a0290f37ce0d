#include "kwlab/traveling_wave.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "kwlab/error.hpp"
#include "kwlab/solver.hpp"

namespace kwlab {
namespace {

double profile_symbol(const GridSpec& g, double c, int k) {
  const double xi = g.xi(k);
  return c + xi * xi * xi * xi + xi * xi / (g.lambda * g.lambda);
}

// Coefficients of phi^2 on retained modes, k != 0.
std::vector<cplx> square(const SpectralField& phi) {
  const auto n = nonlinearity(phi, Dealias::GalerkinConsistent);
  std::vector<cplx> out(phi.grid.modes);
  for (int k = 1; k <= phi.grid.retained(); ++k) {
    out[phi.grid.slot(k)] = n.at(k) / cplx(0, phi.grid.xi(k));
    out[phi.grid.slot(-k)] = n.at(-k) / cplx(0, phi.grid.xi(-k));
  }
  return out;
}

}  // namespace

double traveling_wave_residual(const SpectralField& phi, double c) {
  const auto& g = phi.grid;
  const auto n = nonlinearity(phi, Dealias::GalerkinConsistent);
  double sum = 0.0;
  for (int k = -g.retained(); k <= g.retained(); ++k) {
    const double xi = g.xi(k);
    const cplx lin = cplx(0, -xi) * profile_symbol(g, c, k) * phi.at(k);
    sum += std::norm(lin + n.at(k));
  }
  return std::sqrt(g.length * sum);
}

TravelingWave traveling_wave(double c, const GridSpec& g, const TravelingWaveOptions& opt) {
  g.validate();
  if (g.beta != 1) throw ConfigError("traveling_wave: requires beta = 1");
  if (!(c > 0.0) || c > opt.c_max) throw ConfigError("traveling_wave: speed outside (0, c_max]");

  // Even seed: a smooth bump centred at x = 0 with width set by the linear decay rate.
  const double width = std::pow(c, -0.25);
  SpectralField phi(g);
  for (int k = 1; k <= g.retained(); ++k) {
    const double xi = g.xi(k);
    const double bump = 3.0 * c * width * std::sqrt(std::numbers::pi) / g.length *
                        std::exp(-0.25 * xi * xi * width * width);
    phi.at(k) = bump;
    phi.at(-k) = bump;
  }

  TravelingWave out;
  out.speed = c;
  double best = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 1; it <= opt.max_iterations; ++it) {
    const auto sq = square(phi);
    double num = 0.0;
    double den = 0.0;
    for (int k = -g.retained(); k <= g.retained(); ++k) {
      if (k == 0) continue;
      num += profile_symbol(g, c, k) * std::norm(phi.at(k));
      den += (std::conj(phi.at(k)) * sq[g.slot(k)]).real();
    }
    if (!(den > 0.0)) throw NumericalError("traveling_wave: iteration collapsed to zero");
    const double stab = (num / den) * (num / den);
    for (int k = -g.retained(); k <= g.retained(); ++k) {
      if (k == 0) continue;
      // Even profiles have real coefficients; drop rounding drift in the imaginary part.
      phi.at(k) = stab * sq[g.slot(k)].real() / profile_symbol(g, c, k);
    }
    out.iterations = it;
    const double r = traveling_wave_residual(phi, c);
    if (r <= opt.tolerance) break;
    if (r < 0.9 * best) {
      best = r;
      stalled = 0;
    } else if (++stalled >= 8) {
      break;
    }
  }
  out.residual = traveling_wave_residual(phi, c);
  if (!(out.residual <= 1e-10)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "traveling_wave: no convergence (residual %.3e after %d iterations)",
                  out.residual, out.iterations);
    throw NumericalError(buf);
  }
  out.profile = std::move(phi);
  return out;
}

ShiftFit shift_align(const SpectralField& u, const SpectralField& phi, double guess) {
  const auto& g = phi.grid;
  if (!(u.grid == g)) throw ConfigError("shift_align: grid mismatch");
  // Maximise the real cross-correlation with Newton steps from the guess.
  auto corr = [&](double s, double& d1, double& d2) {
    double f = 0.0;
    d1 = d2 = 0.0;
    for (int k = g.k_min(); k <= g.k_max(); ++k) {
      const double xi = g.xi(k);
      const cplx w = std::conj(phi.at(k)) * u.at(k) * std::polar(1.0, xi * s);
      f += w.real();
      d1 += (cplx(0, xi) * w).real();
      d2 -= xi * xi * w.real();
    }
    return f;
  };
  double s = guess;
  for (int it = 0; it < 60; ++it) {
    double d1 = 0.0;
    double d2 = 0.0;
    corr(s, d1, d2);
    if (!(d2 < 0.0)) break;
    const double delta = -d1 / d2;
    s += delta;
    if (std::abs(delta) < 1e-15 * std::max(1.0, std::abs(s))) break;
  }
  SpectralField shifted = phi;
  for (int k = g.k_min(); k <= g.k_max(); ++k) shifted.at(k) *= std::polar(1.0, -g.xi(k) * s);
  double err = 0.0;
  for (std::size_t i = 0; i < g.modes; ++i) err += std::norm(u.coeffs[i] - shifted.coeffs[i]);
  const double ref = sobolev_norm(phi, 0.0);
  ShiftFit fit;
  fit.shift = s;
  fit.error = std::sqrt(g.length * err) / ref;
  return fit;
}

}  // namespace kwlab
