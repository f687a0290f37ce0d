#include "kwlab/bilinear.hpp"

#include <cmath>

#include "kwlab/error.hpp"
#include "kwlab/fft.hpp"

namespace kwlab {
namespace {

std::size_t padded_index(int j, std::size_t n) {
  return static_cast<std::size_t>(j < 0 ? j + static_cast<int>(n) : j);
}

}  // namespace

SpaceTimeField product_coefficients(const SpaceTimeField& u, const SpaceTimeField& v, bool direct) {
  if (!u.same_lattice(v)) throw ConfigError("bilinear: lattice mismatch");
  GridSpec g2 = u.grid;
  g2.modes = 2 * u.grid.modes;
  SpaceTimeField out(g2, u.window, 2 * u.tmodes, u.taper);
  const std::size_t m = u.grid.modes, mt = u.tmodes, m2 = g2.modes, mt2 = out.tmodes;

  if (direct) {
    for (std::size_t r1 = 0; r1 < mt; ++r1)
      for (std::size_t s1 = 0; s1 < m; ++s1) {
        const cplx a = u.coeffs[r1 * m + s1];
        if (a == cplx{}) continue;
        const int j1 = u.tmode(r1), k1 = u.grid.mode(s1);
        for (std::size_t r2 = 0; r2 < mt; ++r2)
          for (std::size_t s2 = 0; s2 < m; ++s2) {
            const int j = j1 + v.tmode(r2), k = k1 + v.grid.mode(s2);
            out.coeffs[padded_index(j, mt2) * m2 + padded_index(k, m2)] += a * v.coeffs[r2 * m + s2];
          }
      }
    return out;
  }

  auto pad = [&](const SpaceTimeField& f) {
    std::vector<cplx> p(mt2 * m2);
    for (std::size_t r = 0; r < mt; ++r)
      for (std::size_t s = 0; s < m; ++s)
        p[padded_index(f.tmode(r), mt2) * m2 + padded_index(f.grid.mode(s), m2)] = f.coeffs[r * m + s];
    return p;
  };
  const auto pu = pad(u), pv = pad(v);
  std::vector<cplx> a(mt2 * m2), b(mt2 * m2);
  fft::dft2(mt2, m2, pu, a, fft::Direction::Backward);
  fft::dft2(mt2, m2, pv, b, fft::Direction::Backward);
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  fft::dft2(mt2, m2, a, out.coeffs, fft::Direction::Forward);
  const double scale = 1.0 / static_cast<double>(mt2 * m2);
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

SampleSet apply_bilinear_weight(const SampleSet& f) {
  const double lam = f.lambda;
  const int bet = f.beta;
  return f.weighted([=](double tau, double xi) {
    const double mu = modulation(tau, xi, lam, bet);
    return cplx{0.0, xi} / std::sqrt(1.0 + mu * mu);
  });
}

double bilinear_lhs(const SpaceTimeField& u, const SpaceTimeField& v, double s, const NormSpec& w) {
  NormSpec spec = w;
  spec.kind = NormKind::W;
  spec.s = s;
  return norm(apply_bilinear_weight(to_samples(product_coefficients(u, v))), spec);
}

double bilinear_lhs(const CellField& u, const CellField& v, double s, const NormSpec& w) {
  NormSpec spec = w;
  spec.kind = NormKind::W;
  spec.s = s;
  return norm(apply_bilinear_weight(to_samples(convolve(u, v))), spec);
}

AlgebraicGap algebraic_relation_gap(double xi, double xi1, double lambda, int beta) {
  const double xi2 = xi - xi1;
  AlgebraicGap g;
  g.lower_bound = 5.0 / 6.0 *
                  std::abs(xi * xi1 * xi2 *
                           (xi * xi + xi1 * xi1 + xi2 * xi2 + 1.2 * beta / (lambda * lambda)));
  g.characteristic = std::abs(dispersion_symbol(xi, lambda, beta) - dispersion_symbol(xi1, lambda, beta) -
                              dispersion_symbol(xi2, lambda, beta));
  return g;
}

HighHighLow high_high_low_family(double N, double lambda, int beta, int points) {
  if (!(N >= 2.0) || points < 2) throw ConfigError("high_high_low_family: need N >= 2 and points >= 2");
  const double alpha = std::pow(N, -1.5);
  const double dxi = alpha / points;
  const auto k0 = static_cast<std::int64_t>(std::llround(N / dxi));
  HighHighLow f{CellField(dxi, lambda, beta), CellField(dxi, lambda, beta)};
  for (int i = 0; i < points; ++i) {
    const std::int64_t k = k0 + i;
    const double pu = dispersion_symbol(f.u.xi(k), lambda, beta);
    const double pv = dispersion_symbol(f.v.xi(-k), lambda, beta);
    f.u.add_box(k, pu - 1.0, pu + 1.0, 1.0);
    f.v.add_box(-k, pv - 1.0, pv + 1.0, 1.0);
  }
  return f;
}

double high_high_low_ratio(double N, double s, const NormSpec& w) {
  const auto f = high_high_low_family(N);
  NormSpec spec = w;
  spec.kind = NormKind::W;
  spec.s = s;
  return bilinear_lhs(f.u, f.v, s, w) / (norm(f.u, spec) * norm(f.v, spec));
}

}  // namespace kwlab
