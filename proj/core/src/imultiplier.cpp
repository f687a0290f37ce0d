#include "kwlab/imultiplier.hpp"

#include <cmath>
#include <numbers>

#include "kwlab/error.hpp"

namespace kwlab {

void IMultiplier::validate() const {
  if (!(N >= 1.0) || !std::isfinite(N)) throw ConfigError("I-multiplier: N must be >= 1");
  if (!(s <= 0.0) || !std::isfinite(s)) throw ConfigError("I-multiplier: s must be <= 0");
}

double m_eval(double xi, const IMultiplier& im) {
  const double a = std::abs(xi);
  if (a <= im.N || im.s == 0.0) return 1.0;
  const double log_ratio = std::log(a / im.N);
  if (a >= 2.0 * im.N) return std::exp(im.s * log_ratio);
  const double t = log_ratio / std::numbers::ln2;
  const double w = t * t * (3.0 - 2.0 * t);
  return std::exp(w * im.s * log_ratio);
}

SpectralField apply_I(const SpectralField& u, const IMultiplier& im) {
  im.validate();
  SpectralField out = u;
  for (std::size_t i = 0; i < u.coeffs.size(); ++i)
    out.coeffs[i] *= m_eval(u.grid.xi(u.grid.mode(i)), im);
  return out;
}

MultiplierTable::MultiplierTable(const IMultiplier& im, double dxi, int kmax)
    : im_(im), dxi_(dxi), kmax_(kmax), values_(static_cast<std::size_t>(kmax) + 1) {
  for (int k = 0; k <= kmax; ++k) values_[static_cast<std::size_t>(k)] = m_eval(k * dxi, im);
}

double MultiplierTable::operator()(double xi) const {
  const double r = std::abs(xi) / dxi_;
  const double k = std::round(r);
  if (k <= kmax_ && std::abs(r - k) <= 1e-9 * std::max(1.0, k))
    return values_[static_cast<std::size_t>(k)];
  return m_eval(xi, im_);
}

}  // namespace kwlab
