#include "kwlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "kwlab/error.hpp"
#include "kwlab/fft.hpp"

namespace kwlab {

void GridSpec::validate() const {
  if (modes < 4 || modes % 2 != 0) throw ConfigError("grid: M must be even and >= 4");
  if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid: L must be positive");
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw ConfigError("grid: lambda must be >= 1");
  if (beta < -1 || beta > 1) throw ConfigError("grid: beta must be -1, 0 or 1");
  if (modes > max_modes()) throw ResourceLimit("grid: M exceeds the configured mode cap");
}

double GridSpec::dxi() const { return 2.0 * std::numbers::pi / length; }

std::size_t GridSpec::slot(int k) const {
  return k >= 0 ? static_cast<std::size_t>(k) : modes - static_cast<std::size_t>(-k);
}

int GridSpec::mode(std::size_t s) const {
  return s < modes / 2 ? static_cast<int>(s) : static_cast<int>(s) - static_cast<int>(modes);
}

SpectralField::SpectralField(const GridSpec& g, double t) : grid(g), coeffs(g.modes), time(t) {}

std::vector<double> grid_points(const GridSpec& g) {
  std::vector<double> x(g.modes);
  for (std::size_t j = 0; j < g.modes; ++j)
    x[j] = g.length * static_cast<double>(j) / static_cast<double>(g.modes);
  return x;
}

SpectralField forward_transform(const RealField& f, const GridSpec& g) {
  g.validate();
  if (f.samples.size() != g.modes) throw ConfigError("forward_transform: length mismatch");
  std::vector<cplx> in(f.samples.begin(), f.samples.end());
  SpectralField u(g);
  fft::dft(in, u.coeffs, fft::Direction::Forward);
  const double scale = 1.0 / static_cast<double>(g.modes);
  for (auto& c : u.coeffs) c *= scale;
  return u;
}

RealField inverse_transform(const SpectralField& u, double tolerance) {
  if (u.coeffs.size() != u.grid.modes) throw ConfigError("inverse_transform: length mismatch");
  std::vector<cplx> out(u.grid.modes);
  fft::dft(u.coeffs, out, fft::Direction::Backward);
  double mass = 0.0;
  for (const auto& c : u.coeffs) mass += std::abs(c);
  RealField f;
  f.samples.resize(out.size());
  double worst = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    f.samples[j] = out[j].real();
    worst = std::max(worst, std::abs(out[j].imag()));
  }
  if (worst > tolerance * std::max(mass, 1e-300) && worst > 0.0)
    throw NumericalError("inverse_transform: input is not Hermitian (imaginary residue " +
                         std::to_string(worst) + ")");
  return f;
}

double dispersion_symbol(double xi, double lambda, int beta) {
  const double xi3 = xi * xi * xi;
  return xi3 * xi * xi + static_cast<double>(beta) / (lambda * lambda) * xi3;
}

SpectralField semigroup_apply(const SpectralField& u, double t) {
  SpectralField out = u;
  out.time = u.time + t;
  const auto& g = u.grid;
  for (std::size_t s = 0; s < g.modes; ++s) {
    const double phase = dispersion_symbol(g.xi(g.mode(s)), g.lambda, g.beta) * t;
    out.coeffs[s] *= std::polar(1.0, phase);
  }
  return out;
}

double sobolev_norm(const SpectralField& u, double s) {
  const auto& g = u.grid;
  double sum = 0.0;
  for (std::size_t i = 0; i < g.modes; ++i) {
    const double xi = g.xi(g.mode(i));
    const double w = s == 0.0 ? 1.0 : std::pow(1.0 + xi * xi, s);
    sum += w * std::norm(u.coeffs[i]);
  }
  return std::sqrt(g.length * sum);
}

std::size_t max_modes() {
  constexpr std::size_t fallback = std::size_t{1} << 24;
  const char* env = std::getenv("KWLAB_MAX_MODES");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return fallback;
  return static_cast<std::size_t>(v);
}

SpectralField scale_field(const SpectralField& u0, double lambda) {
  const GridSpec& g = u0.grid;
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) throw ConfigError("scale_field: lambda must be >= 1");
  const double target = lambda * static_cast<double>(g.modes);
  const double rounded = std::round(target);
  if (std::abs(target - rounded) > 1e-9 * target || static_cast<std::size_t>(rounded) % 2 != 0)
    throw ConfigError("scale_field: lambda * M must be an even integer");
  if (rounded > static_cast<double>(max_modes()))
    throw ResourceLimit("scale_field: rescaled mode count exceeds the configured cap");

  GridSpec h = g;
  h.modes = static_cast<std::size_t>(rounded);
  h.length = lambda * g.length;
  h.lambda = g.lambda * lambda;
  SpectralField out(h, u0.time);
  const double amp = std::pow(lambda, -4.0);
  for (int k = g.k_min(); k <= g.k_max(); ++k) {
    const cplx c = amp * u0.at(k);
    if (k == g.k_min() && h.modes > g.modes) {
      out.at(k) += 0.5 * c;
      out.at(-k) += 0.5 * c;
    } else {
      out.at(k) += c;
    }
  }
  return out;
}

double hermitian_defect(const SpectralField& u) {
  const auto& g = u.grid;
  double scale = 0.0;
  double defect = 0.0;
  for (const auto& c : u.coeffs) scale = std::max(scale, std::abs(c));
  for (int k = 0; k <= g.k_max(); ++k)
    defect = std::max(defect, std::abs(u.at(k) - std::conj(u.at(-k))));
  defect = std::max(defect, std::abs(u.at(g.k_min()).imag()));
  return scale > 0.0 ? defect / scale : 0.0;
}

void make_real_mean_zero(SpectralField& u) {
  const auto& g = u.grid;
  u.at(0) = 0.0;
  u.at(g.k_min()) = 0.0;
  for (int k = 1; k <= g.k_max(); ++k) {
    const cplx avg = 0.5 * (u.at(k) + std::conj(u.at(-k)));
    u.at(k) = avg;
    u.at(-k) = std::conj(avg);
  }
}

}  // namespace kwlab
