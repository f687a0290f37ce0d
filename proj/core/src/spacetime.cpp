#include "kwlab/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "kwlab/error.hpp"
#include "kwlab/fft.hpp"

namespace kwlab {

using namespace detail;

std::string to_string(Taper t) { return t == Taper::Hann ? "hann" : "none"; }

Taper parse_taper(const std::string& s) {
  if (s == "none") return Taper::None;
  if (s == "hann") return Taper::Hann;
  throw ConfigError("unknown taper '" + s + "'");
}

SpaceTimeField::SpaceTimeField(const GridSpec& g, double w, std::size_t m, Taper t)
    : grid(g), window(w), tmodes(m), taper(t), coeffs(g.modes * m) {
  g.validate();
  if (!(w > 0.0) || !std::isfinite(w)) throw ConfigError("spacetime: window length must be positive");
  if (m < 2 || m % 2 != 0) throw ConfigError("spacetime: temporal mode count must be even and >= 2");
}

int SpaceTimeField::tmode(std::size_t row) const {
  const auto m = static_cast<std::ptrdiff_t>(tmodes);
  const auto r = static_cast<std::ptrdiff_t>(row);
  return static_cast<int>(r < m / 2 ? r : r - m);
}

std::size_t SpaceTimeField::trow(int j) const {
  const auto m = static_cast<int>(tmodes);
  if (j < -m / 2 || j >= m / 2) throw ConfigError("spacetime: temporal mode out of range");
  return static_cast<std::size_t>(j < 0 ? j + m : j);
}

double SpaceTimeField::tau(int j) const { return 2.0 * std::numbers::pi * j / window; }

bool SpaceTimeField::same_lattice(const SpaceTimeField& o) const {
  return grid == o.grid && window == o.window && tmodes == o.tmodes;
}

SampleSet to_samples(const SpaceTimeField& f) {
  SampleSet out{f.grid.lambda, f.grid.beta, {}};
  const std::size_t m = f.grid.modes;
  for (std::size_t s = 0; s < m; ++s) {
    SampleColumn col{f.grid.xi(f.grid.mode(s)), f.grid.length, {}, {}, {}};
    for (std::size_t r = 0; r < f.tmodes; ++r) {
      const cplx c = f.coeffs[r * m + s];
      if (c == cplx{}) continue;
      col.tau.push_back(f.tau(f.tmode(r)));
      col.w_tau.push_back(f.window);
      col.value.push_back(c);
    }
    if (!col.tau.empty()) out.columns.push_back(std::move(col));
  }
  return out;
}

double norm(const SpaceTimeField& f, const NormSpec& spec) { return norm(to_samples(f), spec); }

SpaceTimeField spacetime_transform(const Trajectory& traj, std::size_t tmodes, Taper taper) {
  if (traj.snapshots.size() < tmodes || tmodes < 2)
    throw ConfigError("spacetime_transform: need at least tmodes snapshots");
  const double t0 = traj.times[0];
  const double dt = traj.times[1] - t0;
  if (!(dt > 0.0)) throw ConfigError("spacetime_transform: non-increasing times");
  for (std::size_t n = 0; n < tmodes; ++n)
    if (std::abs(traj.times[n] - t0 - n * dt) > 1e-9 * std::max(1.0, n * dt))
      throw ConfigError("spacetime_transform: non-uniform sampling");

  SpaceTimeField f(traj.grid, tmodes * dt, tmodes, taper);
  const std::size_t m = traj.grid.modes;
  std::vector<cplx> col(tmodes), spec(tmodes);
  for (std::size_t s = 0; s < m; ++s) {
    for (std::size_t n = 0; n < tmodes; ++n) {
      double w = 1.0;
      if (taper == Taper::Hann) {
        const double h = std::sin(std::numbers::pi * n / tmodes);
        w = h * h;
      }
      col[n] = w * traj.snapshots[n].coeffs[s];
    }
    fft::dft(col, spec, fft::Direction::Forward);
    for (std::size_t r = 0; r < tmodes; ++r) f.coeffs[r * m + s] = spec[r] / static_cast<double>(tmodes);
  }
  return f;
}

void write_spacetime(std::ostream& out, const SpaceTimeField& f) {
  out.write("KWST", 4);
  put_u32(out, 1);
  put_u64(out, f.tmodes);
  put_u64(out, f.grid.modes);
  put_f64(out, f.grid.length);
  put_f64(out, f.grid.lambda);
  put_i8(out, static_cast<std::int8_t>(f.grid.beta));
  put_f64(out, f.window);
  put_i8(out, static_cast<std::int8_t>(f.taper == Taper::Hann ? 1 : 0));
  for (const auto& c : f.coeffs) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
}

SpaceTimeField read_spacetime(std::istream& in) {
  expect_magic(in, "KWST");
  const auto version = get_u32(in);
  if (version != 1) throw FormatError("KWST: unsupported version " + std::to_string(version));
  const auto tmodes = get_u64(in);
  GridSpec g;
  g.modes = get_u64(in);
  g.length = get_f64(in);
  g.lambda = get_f64(in);
  g.beta = get_i8(in);
  const double window = get_f64(in);
  const auto taper = get_i8(in);
  if (taper != 0 && taper != 1) throw FormatError("KWST: bad taper tag");
  if (tmodes > (std::size_t{1} << 24)) throw FormatError("KWST: implausible temporal size");
  SpaceTimeField f;
  try {
    f = SpaceTimeField(g, window, tmodes, taper == 1 ? Taper::Hann : Taper::None);
  } catch (const ConfigError& e) {
    throw FormatError(std::string("KWST: invalid header: ") + e.what());
  }
  for (auto& c : f.coeffs) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c = {re, im};
  }
  return f;
}

PhysicalField to_physical(const SpaceTimeField& f) {
  PhysicalField p;
  p.nt = f.tmodes;
  p.nx = f.grid.modes;
  p.dt = f.window / static_cast<double>(p.nt);
  p.dx = f.grid.length / static_cast<double>(p.nx);
  p.periodic_time = true;
  p.values.resize(p.nt * p.nx);
  fft::dft2(p.nt, p.nx, f.coeffs, p.values, fft::Direction::Backward);
  return p;
}

namespace {

double combine(double acc, double v, double w, double p) {
  return std::isinf(p) ? std::max(acc, v) : acc + w * std::pow(v, p);
}

double finish(double acc, double p) { return std::isinf(p) ? acc : std::pow(acc, 1.0 / p); }

}  // namespace

double mixed_norm(const PhysicalField& f, double p_space, double q_time, MixedOrder order) {
  for (double e : {p_space, q_time})
    if (!(e >= 1.0)) throw ConfigError("mixed_norm: exponents must lie in [1, inf]");
  if (f.values.size() != f.nt * f.nx) throw ConfigError("mixed_norm: sample count mismatch");
  if (f.nt == 0 || f.nx == 0) return 0.0;

  std::vector<double> wt(f.nt, f.dt);
  if (!f.periodic_time && f.nt > 1) wt.front() = wt.back() = 0.5 * f.dt;

  const bool time_inner = order == MixedOrder::SpaceFirst;
  const std::size_t outer_n = time_inner ? f.nx : f.nt;
  const std::size_t inner_n = time_inner ? f.nt : f.nx;
  const double p_in = time_inner ? q_time : p_space;
  const double p_out = time_inner ? p_space : q_time;

  double outer = 0.0;
  for (std::size_t o = 0; o < outer_n; ++o) {
    double inner = 0.0;
    for (std::size_t i = 0; i < inner_n; ++i) {
      const std::size_t n = time_inner ? i : o;
      const std::size_t m = time_inner ? o : i;
      inner = combine(inner, std::abs(f.values[n * f.nx + m]), time_inner ? wt[n] : f.dx, p_in);
    }
    outer = combine(outer, finish(inner, p_in), time_inner ? f.dx : wt[o], p_out);
  }
  return finish(outer, p_out);
}

}  // namespace kwlab
