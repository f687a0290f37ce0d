#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>

#include "kwlab/energies.hpp"
#include "kwlab/error.hpp"
#include "kwlab/parallel.hpp"
#include "kwlab/spectral.hpp"

namespace kwlab {
namespace {

// w0 = int_0^1 e^{i t x} (1 - x) dx, w1 = int_0^1 e^{i t x} x dx.
std::pair<cplx, cplx> filon_weights(double t) {
  if (std::abs(t) < 1e-2) {
    cplx w0{};
    cplx w1{};
    cplx term = 1.0;
    for (int m = 0; m < 10; ++m) {
      // int_0^1 x^m dx = 1/(m+1), int_0^1 x^{m+1} dx = 1/(m+2)
      w1 += term / static_cast<double>(m + 2);
      w0 += term * (1.0 / (m + 1) - 1.0 / (m + 2));
      term *= cplx(0.0, t) / static_cast<double>(m + 1);
    }
    return {w0, w1};
  }
  const cplx e = std::polar(1.0, t);
  const cplx it(0.0, t);
  const cplx full = (e - 1.0) / it;
  const cplx w1 = e / it + (e - 1.0) / (t * t);
  return {full - w1, w1};
}

}  // namespace

std::vector<double> integrated_forcing(const Trajectory& traj, const LambdaPlan& plan) {
  const std::size_t n = traj.snapshots.size();
  if (n < 2) throw ConfigError("integrated_forcing: need at least two snapshots");
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(traj.times[i] - traj.times[i - 1] - h) > 1e-9 * h)
      throw ConfigError("integrated_forcing: snapshots must be uniformly spaced");

  const GridSpec& g = traj.grid;
  const std::size_t modes = g.modes;
  std::vector<double> p(modes);
  for (std::size_t s = 0; s < modes; ++s) p[s] = dispersion_symbol(g.xi(g.mode(s)), g.lambda, g.beta);
  // interaction picture v = exp(-i p t) u
  std::vector<cplx> v(n * modes);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < modes; ++s)
      v[i * modes + s] = std::polar(1.0, -p[s] * traj.times[i]) * traj.snapshots[i].coeffs[s];

  const std::size_t intervals = n - 1;
  const std::size_t entries = plan.size();
  const std::size_t chunks = (entries + kReductionChunk - 1) / kReductionChunk;
  std::vector<std::vector<cplx>> partial(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    std::vector<cplx> acc(intervals, cplx{});
    std::vector<cplx> prod(n);
    const std::size_t begin = c * kReductionChunk;
    const std::size_t end = std::min(entries, begin + kReductionChunk);
    for (std::size_t e = begin; e < end; ++e) {
      const auto k = plan.modes(e);
      std::array<std::size_t, 5> slot{};
      double omega = 0.0;
      for (std::size_t l = 0; l < k.size(); ++l) {
        slot[l] = g.slot(k[l]);
        omega += p[slot[l]];
      }
      for (std::size_t i = 0; i < n; ++i) {
        cplx q = plan.value(e);
        for (std::size_t l = 0; l < k.size(); ++l) q *= v[i * modes + slot[l]];
        prod[i] = q;
      }
      const auto [w0, w1] = filon_weights(omega * h);
      const cplx step = std::polar(1.0, omega * h);
      cplx phase = std::polar(1.0, omega * traj.times[0]);
      for (std::size_t i = 0; i < intervals; ++i) {
        acc[i] += phase * (prod[i] * w0 + prod[i + 1] * w1);
        phase *= step;
      }
    }
    partial[c] = std::move(acc);
  });
  // fixed pairwise tree over chunk partials
  while (partial.size() > 1) {
    const std::size_t half = (partial.size() + 1) / 2;
    for (std::size_t i = 0; i < partial.size() / 2; ++i) {
      auto& a = partial[2 * i];
      const auto& b = partial[2 * i + 1];
      for (std::size_t j = 0; j < intervals; ++j) a[j] += b[j];
      if (i != 2 * i) partial[i] = std::move(a);
    }
    if (partial.size() % 2 == 1) partial[partial.size() / 2] = std::move(partial.back());
    partial.resize(half);
  }
  std::vector<double> out(n, 0.0);
  if (partial.empty()) return out;
  for (std::size_t i = 0; i < intervals; ++i)
    out[i + 1] = out[i] + g.length * h * partial[0][i].real();
  return out;
}

EnergyReport energy_track(const Trajectory& traj, const IMultiplier& im, double eps_den) {
  if (traj.config.dealias != Dealias::GalerkinConsistent)
    throw ConfigError("energy track: truncation mismatch (trajectory is not galerkin_consistent)");
  const std::size_t n = traj.snapshots.size();
  EnergyReport r;
  r.N = im.N;
  r.s = im.s;
  r.grid = traj.grid;
  r.times = traj.times;
  EnergyEngine engine(traj.grid, im, true, eps_den);
  for (const auto& u : traj.snapshots) {
    const auto v = engine.evaluate(u, 4);
    r.E2.push_back(v.e2);
    r.E3.push_back(v.e3);
    r.E4.push_back(v.e4);
  }
  // integrated right-hand sides of the three energy identities
  std::vector<double> g2(n, 0.0), g3(n, 0.0), g4(n, 0.0);
  if (n >= 2) {
    const auto f3 = integrated_forcing(traj, engine.plan("m3"));
    const auto f4 = integrated_forcing(traj, engine.plan("m4"));
    r.excluded3 = engine.excluded("m3");
    r.excluded4 = engine.excluded("m4");
    if (traj.config.nonlinear) {
      const auto f5 = integrated_forcing(traj, engine.plan("m5"));
      r.excluded5 = engine.excluded("m5");
      g2 = f3;
      g3 = f4;
      g4 = f5;
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        g3[i] = -f3[i];
        g4[i] = -f3[i] - f4[i];
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double d2 = r.E2[i] - r.E2[0];
    const double d3 = r.E3[i] - r.E3[0];
    const double d4 = r.E4[i] - r.E4[0];
    r.res2.push_back(std::abs(d2 - g2[i]));
    r.res3.push_back(std::abs(d3 - g3[i]));
    r.res4.push_back(std::abs(d4 - g4[i]));
    r.drift2 = std::max(r.drift2, std::abs(g2[i]));
    r.drift4 = std::max(r.drift4, std::abs(g4[i]));
    r.drift2_direct = std::max(r.drift2_direct, std::abs(d2));
    r.drift4_direct = std::max(r.drift4_direct, std::abs(d4));
  }
  return r;
}

void write_energy_csv(const EnergyReport& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path);
  out << "t,E2,E3,E4,res2,res3,res4\n" << std::setprecision(17);
  for (std::size_t i = 0; i < r.times.size(); ++i)
    out << r.times[i] << ',' << r.E2[i] << ',' << r.E3[i] << ',' << r.E4[i] << ',' << r.res2[i] << ','
        << r.res3[i] << ',' << r.res4[i] << '\n';
  if (!out) throw Error("write failed: " + path);
}

SpectralField drift_initial_data(const DriftData& d) {
  GridSpec g{d.modes, d.length, 1.0, d.beta};
  g.validate();
  const int kmax = d.kmax > 0 ? std::min(d.kmax, g.retained()) : g.retained();
  SpectralField u(g);
  std::mt19937_64 rng(d.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::acos(-1.0));
  for (int k = 1; k <= kmax; ++k) {
    const double xi = g.xi(k);
    const double a = d.amplitude * std::pow(1.0 + xi * xi, -0.5 * d.decay);
    const cplx c = std::polar(a, phase(rng));
    u.coeffs[g.slot(k)] = c;
    u.coeffs[g.slot(-k)] = std::conj(c);
  }
  return u;
}

namespace {

void check_sweep(const GridSpec& g, const DriftOptions& opt) {
  if (opt.N_values.empty()) throw ConfigError("drift experiment: empty N sweep");
  if (!(opt.s >= -38.0 / 21.0 - 1e-12) || opt.s > 0.0)
    throw ConfigError("drift experiment: s must lie in [-38/21, 0]");
  const double xi_max = g.xi(g.retained());
  for (double N : opt.N_values)
    if (!(2.0 * N < xi_max))
      throw ConfigError("drift experiment: under-resolved sweep, 2N must stay below the largest retained frequency");
}

}  // namespace

DriftResult drift_experiment(const SpectralField& u0, const DriftOptions& opt) {
  check_sweep(u0.grid, opt);
  if (!(opt.dt > 0.0) || !(opt.spacing >= opt.dt) || !(opt.T > 0.0))
    throw ConfigError("drift experiment: need 0 < dt <= spacing and T > 0");
  const double ratio = opt.spacing / opt.dt;
  const auto stride = static_cast<std::size_t>(std::llround(ratio));
  const auto steps = static_cast<std::size_t>(std::llround(opt.T / opt.dt));
  if (std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio || steps % stride != 0)
    throw ConfigError("drift experiment: spacing and T must be multiples of dt");
  SolverConfig cfg;
  cfg.dt = opt.dt;
  cfg.t_end = opt.T;
  cfg.dealias = Dealias::GalerkinConsistent;
  return drift_experiment(simulate(u0, cfg, stride), opt);
}

DriftResult drift_experiment(const Trajectory& traj, const DriftOptions& opt) {
  check_sweep(traj.grid, opt);
  DriftResult out;
  for (double N : opt.N_values) out.reports.push_back(energy_track(traj, IMultiplier{N, opt.s}, opt.eps_den));
  if (opt.N_values.size() >= 2) {
    std::vector<double> d2, d4;
    for (const auto& r : out.reports) {
      d2.push_back(r.drift2);
      d4.push_back(r.drift4);
    }
    out.slope2 = loglog_slope(opt.N_values, d2);
    out.slope4 = loglog_slope(opt.N_values, d4);
  }
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw ConfigError("loglog_slope: need two or more matching points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace kwlab
