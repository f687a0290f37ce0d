#include "kwlab/energies.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "kwlab/error.hpp"

namespace kwlab {
namespace {

SymbolContext make_context(const GridSpec& g, const IMultiplier& im, bool galerkin, double eps) {
  SymbolContext ctx;
  ctx.im = im;
  ctx.lambda = g.lambda;
  ctx.beta = g.beta;
  ctx.eps_den = eps;
  if (galerkin) ctx.pair_cutoff = g.xi(g.retained());
  ctx.policy = ResonancePolicy::ZeroAndCount;
  return ctx;
}

// Under the free flow only the correction terms move: d/dt Lambda_k(sigma_k) = -Lambda_k(M_k).
double linear_forcing(const EnergyEngine& engine, const SpectralField& u, int order) {
  double f = 0.0;
  if (order >= 3) f -= engine.forcing(u, 2).real();
  if (order >= 4) f -= engine.forcing(u, 3).real();
  return f;
}

}  // namespace

EnergyEngine::EnergyEngine(const GridSpec& grid, const IMultiplier& im, bool galerkin, double eps_den)
    : grid_(grid),
      im_(im),
      symbols_(make_context(grid, im, galerkin, eps_den), grid.dxi(), 5 * grid.retained()) {
  grid.validate();
}

const LambdaPlan& EnergyEngine::plan(const std::string& name) const {
  std::lock_guard lock(mutex_);
  for (const auto& [n, p] : plans_)
    if (n == name) return *p;
  plans_.emplace_back(name, std::make_shared<LambdaPlan>(symbols_.symbol(name), grid_, true));
  return *plans_.back().second;
}

std::size_t EnergyEngine::excluded(const std::string& symbol) const { return plan(symbol).excluded(); }

double EnergyEngine::e2(const SpectralField& u) const {
  if (!(u.grid == grid_)) throw ConfigError("energy: grid mismatch");
  double sum = 0.0;
  for (int k = -grid_.retained(); k <= grid_.retained(); ++k) {
    const double m = symbols_.m(grid_.xi(k));
    sum += m * m * std::norm(u.at(k));
  }
  return grid_.length * sum;
}

EnergyValues EnergyEngine::evaluate(const SpectralField& u, int level) const {
  if (level < 2 || level > 4) throw ConfigError("energy: level must be 2, 3 or 4");
  EnergyValues v;
  v.e2 = e2(u);
  v.e3 = v.e4 = v.e2;
  const double ref = std::max(v.e2, 1e-300);
  if (level >= 3) {
    const auto& p3 = plan("sigma3");
    const cplx l3 = p3.evaluate(u);
    v.e3 = v.e2 + l3.real();
    v.imag3 = std::abs(l3.imag()) / ref;
    v.excluded3 = p3.excluded();
    v.e4 = v.e3;
  }
  if (level >= 4) {
    const auto& p4 = plan("sigma4");
    const cplx l4 = p4.evaluate(u);
    v.e4 = v.e3 + l4.real();
    v.imag4 = std::abs(l4.imag()) / ref;
    v.excluded4 = p4.excluded();
  }
  return v;
}

cplx EnergyEngine::forcing(const SpectralField& u, int order) const {
  switch (order) {
    case 2: return plan("m3").evaluate(u);
    case 3: return plan("m4").evaluate(u);
    case 4:
      if (grid_.modes <= QuadratureOptions{}.full_limit_modes) return plan("m5").evaluate(u);
      {
        std::array<const SpectralField*, 5> f{&u, &u, &u, &u, &u};
        return lambda_k(symbols_.symbol("m5"), f).value;
      }
    default: throw ConfigError("forcing: order must be 2, 3 or 4");
  }
}

double e2(const SpectralField& u, const IMultiplier& im) {
  return EnergyEngine(u.grid, im).e2(u);
}

double e3(const SpectralField& u, const IMultiplier& im) {
  return EnergyEngine(u.grid, im).evaluate(u, 3).e3;
}

double e4(const SpectralField& u, const IMultiplier& im) {
  return EnergyEngine(u.grid, im).evaluate(u, 4).e4;
}

IdentityResidual derivative_identity_residual(const Trajectory& traj, const IMultiplier& im, int order,
                                              double eps_den) {
  if (order < 2 || order > 4) throw ConfigError("derivative identity: order must be 2, 3 or 4");
  if (traj.config.dealias != Dealias::GalerkinConsistent)
    throw ConfigError("derivative identity: truncation mismatch (trajectory is not galerkin_consistent)");
  const std::size_t n = traj.snapshots.size();
  if (n < 3) throw ConfigError("derivative identity: need at least three snapshots");
  const double h = traj.times[1] - traj.times[0];
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(traj.times[i] - traj.times[i - 1] - h) > 1e-9 * h)
      throw ConfigError("derivative identity: snapshots must be uniformly spaced");

  EnergyEngine engine(traj.grid, im, true, eps_den);
  std::vector<double> energy(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto v = engine.evaluate(traj.snapshots[i], order);
    energy[i] = order == 2 ? v.e2 : order == 3 ? v.e3 : v.e4;
  }

  IdentityResidual out;
  out.order = order;
  double emax = 0.0;
  for (double e : energy) emax = std::max(emax, std::abs(e));
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.times.push_back(traj.times[i]);
    out.derivative.push_back((energy[i + 1] - energy[i - 1]) / (2.0 * h));
    out.forcing.push_back(traj.config.nonlinear ? engine.forcing(traj.snapshots[i], order).real()
                                                : linear_forcing(engine, traj.snapshots[i], order));
  }
  for (double f : out.forcing) out.scale = std::max(out.scale, std::abs(f));
  if (out.scale == 0.0) out.scale = std::max(emax, 1e-300);
  for (std::size_t i = 0; i < out.times.size(); ++i) {
    out.residual.push_back(std::abs(out.derivative[i] - out.forcing[i]) / out.scale);
    out.max_residual = std::max(out.max_residual, out.residual.back());
  }
  const std::string names[] = {"m3", "m4", "m5"};
  if (traj.config.nonlinear && (order < 4 || traj.grid.modes <= 32))
    out.excluded = engine.excluded(names[order - 2]);
  else if (!traj.config.nonlinear && order >= 3)
    out.excluded = engine.excluded(names[order - 3]);
  return out;
}

}  // namespace kwlab
