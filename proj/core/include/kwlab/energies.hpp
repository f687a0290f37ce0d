#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "kwlab/imultiplier.hpp"
#include "kwlab/multilinear.hpp"
#include "kwlab/solver.hpp"
#include "kwlab/symbols.hpp"

namespace kwlab {

struct EnergyValues {
  double e2 = 0.0;
  double e3 = 0.0;
  double e4 = 0.0;
  double imag3 = 0.0;  // |Im Lambda3(sigma3)| / max(e2, tiny)
  double imag4 = 0.0;
  std::size_t excluded3 = 0;
  std::size_t excluded4 = 0;
};

/// Modified energies and their derivative forcings on one grid, with tabulated symbols.
class EnergyEngine {
 public:
  /// galerkin: apply the solver's retained-mode cutoff to internal pair sums.
  EnergyEngine(const GridSpec& grid, const IMultiplier& im, bool galerkin = true,
               double eps_den = 1e-9);

  const GridSpec& grid() const { return grid_; }
  const SymbolSet& symbols() const { return symbols_; }

  double e2(const SpectralField& u) const;
  /// level 2, 3 or 4; higher levels include the lower ones.
  EnergyValues evaluate(const SpectralField& u, int level = 4) const;
  /// Re Lambda_{order+1}(M_{order+1}) for order 2, 3, 4.
  cplx forcing(const SpectralField& u, int order) const;
  std::size_t excluded(const std::string& symbol) const;
  /// Tabulated symmetric plan for a symbol name of SymbolSet::symbol, built on first use.
  const LambdaPlan& plan(const std::string& name) const;

 private:

  GridSpec grid_;
  IMultiplier im_;
  SymbolSet symbols_;
  mutable std::mutex mutex_;
  mutable std::vector<std::pair<std::string, std::shared_ptr<LambdaPlan>>> plans_;
};

double e2(const SpectralField& u, const IMultiplier& im);
double e3(const SpectralField& u, const IMultiplier& im);
double e4(const SpectralField& u, const IMultiplier& im);

struct IdentityResidual {
  int order = 2;
  std::vector<double> times;      // interior snapshot times
  std::vector<double> derivative; // centred difference of E^(order)
  std::vector<double> forcing;    // Re Lambda_{order+1}(M_{order+1}); free-flow terms for linear runs
  std::vector<double> residual;   // |derivative - forcing| / scale
  double scale = 0.0;
  double max_residual = 0.0;
  std::size_t excluded = 0;
};

IdentityResidual derivative_identity_residual(const Trajectory& traj, const IMultiplier& im, int order,
                                              double eps_den = 1e-9);

}  // namespace kwlab

namespace kwlab {

/// Cumulative Re of the time integral of Lambda(plan)(u(s)) from the first snapshot to each
/// snapshot. Each interval is integrated with exact phases exp(i Omega s) of the free flow and a
/// linear interpolant of the slowly varying interaction-picture product.
std::vector<double> integrated_forcing(const Trajectory& traj, const LambdaPlan& plan);

}  // namespace kwlab

namespace kwlab {

/// Time series of one energy-tracking run.
struct EnergyReport {
  double N = 0.0;
  double s = 0.0;
  GridSpec grid;
  std::vector<double> times;
  std::vector<double> E2, E3, E4;
  /// |E(t) - E(0) - integrated forcing| per level.
  std::vector<double> res2, res3, res4;
  /// max_t |E(t) - E(0)|, taken from the integrated forcing.
  double drift2 = 0.0;
  double drift4 = 0.0;
  /// Same maxima from direct energy differences; limited by the solver error at large N.
  double drift2_direct = 0.0;
  double drift4_direct = 0.0;
  std::size_t excluded3 = 0;
  std::size_t excluded4 = 0;
  std::size_t excluded5 = 0;
};

/// Energies and integrated forcings of every level along a galerkin_consistent trajectory.
EnergyReport energy_track(const Trajectory& traj, const IMultiplier& im, double eps_den = 1e-9);

void write_energy_csv(const EnergyReport& r, const std::string& path);

/// Random-phase initial data with |c_k| = amplitude * <k>^-decay for 1 <= |k| <= kmax.
struct DriftData {
  std::size_t modes = 136;
  double length = 6.283185307179586;
  int beta = 1;
  double amplitude = 0.05;
  double decay = 1.0;
  int kmax = 0;  // 0: all retained modes
  std::uint64_t seed = 42;
};

SpectralField drift_initial_data(const DriftData& d);

struct DriftOptions {
  std::vector<double> N_values{4, 8, 16, 32};
  double s = -38.0 / 21.0;
  double T = 1.0;
  double dt = 1e-5;
  double spacing = 0.02;  // snapshot spacing for the forcing quadrature
  double eps_den = 1e-9;
};

struct DriftResult {
  std::vector<EnergyReport> reports;
  double slope2 = 0.0;
  double slope4 = 0.0;
};

/// Simulates u0 to T and sweeps the I-multiplier threshold over opt.N_values.
DriftResult drift_experiment(const SpectralField& u0, const DriftOptions& opt);
DriftResult drift_experiment(const Trajectory& traj, const DriftOptions& opt);

/// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace kwlab
