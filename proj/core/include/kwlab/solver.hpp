#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "kwlab/spectral.hpp"

namespace kwlab {

enum class Dealias { GalerkinConsistent, TwoThirds, None };
enum class Integrator { IntegratingFactorRK4 };

std::string to_string(Dealias d);
Dealias parse_dealias(const std::string& name);

struct SolverConfig {
  double dt = 1e-3;
  double t_end = 1.0;
  Dealias dealias = Dealias::GalerkinConsistent;
  bool nonlinear = true;
  Integrator integrator = Integrator::IntegratingFactorRK4;

  void validate() const;
};

struct Trajectory {
  GridSpec grid;
  SolverConfig config;
  std::size_t stride = 1;
  std::vector<double> times;
  std::vector<SpectralField> snapshots;
};

/// Fourier coefficients of d/dx (u^2) under the given truncation.
SpectralField nonlinearity(const SpectralField& u, Dealias mode);

/// Reusable integrator state for one grid; not shareable between threads.
class Stepper {
 public:
  Stepper(const GridSpec& grid, const SolverConfig& cfg);
  ~Stepper();
  Stepper(const Stepper&) = delete;
  Stepper& operator=(const Stepper&) = delete;

  /// Advances u in place by dt (negative dt integrates backwards).
  void advance(SpectralField& u, double dt);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SpectralField step(const SpectralField& u, const SolverConfig& cfg);
Trajectory simulate(const SpectralField& u0, const SolverConfig& cfg, std::size_t stride = 1);

double conserved_l2(const SpectralField& u);
double conserved_h2(const SpectralField& u);

/// KWTR header followed by KWSF records.
void write_trajectory(std::ostream& out, const Trajectory& traj);
Trajectory read_trajectory(std::istream& in);
/// CSV with header t,l2,h2.
void write_conserved_csv(std::ostream& out, const Trajectory& traj);

}  // namespace kwlab
