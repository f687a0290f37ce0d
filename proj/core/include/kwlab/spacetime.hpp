#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "kwlab/norms.hpp"
#include "kwlab/solver.hpp"
#include "kwlab/spectral.hpp"

namespace kwlab {

enum class Taper { None, Hann };
std::string to_string(Taper t);
Taper parse_taper(const std::string& s);

/// Fourier-series coefficients c(tau_j, xi_k) of u(t, x) = sum c e^{i(tau t + xi x)}
/// on a window of length T_w; tau_j = 2 pi j / T_w, both axes in FFT order.
struct SpaceTimeField {
  GridSpec grid;
  double window = 1.0;    // T_w
  std::size_t tmodes = 0;  // M_t
  Taper taper = Taper::None;
  std::vector<cplx> coeffs;  // row-major, M_t rows of M columns

  SpaceTimeField() = default;
  SpaceTimeField(const GridSpec& g, double window, std::size_t tmodes, Taper taper = Taper::None);

  int tmode(std::size_t row) const;
  std::size_t trow(int j) const;
  double tau(int j) const;
  cplx& at(int j, int k) { return coeffs[trow(j) * grid.modes + grid.slot(k)]; }
  const cplx& at(int j, int k) const { return coeffs[trow(j) * grid.modes + grid.slot(k)]; }

  bool same_lattice(const SpaceTimeField& o) const;
};

/// Lattice samples with weights T_w and L, so X(0,0) is the L2 norm over the window.
SampleSet to_samples(const SpaceTimeField& f);
double norm(const SpaceTimeField& f, const NormSpec& spec);

/// The first `tmodes` snapshots of a uniformly sampled trajectory, tapered and
/// transformed in t per spatial mode.
SpaceTimeField spacetime_transform(const Trajectory& traj, std::size_t tmodes, Taper taper);

void write_spacetime(std::ostream& out, const SpaceTimeField& f);
SpaceTimeField read_spacetime(std::istream& in);

/// Complex samples u(t_n, x_m), row-major in t.
struct PhysicalField {
  double dt = 0.0;
  double dx = 0.0;
  std::size_t nt = 0;
  std::size_t nx = 0;
  bool periodic_time = true;  // uniform weights; otherwise trapezoidal in t
  std::vector<cplx> values;
};

PhysicalField to_physical(const SpaceTimeField& f);

enum class MixedOrder { SpaceFirst, TimeFirst };

/// SpaceFirst is L_x^p L_t^q (time norm inside); TimeFirst is L_t^q L_x^p.
/// Exponents in [1, inf]; x is periodic with uniform weights.
double mixed_norm(const PhysicalField& f, double p_space, double q_time, MixedOrder order);

}  // namespace kwlab
