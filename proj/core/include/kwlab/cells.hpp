#pragma once

// Sparse space-time densities for frequencies far beyond any dense lattice.
// A field lives on xi = k * dxi and is piecewise linear in a continuous tau:
// a sum of boxes, or of trapezoids produced by convolving two boxes.

#include <cstdint>
#include <vector>

#include "kwlab/norms.hpp"
#include "kwlab/spacetime.hpp"

namespace kwlab {

/// Support [t0, t0 + w_long + w_short]; ramps of width w_short around a plateau
/// of value `height`. w_short = 0 is a box of width w_long.
struct Trapezoid {
  double t0 = 0.0;
  double w_long = 0.0;
  double w_short = 0.0;
  cplx height{};
};

struct CellColumn {
  std::int64_t k = 0;
  std::vector<Trapezoid> parts;
};

struct CellField {
  double dxi = 1.0;
  double lambda = 1.0;
  int beta = 0;
  std::vector<CellColumn> columns;  // strictly increasing k

  CellField() = default;
  CellField(double dxi, double lambda, int beta);

  double xi(std::int64_t k) const { return dxi * static_cast<double>(k); }
  void add_box(std::int64_t k, double tau_lo, double tau_hi, cplx amplitude);
  std::size_t part_count() const;
  bool empty() const { return columns.empty(); }
};

/// (u * v)(tau, xi) = sum_{xi1} dxi integral u(tau1, xi1) v(tau - tau1, xi - xi1) dtau1.
/// Both inputs must consist of boxes.
CellField convolve(const CellField& u, const CellField& v);

/// Gauss-Legendre samples on every linear piece, split additionally at the dyadic
/// modulation shells and the D1/D2 boundary so shell and region masks are exact.
SampleSet to_samples(const CellField& f);
double norm(const CellField& f, const NormSpec& spec);

/// u(t, x) = sum_xi dxi e^{i xi x} integral u(tau, xi) e^{i (tau - tau_ref) t} dtau on
/// t_n = t_begin + n dt and x_m = m L / nx with L = 2 pi / dxi. Boxes only; the
/// carrier e^{i tau_ref t} is dropped, which leaves |u| unchanged.
PhysicalField evaluate(const CellField& f, double tau_ref, double t_begin, double dt, std::size_t nt,
                       std::size_t nx);

}  // namespace kwlab
