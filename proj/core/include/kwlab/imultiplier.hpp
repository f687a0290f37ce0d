#pragma once

#include <vector>

#include "kwlab/spectral.hpp"

namespace kwlab {

enum class Blend { SmoothstepC1 };

/// m(xi) = 1 for |xi| <= N, (|xi|/N)^s for |xi| >= 2N, C1 log-blend between.
struct IMultiplier {
  double N = 1.0;
  double s = -1.0;
  Blend blend = Blend::SmoothstepC1;

  void validate() const;
};

double m_eval(double xi, const IMultiplier& im);
SpectralField apply_I(const SpectralField& u, const IMultiplier& im);

/// m sampled on the lattice k * dxi for |k| <= kmax, falling back to m_eval elsewhere.
class MultiplierTable {
 public:
  MultiplierTable(const IMultiplier& im, double dxi, int kmax);
  double operator()(double xi) const;
  const IMultiplier& multiplier() const { return im_; }

 private:
  IMultiplier im_;
  double dxi_;
  int kmax_;
  std::vector<double> values_;
};

}  // namespace kwlab
