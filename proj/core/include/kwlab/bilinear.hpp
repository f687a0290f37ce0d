#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kwlab/cells.hpp"
#include "kwlab/norms.hpp"
#include "kwlab/spacetime.hpp"

namespace kwlab {

/// Coefficients of uv on the doubled lattice (2 M_t x 2 M, same T_w and L), so the
/// convolution never wraps. direct = true uses the O((M M_t)^2) sum.
SpaceTimeField product_coefficients(const SpaceTimeField& u, const SpaceTimeField& v, bool direct = false);

/// i xi <tau - p(xi)>^{-1} applied to every sample.
SampleSet apply_bilinear_weight(const SampleSet& f);

/// W^s norm of the product coefficients times i xi <tau - p>^{-1}.
double bilinear_lhs(const SpaceTimeField& u, const SpaceTimeField& v, double s, const NormSpec& w = {});
double bilinear_lhs(const CellField& u, const CellField& v, double s, const NormSpec& w = {});

struct AlgebraicGap {
  double lower_bound = 0.0;     // (5/6)|xi xi1 xi2 (xi^2 + xi1^2 + xi2^2 + (6/5) beta lambda^-2)|
  double characteristic = 0.0;  // |p(xi) - p(xi1) - p(xi - xi1)|
};
AlgebraicGap algebraic_relation_gap(double xi, double xi1, double lambda, int beta);

/// Pair of near-characteristic boxes at xi in [N, N + N^{-3/2}] and its mirror;
/// the product lands at |xi| <= N^{-3/2} with modulation ~ N^{5/2}.
struct HighHighLow {
  CellField u, v;
};
HighHighLow high_high_low_family(double N, double lambda = 1.0, int beta = 0, int points = 32);

/// bilinear_lhs(u, v, s) / (W^s(u) W^s(v)) for the family above.
double high_high_low_ratio(double N, double s, const NormSpec& w = {});

}  // namespace kwlab
