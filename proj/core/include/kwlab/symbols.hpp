#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <string>

#include "kwlab/imultiplier.hpp"

namespace kwlab {

using cplx = std::complex<double>;

/// Value of a symbol plus the number of resonant internal evaluations that were zeroed.
struct SymbolValue {
  cplx value{};
  int excluded = 0;
};

/// A k-multiplier evaluated on zero-sum real tuples.
struct MultiplierSymbol {
  int arity = 0;
  std::function<SymbolValue(std::span<const double>)> eval;
  std::string name;

  cplx operator()(std::span<const double> xi) const { return eval(xi).value; }
};

/// [M]_sym: average over all arity! argument permutations.
MultiplierSymbol symmetrize(const MultiplierSymbol& m);

/// i (sum xi^5 + beta lambda^-2 sum xi^3), evaluated literally.
cplx resonance_denominator(std::span<const double> xi, double lambda, int beta);
/// Factored forms on the zero-sum hyperplane (k = 3 or 4); exact zeros on pair cancellations.
cplx resonance_denominator_factored(std::span<const double> xi, double lambda, int beta);

enum class ResonancePolicy { Throw, ZeroAndCount };

struct SymbolContext {
  IMultiplier im;
  double lambda = 1.0;
  int beta = 0;
  double eps_den = 1e-9;
  /// Pair sums |xi_i + xi_j| beyond this are dropped (Galerkin cutoff); infinity disables it.
  double pair_cutoff = std::numeric_limits<double>::infinity();
  ResonancePolicy policy = ResonancePolicy::Throw;
};

/// The I-method symbol hierarchy M3, sigma3, M4, sigma4, M5 for one context.
class SymbolSet {
 public:
  /// dxi/kmax describe the lattice on which m is tabulated.
  SymbolSet(const SymbolContext& ctx, double dxi, int kmax);
  explicit SymbolSet(const SymbolContext& ctx);

  const SymbolContext& context() const { return ctx_; }
  double m(double xi) const { return (*table_)(xi); }

  SymbolValue m3(double a, double b, double c) const;
  SymbolValue sigma3(double a, double b, double c) const;
  SymbolValue m4(double a, double b, double c, double d) const;
  SymbolValue sigma4(double a, double b, double c, double d) const;
  SymbolValue m5(double a, double b, double c, double d, double e) const;

  /// Symbols of a fixed name as MultiplierSymbol: "m2", "m3", "sigma3", "m4", "sigma4", "m5".
  MultiplierSymbol symbol(const std::string& name) const;

 private:
  bool pair_kept(double sum) const;
  SymbolValue resonant(const std::string& which, std::span<const double> xi) const;

  SymbolContext ctx_;
  std::shared_ptr<const MultiplierTable> table_;
};

/// Convenience wrappers on an ad-hoc context (throwing policy).
cplx m3_symbol(std::span<const double> xi, const SymbolContext& ctx);
cplx sigma3(std::span<const double> xi, const SymbolContext& ctx);
cplx m4_symbol(std::span<const double> xi, const SymbolContext& ctx);
cplx sigma4(std::span<const double> xi, const SymbolContext& ctx);
cplx m5_symbol(std::span<const double> xi, const SymbolContext& ctx);

}  // namespace kwlab
