#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "kwlab/spectral.hpp"
#include "kwlab/symbols.hpp"

namespace kwlab {

enum class QuadratureMode { Auto, Full, MonteCarlo };

struct QuadratureOptions {
  QuadratureMode mode = QuadratureMode::Auto;
  /// Largest grid for which arity-5 sums are enumerated in full.
  std::size_t full_limit_modes = 32;
  std::size_t samples = 1 << 18;
  std::uint64_t seed = 0x6b776c6162ULL;
};

struct LambdaResult {
  cplx value{};
  double std_error = 0.0;  // zero for full quadrature
  std::size_t tuples = 0;  // tuples enumerated or sampled
  std::size_t excluded = 0;
  bool monte_carlo = false;
};

/// L * sum over zero-sum tuples of retained modes of M(xi) prod u_l(xi_l).
LambdaResult lambda_k(const MultiplierSymbol& symbol, std::span<const SpectralField* const> fields,
                      const QuadratureOptions& opt = {});

/// Pre-tabulated symbol values over the nonzero retained zero-sum tuples of one grid.
class LambdaPlan {
 public:
  /// symmetric: the symbol is permutation invariant, so each multiset of modes is visited once
  /// and weighted by its number of orderings.
  LambdaPlan(const MultiplierSymbol& symbol, const GridSpec& grid, bool symmetric = false);

  int arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  std::size_t excluded() const { return excluded_; }

  /// Same sum as lambda_k for mean-zero fields.
  cplx evaluate(std::span<const SpectralField* const> fields) const;
  cplx evaluate(const SpectralField& u) const;

  /// Tuple n of the plan (arity modes) and its weighted symbol value.
  std::span<const std::int16_t> modes(std::size_t n) const {
    return {modes_.data() + n * static_cast<std::size_t>(arity_), static_cast<std::size_t>(arity_)};
  }
  cplx value(std::size_t n) const { return values_[n]; }

 private:
  GridSpec grid_;
  int arity_ = 0;
  std::vector<std::int16_t> modes_;  // arity entries per tuple
  std::vector<cplx> values_;
  std::size_t excluded_ = 0;
};

}  // namespace kwlab
