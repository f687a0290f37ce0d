#include "kwlab/multilinear.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "kwlab/error.hpp"
#include "kwlab/parallel.hpp"

namespace kwlab {
namespace {

struct Acc {
  cplx sum{};
  double sumsq = 0.0;
  std::size_t excluded = 0;
  std::size_t tuples = 0;

  Acc operator+(const Acc& o) const {
    return {sum + o.sum, sumsq + o.sumsq, excluded + o.excluded, tuples + o.tuples};
  }
};

std::size_t ipow(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

const GridSpec& common_grid(std::span<const SpectralField* const> fields, int arity) {
  if (static_cast<int>(fields.size()) != arity) throw ConfigError("lambda_k: arity mismatch");
  for (const auto* f : fields)
    if (f == nullptr || !(f->grid == fields[0]->grid)) throw ConfigError("lambda_k: fields on different grids");
  return fields[0]->grid;
}

// Decodes the first arity-1 modes from a flat index and closes the tuple; false if the
// closing mode is not retained.
bool decode(std::size_t n, int arity, int K, std::array<int, 5>& k) {
  const std::size_t base = static_cast<std::size_t>(2 * K + 1);
  int total = 0;
  for (int l = 0; l < arity - 1; ++l) {
    k[l] = static_cast<int>(n % base) - K;
    n /= base;
    total += k[l];
  }
  k[arity - 1] = -total;
  return std::abs(total) <= K;
}

}  // namespace

LambdaResult lambda_k(const MultiplierSymbol& symbol, std::span<const SpectralField* const> fields,
                      const QuadratureOptions& opt) {
  const int arity = symbol.arity;
  if (arity < 2 || arity > 5) throw ConfigError("lambda_k: arity must be in 2..5");
  const GridSpec& g = common_grid(fields, arity);
  const int K = g.retained();
  const std::size_t space = ipow(static_cast<std::size_t>(2 * K + 1), arity - 1);

  bool monte_carlo = opt.mode == QuadratureMode::MonteCarlo;
  if (opt.mode == QuadratureMode::Auto) monte_carlo = arity == 5 && g.modes > opt.full_limit_modes;
  if (!monte_carlo && arity == 5 && g.modes > opt.full_limit_modes)
    throw ResourceLimit("lambda_k: full arity-5 quadrature beyond the configured mode cap");

  auto term = [&](const std::array<int, 5>& k) {
    Acc a;
    cplx prod = 1.0;
    for (int l = 0; l < arity; ++l) prod *= fields[l]->at(k[l]);
    if (prod == cplx{}) return a;
    std::array<double, 5> xi{};
    for (int l = 0; l < arity; ++l) xi[l] = g.xi(k[l]);
    const auto v = symbol.eval(std::span<const double>(xi.data(), static_cast<std::size_t>(arity)));
    a.sum = v.value * prod;
    a.sumsq = std::norm(a.sum);
    a.excluded = v.excluded > 0 ? 1 : 0;
    a.tuples = 1;
    return a;
  };

  LambdaResult out;
  out.monte_carlo = monte_carlo;
  if (!monte_carlo) {
    const Acc acc = deterministic_sum<Acc>(space, [&](std::size_t n) {
      std::array<int, 5> k{};
      if (!decode(n, arity, K, k)) return Acc{};
      return term(k);
    });
    out.value = g.length * acc.sum;
    out.tuples = acc.tuples;
    out.excluded = acc.excluded;
    return out;
  }

  const std::size_t samples = opt.samples;
  if (samples < 2) throw ConfigError("lambda_k: Monte Carlo needs at least 2 samples");
  const std::size_t chunks = (samples + kReductionChunk - 1) / kReductionChunk;
  std::vector<Acc> partial(chunks);
  parallel_chunks(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(opt.seed), static_cast<std::uint32_t>(opt.seed >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::uniform_int_distribution<std::size_t> pick(0, space - 1);
    const std::size_t begin = c * kReductionChunk;
    const std::size_t end = std::min(samples, begin + kReductionChunk);
    std::vector<Acc> local;
    local.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) {
      std::array<int, 5> k{};
      Acc a = decode(pick(rng), arity, K, k) ? term(k) : Acc{};
      a.tuples = 1;
      local.push_back(a);
    }
    partial[c] = pairwise_sum(std::move(local));
  });
  const Acc acc = pairwise_sum(std::move(partial));
  const double n = static_cast<double>(samples);
  const cplx mean = acc.sum / n;
  const double var = std::max(0.0, (acc.sumsq / n - std::norm(mean)) * n / (n - 1.0));
  const double scale = g.length * static_cast<double>(space);
  out.value = scale * mean;
  out.std_error = scale * std::sqrt(var / n);
  out.tuples = acc.tuples;
  out.excluded = acc.excluded;
  return out;
}

LambdaPlan::LambdaPlan(const MultiplierSymbol& symbol, const GridSpec& grid, bool symmetric)
    : grid_(grid), arity_(symbol.arity) {
  if (arity_ < 2 || arity_ > 5) throw ConfigError("LambdaPlan: arity must be in 2..5");
  grid.validate();
  const int K = grid.retained();
  if (K > 32767) throw ResourceLimit("LambdaPlan: grid too large");
  const std::size_t space = ipow(static_cast<std::size_t>(2 * K + 1), arity_ - 1);
  if (space / kReductionChunk > (std::size_t{1} << 24))
    throw ResourceLimit("LambdaPlan: tuple space exceeds the configured cap");

  static constexpr std::array<double, 6> factorial{1, 1, 2, 6, 24, 120};
  struct Part {
    std::vector<std::int16_t> modes;
    std::vector<cplx> values;
    std::size_t excluded = 0;

    void add(const MultiplierSymbol& symbol, const GridSpec& g, const std::array<int, 5>& k, int arity,
             bool symmetric) {
      std::array<double, 5> xi{};
      for (int l = 0; l < arity; ++l) xi[l] = g.xi(k[l]);
      const auto v = symbol.eval(std::span<const double>(xi.data(), static_cast<std::size_t>(arity)));
      if (v.excluded > 0) ++excluded;
      if (v.value == cplx{}) return;
      double weight = 1.0;
      if (symmetric) {
        weight = factorial[static_cast<std::size_t>(arity)];
        for (int l = 0, run = 1; l < arity; ++l) {
          if (l + 1 < arity && k[l + 1] == k[l]) {
            ++run;
          } else {
            weight /= factorial[static_cast<std::size_t>(run)];
            run = 1;
          }
        }
      }
      for (int l = 0; l < arity; ++l) modes.push_back(static_cast<std::int16_t>(k[l]));
      values.push_back(weight * v.value);
    }
  };

  std::vector<Part> parts;
  if (symmetric) {
    // Nondecreasing nonzero tuples, one chunk per leading mode.
    parts.resize(static_cast<std::size_t>(2 * K + 1));
    parallel_chunks(parts.size(), [&](std::size_t c) {
      std::array<int, 5> k{};
      k[0] = static_cast<int>(c) - K;
      if (k[0] == 0) return;
      auto recurse = [&](auto&& self, int depth, int sum) -> void {
        const int remaining = arity_ - depth;
        const int low = k[depth - 1];
        if (remaining == 1) {
          const int last = -sum;
          if (last >= low && last <= K && last != 0) {
            k[depth] = last;
            parts[c].add(symbol, grid, k, arity_, true);
          }
          return;
        }
        for (int next = low; next <= K; ++next) {
          if (next == 0) continue;
          const int rest = -(sum + next);
          const int slots = remaining - 1;
          if (rest < slots * next) break;
          if (rest > slots * K) continue;
          k[depth] = next;
          self(self, depth + 1, sum + next);
        }
      };
      recurse(recurse, 1, k[0]);
    });
  } else {
    const std::size_t chunks = (space + kReductionChunk - 1) / kReductionChunk;
    parts.resize(chunks);
    parallel_chunks(chunks, [&](std::size_t c) {
      const std::size_t begin = c * kReductionChunk;
      const std::size_t end = std::min(space, begin + kReductionChunk);
      std::array<int, 5> k{};
      for (std::size_t n = begin; n < end; ++n) {
        if (!decode(n, arity_, K, k)) continue;
        bool zero_mode = false;
        for (int l = 0; l < arity_; ++l) zero_mode = zero_mode || k[l] == 0;
        if (!zero_mode) parts[c].add(symbol, grid, k, arity_, false);
      }
    });
  }
  for (auto& p : parts) {
    modes_.insert(modes_.end(), p.modes.begin(), p.modes.end());
    values_.insert(values_.end(), p.values.begin(), p.values.end());
    excluded_ += p.excluded;
  }
}

cplx LambdaPlan::evaluate(std::span<const SpectralField* const> fields) const {
  const GridSpec& g = common_grid(fields, arity_);
  if (!(g == grid_)) throw ConfigError("LambdaPlan: grid mismatch");
  const cplx sum = deterministic_sum<cplx>(values_.size(), [&](std::size_t n) {
    cplx prod = values_[n];
    const std::int16_t* k = &modes_[n * static_cast<std::size_t>(arity_)];
    for (int l = 0; l < arity_; ++l) prod *= fields[l]->at(k[l]);
    return prod;
  });
  return g.length * sum;
}

cplx LambdaPlan::evaluate(const SpectralField& u) const {
  std::array<const SpectralField*, 5> f{&u, &u, &u, &u, &u};
  return evaluate(std::span<const SpectralField* const>(f.data(), static_cast<std::size_t>(arity_)));
}

}  // namespace kwlab
