#include "kwlab/imethod_checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "kwlab/energies.hpp"
#include "kwlab/error.hpp"
#include "kwlab/parallel.hpp"

namespace kwlab {
namespace {

constexpr std::size_t kSampleChunk = 4096;

struct Partial {
  std::size_t samples = 0;
  std::size_t skipped = 0;
  double max_ratio = 0.0;
  double sum = 0.0;
  std::array<double, 4> argmax{};
};

// ratio(tuple) returns a negative value for skipped tuples.
BoundCheck sample_ratios(const std::string& name, int arity, double N, const TupleSampling& opt,
                         const std::function<double(std::array<double, 4>&)>& ratio) {
  if (opt.samples == 0) throw ConfigError(name + ": need at least one sample");
  if (!(opt.lo_factor > 0.0) || !(opt.hi_factor > opt.lo_factor))
    throw ConfigError(name + ": invalid magnitude range");
  const std::size_t chunks = (opt.samples + kSampleChunk - 1) / kSampleChunk;
  std::vector<Partial> parts(chunks);
  const double lo = std::log(opt.lo_factor * N);
  const double hi = std::log(opt.hi_factor * N);
  parallel_chunks(chunks, [&](std::size_t c) {
    std::seed_seq seq{static_cast<std::uint64_t>(opt.seed), static_cast<std::uint64_t>(c)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> logmag(lo, hi);
    std::bernoulli_distribution sign(0.5);
    Partial& p = parts[c];
    const std::size_t n = std::min(kSampleChunk, opt.samples - c * kSampleChunk);
    for (std::size_t i = 0; i < n; ++i) {
      std::array<double, 4> xi{};
      double sum = 0.0;
      for (int l = 0; l + 1 < arity; ++l) {
        xi[l] = std::exp(logmag(rng)) * (sign(rng) ? 1.0 : -1.0);
        sum += xi[l];
      }
      xi[arity - 1] = -sum;
      const double r = ratio(xi);
      ++p.samples;
      if (!(r >= 0.0)) {
        ++p.skipped;
        continue;
      }
      p.sum += r;
      if (r > p.max_ratio) {
        p.max_ratio = r;
        p.argmax = xi;
      }
    }
  });
  BoundCheck out;
  out.name = name;
  out.seed = opt.seed;
  for (const auto& p : parts) {
    out.samples += p.samples;
    out.skipped += p.skipped;
    out.mean_ratio += p.sum;
    if (p.max_ratio > out.max_ratio) {
      out.max_ratio = p.max_ratio;
      out.argmax = p.argmax;
    }
  }
  const std::size_t used = out.samples - out.skipped;
  out.mean_ratio = used ? out.mean_ratio / static_cast<double>(used) : 0.0;
  return out;
}

SymbolContext counting(SymbolContext ctx) {
  ctx.im.validate();
  ctx.policy = ResonancePolicy::ZeroAndCount;
  return ctx;
}

void sort_by_magnitude(std::array<double, 4>& xi, int arity) {
  std::sort(xi.begin(), xi.begin() + arity, [](double a, double b) { return std::abs(a) > std::abs(b); });
}

}  // namespace

BoundCheck m3_bound_check(const SymbolContext& ctx_in, const TupleSampling& opt) {
  const SymbolContext ctx = counting(ctx_in);
  const SymbolSet sym(ctx);
  return sample_ratios("m3_bound", 3, ctx.im.N, opt, [&](std::array<double, 4>& xi) {
    sort_by_magnitude(xi, 3);
    const double m = sym.m(xi[2]);
    const double bound = std::abs(xi[2]) * m * m;
    const SymbolValue v = sym.m3(xi[0], xi[1], xi[2]);
    if (v.excluded > 0 || !(bound > 0.0)) return -1.0;
    return std::abs(v.value) / bound;
  });
}

BoundCheck m4_bound_check(const SymbolContext& ctx_in, const TupleSampling& opt) {
  const SymbolContext ctx = counting(ctx_in);
  const SymbolSet sym(ctx);
  const double N = ctx.im.N;
  return sample_ratios("m4_bound", 4, N, opt, [&](std::array<double, 4>& xi) {
    sort_by_magnitude(xi, 4);
    const double star = std::min({std::abs(xi[3]), std::abs(xi[0] + xi[1]), std::abs(xi[0] + xi[2]),
                                  std::abs(xi[0] + xi[3])});
    const double m = sym.m(star);
    const double den = std::abs(resonance_denominator_factored(std::span<const double>(xi.data(), 4),
                                                               ctx.lambda, ctx.beta));
    const double a = N + std::abs(xi[0]);
    const double b = N + std::abs(xi[1]);
    const double c = N + std::abs(xi[2]);
    const double d = N + std::abs(xi[3]);
    const double bound = den * m * m / (a * a * b * b * c * c * c * d);
    const SymbolValue v = sym.m4(xi[0], xi[1], xi[2], xi[3]);
    if (v.excluded > 0 || !(bound > 0.0)) return -1.0;
    return std::abs(v.value) / bound;
  });
}

FixedTimeCheck fixed_time_difference_check(const FixedTimeOptions& opt) {
  if (opt.s_values.empty() || opt.fields == 0) throw ConfigError("fixed-time check: empty sample");
  if (!(opt.amp_lo > 0.0) || opt.amp_hi < opt.amp_lo) throw ConfigError("fixed-time check: invalid amplitudes");
  const GridSpec g{opt.modes, opt.length, 1.0, opt.beta};
  g.validate();
  FixedTimeCheck out;
  out.s_values = opt.s_values;
  for (std::size_t si = 0; si < opt.s_values.size(); ++si) {
    const IMultiplier im{opt.N, opt.s_values[si]};
    im.validate();
    const EnergyEngine engine(g, im, false);
    std::seed_seq seq{static_cast<std::uint64_t>(opt.seed), static_cast<std::uint64_t>(si)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> logamp(std::log(opt.amp_lo), std::log(opt.amp_hi));
    double c_max = 0.0;
    for (std::size_t f = 0; f < opt.fields; ++f) {
      SpectralField u(g);
      for (int k = 1; k <= g.retained(); ++k) {
        const cplx c(gauss(rng), gauss(rng));
        u.at(k) = c;
        u.at(-k) = std::conj(c);
      }
      const double scale = std::exp(logamp(rng)) / std::sqrt(conserved_l2(u));
      for (auto& c : u.coeffs) c *= scale;
      const EnergyValues v = engine.evaluate(u, 4);
      const double iu = std::sqrt(v.e2);
      out.excluded = std::max(out.excluded, v.excluded3 + v.excluded4);
      c_max = std::max(c_max, std::abs(v.e4 - v.e2) / (iu * iu * iu + iu * iu * iu * iu));
    }
    out.C_per_s.push_back(c_max);
    out.C = std::max(out.C, c_max);
    out.fields += opt.fields;
  }
  return out;
}

GwpSchedule gwp_schedule(double s, double T, double eps0, double C1, double C2) {
  if (!(s >= -38.0 / 21.0 - 1e-15 && s < 0.0)) throw ConfigError("gwp_schedule: s must lie in [-38/21, 0)");
  if (!(T > 0.0)) throw ConfigError("gwp_schedule: T must be positive");
  if (!(eps0 > 0.0 && eps0 < 1.0)) throw ConfigError("gwp_schedule: eps0 must lie in (0, 1)");
  if (!(C1 > 0.0 && C2 > 0.0)) throw ConfigError("gwp_schedule: constants must be positive");
  const double p = -s - 3.5;  // lambda exponent, negative
  for (int j = 0; j < 1000; ++j) {  // N up to 2^999
    const double N = std::ldexp(1.0, j);
    // lambda^p N^-s <= eps0  <=>  lambda >= (eps0 N^s)^(1/p)
    const double lam_lo = std::max(1.0, std::exp((std::log(eps0) + s * std::log(N)) / p));
    const double lam_hi = std::exp(-s * std::log(N) - std::log(T) / 5.0);
    if (lam_lo <= lam_hi * (1.0 + 1e-12)) {
      GwpSchedule out;
      out.lambda = lam_lo;
      out.N = N;
      out.iteration_count = static_cast<std::uint64_t>(std::ceil(std::pow(lam_lo, 5.0) * T - 1e-9));
      out.growth = eps0 * C1 * C2 * std::pow(lam_lo, -s) * std::pow(N, -s);
      out.exponent_a = 7.0 / (5.0 * (2.0 * s + 5.0));
      out.exponent_b = 1.4 * (2.0 * s + 5.0);
      out.bound_a = std::pow(T, out.exponent_a);
      out.bound_b = std::pow(T, out.exponent_b);
      return out;
    }
  }
  throw ConfigError("gwp_schedule: infeasible inputs");
}

}  // namespace kwlab
