#include "kwlab/estimate_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <random>

#include "kwlab/bilinear.hpp"
#include "kwlab/energies.hpp"
#include "kwlab/error.hpp"
#include "kwlab/parallel.hpp"

namespace kwlab {
namespace {

cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  const double re = nd(rng);
  return {re, nd(rng)};
}

bool is_dyadic(double n) {
  int e = 0;
  return n > 0.0 && std::frexp(n, &e) == 0.5;
}

template <typename F>
void run_samples(RatioReport& r, std::size_t count, const std::vector<double>& scales, F&& one) {
  std::vector<double> out(count * scales.size());
  parallel_chunks(out.size(), [&](std::size_t i) { out[i] = one(scales[i / count], i); });
  for (std::size_t i = 0; i < out.size(); ++i) r.add(scales[i / count], out[i]);
  r.finalize();
}

}  // namespace

void RatioReport::add(double scale, double ratio) {
  scales.push_back(scale);
  ratios.push_back(ratio);
}

void RatioReport::finalize() {
  max = 0.0;
  double sum = 0.0;
  std::map<double, double> per;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const double r = ratios[i];
    if (!std::isfinite(r) || r < 0.0) throw NumericalError(name + ": ratio is negative or non-finite");
    max = std::max(max, r);
    sum += r;
    auto [it, fresh] = per.try_emplace(scales[i], r);
    if (!fresh) it->second = std::max(it->second, r);
  }
  mean = ratios.empty() ? 0.0 : sum / static_cast<double>(ratios.size());
  scale_max.assign(per.begin(), per.end());
}

void RatioReport::merge(const RatioReport& other) {
  if (other.name != name || other.seed != seed) throw ConfigError("RatioReport: merging different runs");
  for (std::size_t i = 0; i < other.ratios.size(); ++i) add(other.scales[i], other.ratios[i]);
  finalize();
}

double RatioReport::max_at(double scale) const {
  for (const auto& [s, m] : scale_max)
    if (s == scale) return m;
  throw ConfigError(name + ": no samples at the requested scale");
}

void write_ratio_csv(std::ostream& out, const RatioReport& r) {
  const auto old = out.precision(17);
  out << "scale,ratio\n";
  for (std::size_t i = 0; i < r.ratios.size(); ++i) out << r.scales[i] << ',' << r.ratios[i] << '\n';
  out.precision(old);
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

double product_l2(const CellField& u, const CellField& v) { return x_norm(to_samples(convolve(u, v)), 0.0, 0.0); }

RatioReport improved_bilinear_check(double N1, double N2, double b, std::size_t count, std::uint64_t seed) {
  if (!is_dyadic(N1) || !is_dyadic(N2) || N2 < 1.0) throw ConfigError("improved_bilinear_check: N1, N2 must be dyadic >= 1");
  if (N1 <= 4.0 * N2) throw ConfigError("improved_bilinear_check: scale overlap (N1 <= 4 N2)");
  if (!(b > 0.0 && b <= 0.5)) throw ConfigError("improved_bilinear_check: b must lie in (0, 1/2]");
  if (count == 0) throw ConfigError("improved_bilinear_check: count must be positive");

  constexpr int kPoints = 64;
  const double dxi = N2 / kPoints;
  const int kstar = static_cast<int>(std::lround(std::log2(std::pow(N1, 4) * N2)));
  const double norm_scale = std::pow(N1, -4.0 * b) * std::pow(N2, 0.5 - b);

  RatioReport r;
  r.name = "improved_bilinear";
  r.seed = seed;
  run_samples(r, count, {N1 / N2}, [&](double, std::size_t i) {
    std::mt19937_64 rng(sample_seed(seed, 0, i));
    CellField u(dxi, 1.0, 0), v(dxi, 1.0, 0);
    const auto k1 = static_cast<std::int64_t>(std::llround(N1 / dxi));
    const auto k2 = static_cast<std::int64_t>(std::llround(N2 / dxi));
    for (int j = 0; j < kPoints; ++j) {
      const double p = dispersion_symbol(u.xi(k1 + j), 1.0, 0);
      u.add_box(k1 + j, p - 1.0, p, gaussian(rng));
      u.add_box(k1 + j, p, p + 1.0, gaussian(rng));
    }
    const int shell = kstar + 1 + static_cast<int>(rng() % 3);
    const double sign = (rng() & 1) ? 1.0 : -1.0;
    const double lo = std::ldexp(1.0, shell), w = lo / 4.0;
    for (int j = 0; j < kPoints; ++j) {
      const double p = dispersion_symbol(v.xi(k2 + j), 1.0, 0);
      for (int q = 0; q < 4; ++q) {
        const double a = p + sign * (lo + q * w), c = p + sign * (lo + (q + 1) * w);
        v.add_box(k2 + j, std::min(a, c), std::max(a, c), gaussian(rng));
      }
    }
    const double den = norm_scale * x21_norm(to_samples(u), 0.0, 0.5) * x21_norm(to_samples(v), 0.0, b);
    return product_l2(u, v) / den;
  });
  return r;
}

std::string to_string(Smoothing w) {
  switch (w) {
    case Smoothing::Smooth0: return "smooth_0";
    case Smoothing::Smooth4: return "smooth_4";
    case Smoothing::Smooth2: return "smooth_2";
    case Smoothing::L4: return "l4";
  }
  return "?";
}

Smoothing parse_smoothing(const std::string& s) {
  for (Smoothing w : {Smoothing::Smooth0, Smoothing::Smooth4, Smoothing::Smooth2, Smoothing::L4})
    if (to_string(w) == s) return w;
  throw ConfigError("unknown smoothing estimate '" + s + "'");
}

double smoothing_exponent(Smoothing w) {
  switch (w) {
    case Smoothing::Smooth0: return -2.0;
    case Smoothing::Smooth4: return 0.25;
    case Smoothing::Smooth2: return 1.25;
    case Smoothing::L4: return -0.375;
  }
  return 0.0;
}

CellField linear_packet(double N, std::size_t points, std::uint64_t seed, bool random_phase) {
  if (!(N >= 2.0) || points == 0) throw ConfigError("linear_packet: need N >= 2 and points > 0");
  const double dxi = 1.0 / (40.0 * std::pow(N, 4));
  if (N / dxi > 1e17) throw ConfigError("linear_packet: under-resolved (lattice index overflow)");
  CellField f(dxi, 1.0, 0);
  std::mt19937_64 rng(seed);
  const auto k0 = static_cast<std::int64_t>(std::llround(N / dxi));
  for (std::size_t j = 0; j < points; ++j) {
    const auto k = k0 + static_cast<std::int64_t>(j);
    const double p = dispersion_symbol(f.xi(k), 1.0, 0);
    f.add_box(k, p - 0.5, p + 0.5, random_phase ? gaussian(rng) : cplx{1.0, 0.0});
  }
  return f;
}

RatioReport smoothing_check(double N, Smoothing which, std::size_t count, std::uint64_t seed) {
  if (!is_dyadic(N) || N < 2.0) throw ConfigError("smoothing_check: N must be dyadic >= 2");
  if (count == 0) throw ConfigError("smoothing_check: count must be positive");
  constexpr std::size_t kPoints = 64, kNt = 513, kNx = 256;
  constexpr double kHalfWindow = 64.0;
  RatioReport r;
  r.name = "smoothing_" + to_string(which);
  r.seed = seed;
  run_samples(r, count, {N}, [&](double, std::size_t i) {
    const auto f = linear_packet(N, kPoints, sample_seed(seed, 1, i));
    const auto phys = evaluate(f, dispersion_symbol(N, 1.0, 0), -kHalfWindow, 2.0 * kHalfWindow / (kNt - 1), kNt, kNx);
    const double inf = std::numeric_limits<double>::infinity();
    double lhs = 0.0;
    switch (which) {
      case Smoothing::Smooth0: lhs = mixed_norm(phys, inf, 2.0, MixedOrder::SpaceFirst); break;
      case Smoothing::Smooth4: lhs = mixed_norm(phys, 4.0, inf, MixedOrder::SpaceFirst); break;
      case Smoothing::Smooth2: lhs = mixed_norm(phys, 2.0, inf, MixedOrder::SpaceFirst); break;
      case Smoothing::L4: lhs = mixed_norm(phys, 4.0, 4.0, MixedOrder::SpaceFirst); break;
    }
    return lhs / (std::pow(N, smoothing_exponent(which)) * x21_norm(to_samples(f), 0.0, 0.5));
  });
  return r;
}

std::string to_string(InteractionCase c) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v", "vi"};
  return names[static_cast<int>(c)];
}

InteractionCase parse_interaction_case(const std::string& s) {
  for (int i = 0; i < 6; ++i)
    if (to_string(static_cast<InteractionCase>(i)) == s) return static_cast<InteractionCase>(i);
  throw ConfigError("unknown interaction case '" + s + "'");
}

namespace {

constexpr double kCaseDxi = 1.0 / 16.0;
constexpr int kCasePoints = 16;

// One box per frequency; modulation drawn log-uniformly inside the frequency's own region.
// Low frequencies take the top modulation octaves [N^5/32, N^5] of the scale.
void add_random_box(CellField& f, std::int64_t k, double N, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double xi = f.xi(k);
  const double p = dispersion_symbol(xi, f.lambda, f.beta);
  double hi = std::pow(N, 5) + 2.0, lo = std::max(1.0, hi / 32.0);
  if (std::abs(xi) > 1.0) {
    const double thr = region_threshold(xi, f.lambda, f.beta);
    if (unit(rng) < 0.5) {
      lo = 1.0;
      hi = std::max(thr, 2.0);
    } else {
      lo = thr * 1.01;
      hi = 16.0 * thr;
    }
  }
  const double mag = (lo >= hi) ? lo : lo * std::exp(unit(rng) * std::log(hi / lo));
  const double mu = (unit(rng) < 0.5 ? -1.0 : 1.0) * mag;
  const double w = std::max(0.5, 0.25 * mag);
  double a = p + mu - 0.5 * w, b = p + mu + 0.5 * w;
  if (lo > 1.0) {  // keep the whole box at modulation >= lo
    if (mu > 0) a = std::max(a, p + lo), b = std::max(b, a + w);
    else b = std::min(b, p - lo), a = std::min(a, b - w);
  }
  f.add_box(k, a, b, gaussian(rng));
}

std::int64_t draw_k(double lo, double hi, std::mt19937_64& rng) {
  const auto a = static_cast<std::int64_t>(std::ceil(lo / kCaseDxi));
  const auto b = static_cast<std::int64_t>(std::floor(hi / kCaseDxi));
  return a + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::max<std::int64_t>(1, b - a)));
}

}  // namespace

RatioReport bilinear_ratio_test(InteractionCase c, double s, int max_exp, std::size_t count, std::uint64_t seed) {
  if (max_exp < 1 || max_exp > 10) throw ConfigError("bilinear_ratio_test: max_exp must lie in [1, 10]");
  if (count == 0) throw ConfigError("bilinear_ratio_test: count must be positive");
  std::vector<double> scales;
  for (int e = 1; e <= max_exp; ++e) scales.push_back(std::ldexp(1.0, e));
  NormSpec w;
  w.kind = NormKind::W;
  w.s = s;

  RatioReport r;
  r.name = "bilinear_case_" + to_string(c);
  r.seed = seed;
  run_samples(r, count, scales, [&](double N, std::size_t i) {
    std::mt19937_64 rng(sample_seed(seed, 2 + static_cast<std::uint64_t>(c), i));
    const double low = std::max(1.0, N / 8.0);
    for (int attempt = 0; attempt < 100; ++attempt) {
      CellField u(kCaseDxi, 1.0, 0), v(kCaseDxi, 1.0, 0);
      for (int j = 0; j < kCasePoints; ++j) {
        std::int64_t ku = 0, kv = 0;
        switch (c) {
          case InteractionCase::I: ku = draw_k(-2.0, 2.0, rng), kv = draw_k(-2.0, 2.0, rng); break;
          case InteractionCase::II: ku = draw_k(N, 2 * N, rng), kv = -ku + draw_k(-1.0, 1.0, rng); break;
          case InteractionCase::III: ku = draw_k(N, 2 * N, rng), kv = -ku + draw_k(low, 2 * low, rng); break;
          case InteractionCase::IV: ku = draw_k(-1.0, 1.0, rng), kv = draw_k(N, 2 * N, rng); break;
          case InteractionCase::V: ku = draw_k(low, 2 * low, rng), kv = draw_k(N, 2 * N, rng); break;
          case InteractionCase::VI: ku = draw_k(N, 2 * N, rng), kv = draw_k(N, 2 * N, rng); break;
        }
        add_random_box(u, ku, N, rng);
        add_random_box(v, kv, N, rng);
      }
      const double den = norm(u, w) * norm(v, w);
      if (den > 0.0 && std::isfinite(den)) return bilinear_lhs(u, v, s, w) / den;
    }
    throw ConfigError("bilinear_ratio_test: degenerate sampler (zero-norm draws)");
  });
  return r;
}

double decay_exponent(const RatioReport& r) {
  if (r.scale_max.size() < 3) throw ConfigError("decay_exponent: need at least three scales");
  std::vector<double> x, y;
  for (std::size_t i = 1; i < r.scale_max.size(); ++i) {
    x.push_back(r.scale_max[i].first);
    y.push_back(r.scale_max[i].second);
  }
  return -loglog_slope(x, y);
}

}  // namespace kwlab
