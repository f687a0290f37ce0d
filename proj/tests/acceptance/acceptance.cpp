// One line per acceptance criterion; exit status is the number of failures.
// Usage: kwlab_acceptance [criterion ...]

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "kwlab/bilinear.hpp"
#include "kwlab/energies.hpp"
#include "kwlab/estimate_checks.hpp"
#include "kwlab/experiments.hpp"
#include "kwlab/imethod_checks.hpp"
#include "kwlab/multilinear.hpp"
#include "kwlab/parallel.hpp"
#include "kwlab/solver.hpp"
#include "kwlab/symbols.hpp"
#include "kwlab/traveling_wave.hpp"

using namespace kwlab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

GridSpec grid(std::size_t m, double length, int beta) {
  GridSpec g;
  g.modes = m;
  g.length = length;
  g.beta = beta;
  return g;
}

SpectralField random_field(const GridSpec& g, std::mt19937_64& rng, double amplitude, double width = 1e9) {
  std::normal_distribution<double> n(0.0, 1.0);
  SpectralField u(g);
  for (int k = 1; k <= g.retained(); ++k) {
    const double env = amplitude * std::exp(-(k * k) / (width * width));
    u.at(k) = cplx(env * n(rng), env * n(rng));
    u.at(-k) = std::conj(u.at(k));
  }
  return u;
}

double max_diff(const SpectralField& a, const SpectralField& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) d = std::max(d, std::abs(a.coeffs[i] - b.coeffs[i]));
  return d;
}

MultiplierSymbol raw(int arity, std::function<cplx(std::span<const double>)> f) {
  MultiplierSymbol m;
  m.arity = arity;
  m.name = "raw";
  m.eval = [f](std::span<const double> xi) { return SymbolValue{f(xi), 0}; };
  return m;
}

std::vector<double> zero_sum(std::mt19937_64& rng, int k, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<double> xi(k);
  double sum = 0.0;
  for (int i = 0; i + 1 < k; ++i) sum += xi[i] = u(rng);
  xi[k - 1] = -sum;
  return xi;
}

Outcome linear_exactness() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = grid(64, 2 * kPi, 0);
  SpectralField u0(g);
  u0.at(1) = u0.at(-1) = 0.5;
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.nonlinear = false;
  const auto traj = simulate(u0, cfg, 1000);
  const auto f = inverse_transform(traj.snapshots.back());
  const auto x = grid_points(g);
  double err = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) err = std::max(err, std::abs(f.samples[j] - std::cos(x[j] + 1.0)));
  const double t = seconds_since(t0);
  return {err <= 1e-10 && t < 1.0, fmt("max error %.2e (tol 1e-10), %.3f s (limit 1 s)", err, t)};
}

Outcome l2_conservation() {
  DriftData d;
  d.modes = 256;
  d.decay = 2.0;
  d.kmax = 8;
  SolverConfig cfg;
  cfg.dt = 1e-4;
  cfg.t_end = 1.0;
  const auto traj = simulate(drift_initial_data(d), cfg, 100);
  const double q0 = conserved_l2(traj.snapshots.front());
  double drift = 0.0;
  for (const auto& s : traj.snapshots) drift = std::max(drift, std::abs(conserved_l2(s) - q0) / q0);
  return {drift <= 1e-6, fmt("relative L2 drift %.2e (tol 1e-6)", drift)};
}

SpectralField direct_nonlinearity(const SpectralField& u) {
  const auto& g = u.grid;
  const int K = g.retained();
  SpectralField out(g);
  for (int k1 = -K; k1 <= K; ++k1)
    for (int k2 = -K; k2 <= K; ++k2)
      if (std::abs(k1 + k2) <= K) out.at(k1 + k2) += u.at(k1) * u.at(k2);
  for (int k = g.k_min(); k <= g.k_max(); ++k) out.at(k) *= cplx(0, g.xi(k));
  return out;
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(3);
  const auto g = grid(64, 2 * kPi, 1);
  const auto u = random_field(g, rng, 1.0);
  const double nl = max_diff(nonlinearity(u, Dealias::GalerkinConsistent), direct_nonlinearity(u));

  const auto h = grid(16, 2 * kPi, 1);
  SpectralField v(h);
  v.at(1) = {0.3, 0.1};
  v.at(-1) = std::conj(v.at(1));
  v.at(2) = {-0.2, 0.5};
  v.at(-2) = std::conj(v.at(2));
  SymbolContext ctx;
  ctx.im = IMultiplier{1.0, -38.0 / 21.0};
  ctx.beta = 1;
  const SymbolSet set(ctx, h.dxi(), 5 * h.retained());
  const auto m3 = set.symbol("m3");
  cplx want = 0;
  const int K = h.retained();
  for (int a = -K; a <= K; ++a)
    for (int b = -K; b <= K; ++b) {
      const int c = -a - b;
      if (std::abs(c) > K) continue;
      const std::array<double, 3> xi{h.xi(a), h.xi(b), h.xi(c)};
      want += m3(xi) * v.at(a) * v.at(b) * v.at(c);
    }
  want *= h.length;
  const std::array<const SpectralField*, 3> f{&v, &v, &v};
  const double quad = std::max(std::abs(lambda_k(m3, f).value - want),
                               std::abs(LambdaPlan(m3, h, true).evaluate(v) - want));
  return {nl <= 1e-12 && quad <= 1e-12 && std::abs(want) > 1e-6,
          fmt("FFT vs direct %.2e, Lambda3 vs nested loops %.2e (|Lambda3| %.3e; tol 1e-12)", nl, quad,
              std::abs(want))};
}

Outcome symmetrization_and_multilinearity() {
  std::mt19937_64 rng(4);
  double idem = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int k = 3 + t % 3;
    const double c1 = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto m = raw(k, [c1](std::span<const double> xi) {
      cplx v = c1 * xi[0] * xi[1] * xi[1];
      for (std::size_t i = 0; i < xi.size(); ++i) v += cplx(std::sin(xi[i] * (i + 1)), xi[i] * xi[0]);
      return v;
    });
    const auto once = symmetrize(m);
    const auto twice = symmetrize(once);
    const auto xi = zero_sum(rng, k, 5.0);
    const cplx a = once(xi);
    idem = std::max(idem, std::abs(a - twice(xi)) / (1.0 + std::abs(a)));
  }

  const auto g = grid(16, 2 * kPi, 0);
  const auto m = raw(4, [](auto xi) { return cplx(xi[0] - xi[1] * xi[2], xi[3]); });
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  double lin = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto u = random_field(g, rng, 0.5);
    const auto v = random_field(g, rng, 0.5);
    const auto w = random_field(g, rng, 0.5);
    const double a = coef(rng), b = coef(rng);
    SpectralField mix(g);
    for (std::size_t i = 0; i < mix.coeffs.size(); ++i) mix.coeffs[i] = a * u.coeffs[i] + b * v.coeffs[i];
    const std::size_t slot = static_cast<std::size_t>(t % 4);
    auto args = [&](const SpectralField& x) {
      std::array<const SpectralField*, 4> f{&w, &w, &w, &w};
      f[slot] = &x;
      return f;
    };
    const cplx lhs = lambda_k(m, args(mix)).value;
    const cplx rhs = a * lambda_k(m, args(u)).value + b * lambda_k(m, args(v)).value;
    lin = std::max(lin, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
  }
  return {idem <= 1e-12 && lin <= 1e-12,
          fmt("idempotence %.2e, multilinearity %.2e over 1000 trials each (tol 1e-12 relative)", idem, lin)};
}

Trajectory identity_run(double dt) {
  const auto g = grid(32, 16 * kPi, 1);
  std::mt19937_64 rng(42);
  const auto u0 = random_field(g, rng, 0.1);
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.t_end = 0.04;
  return simulate(u0, cfg, 1);
}

Outcome derivative_identities() {
  const auto t0 = std::chrono::steady_clock::now();
  const IMultiplier im{1.0, -38.0 / 21.0};
  const auto coarse = identity_run(1e-3), fine = identity_run(5e-4);
  bool pass = true;
  std::string detail;
  for (int order : {2, 3, 4}) {
    const double a = derivative_identity_residual(coarse, im, order).max_residual;
    const double b = derivative_identity_residual(fine, im, order).max_residual;
    const double rate = std::log2(a / b);
    pass = pass && a <= 1e-3 && rate >= 1.8;
    detail += fmt("E%d residual %.2e order %.2f; ", order, a, rate);
  }
  const double t = seconds_since(t0);
  return {pass && t < 300.0, detail + fmt("%.1f s (tol 1e-3, order >= 1.8, limit 300 s)", t)};
}

Outcome almost_conservation() {
  const auto r = drift_experiment(drift_initial_data(DriftData{}), DriftOptions{});
  return {r.slope4 < 0.0 && r.slope4 <= r.slope2 - 1.0,
          fmt("slope E2 %.3f, slope E4 %.3f (need E4 < 0 and <= E2 - 1)", r.slope2, r.slope4)};
}

Outcome bound_checks() {
  SymbolContext ctx;
  ctx.im = IMultiplier{4.0, -38.0 / 21.0};
  ctx.beta = 1;
  TupleSampling a;
  a.samples = 100000;
  a.seed = 1;
  TupleSampling b = a;
  b.seed = 2;
  bool pass = true;
  std::string detail;
  for (int which : {3, 4}) {
    const auto x = which == 3 ? m3_bound_check(ctx, a) : m4_bound_check(ctx, a);
    const auto y = which == 3 ? m3_bound_check(ctx, b) : m4_bound_check(ctx, b);
    const double factor = std::max(x.max_ratio, y.max_ratio) / std::min(x.max_ratio, y.max_ratio);
    pass = pass && std::isfinite(x.max_ratio) && std::isfinite(y.max_ratio) && x.max_ratio > 0.0 && factor <= 2.0;
    detail += fmt("M%d max %.3e / %.3e (factor %.3f); ", which, x.max_ratio, y.max_ratio, factor);
  }
  return {pass, detail + "1e5 tuples per batch, factor tol 2"};
}

Outcome fixed_time_difference() {
  const auto r = fixed_time_difference_check(FixedTimeOptions{});
  bool pass = std::isfinite(r.C) && r.C > 0.0 && r.fields == 3000;
  for (double c : r.C_per_s) pass = pass && c <= r.C;
  return {pass, fmt("C = %.4e over %zu fields (per s: %.3e, %.3e, %.3e)", r.C, r.fields, r.C_per_s.at(0),
                    r.C_per_s.at(1), r.C_per_s.at(2))};
}

Outcome bilinear_regime_map() {
  std::vector<double> flat, rising;
  for (double N : {8.0, 16.0, 32.0, 64.0, 128.0}) {
    flat.push_back(high_high_low_ratio(N, -38.0 / 21.0));
    rising.push_back(high_high_low_ratio(N, -2.0));
  }
  const auto [lo, hi] = std::minmax_element(flat.begin(), flat.end());
  const double spread = *hi / *lo;
  bool increasing = true;
  for (std::size_t i = 1; i < rising.size(); ++i) increasing = increasing && rising[i] > rising[i - 1];
  return {spread <= 2.0 && increasing,
          fmt("s=-38/21 spread %.3f (tol 2); s=-2 ratios %.3f..%.3f strictly increasing: %s", spread,
              rising.front(), rising.back(), increasing ? "yes" : "no")};
}

Outcome improved_bilinear() {
  bool pass = true;
  std::string detail;
  for (double b : {19.0 / 42.0, 0.5}) {
    std::vector<double> maxima;
    for (double q : {8.0, 16.0, 32.0, 64.0, 128.0}) maxima.push_back(improved_bilinear_check(2.0 * q, 2.0, b, 8, 11).max);
    const auto [lo, hi] = std::minmax_element(maxima.begin(), maxima.end());
    const double spread = *hi / *lo;
    pass = pass && std::isfinite(*hi) && spread <= 2.0;
    detail += fmt("b=%.4f max %.4f spread %.3f; ", b, *hi, spread);
  }
  return {pass, detail + "N1/N2 = 8..128, tol 2"};
}

Outcome traveling_wave_check() {
  const double c = 1.0;
  const auto g = grid(128, 64.0, 1);
  const auto w = traveling_wave(c, g);
  SolverConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0 / c;
  const auto traj = simulate(w.profile, cfg, 5000);
  const auto fit = shift_align(traj.snapshots.back(), w.profile, c * cfg.t_end);
  return {w.residual <= 1e-10 && fit.error <= 1e-4,
          fmt("residual %.2e (tol 1e-10), shape error %.2e (tol 1e-4), shift %.6f", w.residual, fit.error, fit.shift)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const std::vector<std::pair<std::string, std::string>> runs{
      {"simulate", "M=64 t_end=0.1 stride=100"},
      {"energy-track", "t_end=0.01"},
      {"acl-scaling", "M=32 N=2,4 T=0.1 dt=1e-4"},
      {"norm", "tmodes=32"},
      {"bilinear-test", "max_exp=4 count=16 hhl_N=8,16"},
      {"bilinear-test", "estimate=improved ratios=8,16 improved_count=4"},
      {"smoothing-test", "N=2,4 count=2"},
      {"gwp-schedule", ""},
  };
  const fs::path root = fs::temp_directory_path() / ("kwlab-accept-" + std::to_string(std::random_device{}()));
  const unsigned saved = thread_count();
  std::size_t same = 0;
  std::string bad;
  for (const auto& [command, text] : runs) {
    std::string bytes[2];
    for (int i = 0; i < 2; ++i) {
      set_thread_count(i == 0 ? 1 : 8);
      auto cfg = cli::parse_config_text(text + " seed=2024", command);
      cfg.out_dir = (root / std::to_string(i)).string();
      const auto res = cli::run(cfg);
      if (res.exit_code != cli::kOk) {
        bad += command + " failed: " + res.message + "; ";
        break;
      }
      for (const auto& e : fs::directory_iterator(res.run_dir))
        if (e.path().filename() != "manifest.json") bytes[i] += e.path().filename().string() + slurp(e.path());
    }
    if (!bytes[0].empty() && bytes[0] == bytes[1]) ++same;
    else if (bad.empty()) bad = command + " differs; ";
  }
  set_thread_count(saved);
  std::error_code ec;
  fs::remove_all(root, ec);
  return {same == runs.size(), fmt("%zu/%zu runs byte-identical at 1 vs 8 threads (all artifacts but the manifest) ",
                                   same, runs.size()) + bad};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"linear exactness", linear_exactness},
      {"L2 conservation", l2_conservation},
      {"oracle equivalence", oracle_equivalence},
      {"symmetrization and multilinearity", symmetrization_and_multilinearity},
      {"derivative identities", derivative_identities},
      {"almost conservation scaling", almost_conservation},
      {"M3/M4 bound checks", bound_checks},
      {"fixed-time difference", fixed_time_difference},
      {"bilinear regime map", bilinear_regime_map},
      {"improved bilinear estimate", improved_bilinear},
      {"traveling wave", traveling_wave_check},
      {"determinism", determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
