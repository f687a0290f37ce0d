#include <gtest/gtest.h>

#include <sstream>

#include "helpers.hpp"
#include "kwlab/error.hpp"
#include "kwlab/solver.hpp"

using namespace kwlab;
using kwtest::kPi;

namespace {

// O(M^2) direct convolution: i xi_k sum_{k1+k2=k} u_{k1} u_{k2} with explicit index rules.
SpectralField direct_nonlinearity(const SpectralField& u, Dealias mode) {
  const auto& g = u.grid;
  const int m = static_cast<int>(g.modes);
  const int cut = mode == Dealias::TwoThirds ? m / 3 : g.retained();
  SpectralField out(g);
  for (int k1 = -cut; k1 <= cut; ++k1) {
    for (int k2 = -cut; k2 <= cut; ++k2) {
      int k = k1 + k2;
      if (mode == Dealias::None) {
        k = ((k % m) + m) % m;
        if (k >= m / 2) k -= m;
      }
      if (std::abs(k) > cut) continue;
      out.at(k) += u.at(k1) * u.at(k2);
    }
  }
  for (int k = g.k_min(); k <= g.k_max(); ++k) out.at(k) *= cplx(0, g.xi(k));
  return out;
}

SolverConfig config(double dt, double t_end, bool nonlinear = true) {
  SolverConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.nonlinear = nonlinear;
  return c;
}

}  // namespace

TEST(Nonlinearity, CosineSquared) {
  const auto g = kwtest::grid(16);
  const auto n = nonlinearity(kwtest::cosine(g), Dealias::GalerkinConsistent);
  EXPECT_NEAR(std::abs(n.at(2) - cplx(0, 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(n.at(-2) - cplx(0, -0.5)), 0.0, 1e-15);
  double rest = 0;
  for (int k = g.k_min(); k <= g.k_max(); ++k)
    if (std::abs(k) != 2) rest = std::max(rest, std::abs(n.at(k)));
  EXPECT_LT(rest, 1e-15);
  const auto zero = nonlinearity(SpectralField(g), Dealias::GalerkinConsistent);
  for (const auto& c : zero.coeffs) EXPECT_EQ(c, cplx{});
}

TEST(Nonlinearity, MatchesDirectConvolution) {
  std::mt19937_64 rng(7);
  for (auto mode : {Dealias::GalerkinConsistent, Dealias::TwoThirds, Dealias::None}) {
    const auto g = kwtest::grid(64, 11.0);
    const auto u = kwtest::random_field(g, rng, 1.0, -1, 1e9);
    const auto fast = nonlinearity(u, mode);
    const auto slow = direct_nonlinearity(u, mode);
    EXPECT_LT(kwtest::max_diff(fast, slow), 1e-12) << to_string(mode);
  }
}

TEST(Step, LinearIsExactSemigroup) {
  std::mt19937_64 rng(8);
  const auto g = kwtest::grid(64, 2 * kPi, 1);
  const auto u = kwtest::random_field(g, rng, 1.0);
  const auto cfg = config(1e-3, 1.0, false);
  EXPECT_LT(kwtest::max_diff(step(u, cfg), semigroup_apply(u, 1e-3)), 1e-15);
  const auto z = step(SpectralField(g), config(1e-3, 1.0));
  for (const auto& c : z.coeffs) EXPECT_EQ(c, cplx{});
}

TEST(Step, LocalErrorOrder) {
  std::mt19937_64 rng(9);
  const auto g = kwtest::grid(32, 16 * kPi, 1);
  const auto u = kwtest::random_field(g, rng, 1.0, 8, 6.0);
  auto reference = [&](double h) {
    SolverConfig cfg = config(h / 64, h);
    SpectralField v = u;
    Stepper st(g, cfg);
    for (int i = 0; i < 64; ++i) st.advance(v, h / 64);
    return v;
  };
  std::vector<double> errs;
  for (double h : {0.04, 0.02, 0.01}) {
    const auto one = step(u, config(h, h));
    errs.push_back(kwtest::max_diff(one, reference(h)));
  }
  for (std::size_t i = 0; i + 1 < errs.size(); ++i)
    EXPECT_GE(std::log2(errs[i] / errs[i + 1]), 3.8) << errs[i] << " " << errs[i + 1];
}

TEST(Step, BlowUpIsReported) {
  const auto g = kwtest::grid(16);
  auto u = kwtest::cosine(g);
  u.at(1) = cplx(std::numeric_limits<double>::infinity(), 0);
  EXPECT_THROW(step(u, config(1e-3, 1.0)), NumericalError);
}

TEST(Simulate, LinearCosine) {
  const auto g = kwtest::grid(64);
  const auto traj = simulate(kwtest::cosine(g), config(1e-3, 1.0, false), 100);
  ASSERT_EQ(traj.times.size(), 11u);
  EXPECT_EQ(traj.times.front(), 0.0);
  EXPECT_EQ(traj.times.back(), 1.0);
  EXPECT_EQ(kwtest::max_diff(traj.snapshots.front(), kwtest::cosine(g)), 0.0);
  const auto f = inverse_transform(traj.snapshots.back());
  const auto x = grid_points(g);
  for (std::size_t j = 0; j < x.size(); ++j) EXPECT_NEAR(f.samples[j], std::cos(x[j] + 1.0), 1e-10);
}

TEST(Simulate, ZeroDataAndMeanZeroRule) {
  const auto g = kwtest::grid(32);
  const auto traj = simulate(SpectralField(g), config(1e-2, 0.1), 1);
  for (const auto& s : traj.snapshots)
    for (const auto& c : s.coeffs) EXPECT_EQ(c, cplx{});
  auto bad = kwtest::cosine(g);
  bad.at(0) = 0.1;
  EXPECT_THROW(simulate(bad, config(1e-2, 0.1), 1), ConfigError);
  EXPECT_THROW(simulate(kwtest::cosine(g), config(-1, 0.1), 1), ConfigError);
}

TEST(Simulate, L2ConservationAndMeanInvariance) {
  std::mt19937_64 rng(10);
  const auto g = kwtest::grid(256, 2 * kPi, 1);
  const auto u = kwtest::random_field(g, rng, 0.05, 12, 3.0);
  const auto traj = simulate(u, config(1e-4, 1.0), 1000);
  const double l0 = conserved_l2(u);
  for (const auto& s : traj.snapshots) {
    EXPECT_LT(std::abs(conserved_l2(s) - l0) / l0, 1e-6);
    EXPECT_EQ(s.at(0), cplx{});
    EXPECT_LT(hermitian_defect(s), 1e-12);
  }
}

TEST(Simulate, TimeReversal) {
  std::mt19937_64 rng(12);
  const auto g = kwtest::grid(64, 8 * kPi, 1);
  const auto u = kwtest::random_field(g, rng, 0.5, 12, 6.0);
  const double h = 0.02;
  const auto cfg = config(h, h);
  Stepper st(g, cfg);
  SpectralField v = u;
  st.advance(v, h);
  const double local = kwtest::max_diff(v, [&] {
    SpectralField w = u;
    Stepper fine(g, cfg);
    for (int i = 0; i < 64; ++i) fine.advance(w, h / 64);
    return w;
  }());
  st.advance(v, -h);
  EXPECT_LE(kwtest::max_diff(v, u), 10 * local);
}

TEST(TrajectoryIO, RoundTripAndCsv) {
  std::mt19937_64 rng(13);
  const auto g = kwtest::grid(32, 5.0, 1);
  const auto traj = simulate(kwtest::random_field(g, rng, 0.1), config(1e-3, 1e-2), 5);
  std::stringstream ss;
  write_trajectory(ss, traj);
  const auto back = read_trajectory(ss);
  ASSERT_EQ(back.snapshots.size(), traj.snapshots.size());
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    EXPECT_EQ(back.times[i], traj.times[i]);
    EXPECT_EQ(kwtest::max_diff(back.snapshots[i], traj.snapshots[i]), 0.0);
  }
  std::stringstream csv;
  write_conserved_csv(csv, traj);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "t,l2,h2");
  EXPECT_NEAR(conserved_l2(kwtest::cosine(g)), 5.0 / 2, 1e-15);
}
