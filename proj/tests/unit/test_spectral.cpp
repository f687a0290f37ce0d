#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "helpers.hpp"
#include "kwlab/error.hpp"
#include "kwlab/spectral.hpp"

using namespace kwlab;
using kwtest::kPi;

namespace {

RealField sample(const GridSpec& g, auto f) {
  RealField r;
  for (double x : grid_points(g)) r.samples.push_back(f(x));
  return r;
}

}  // namespace

TEST(Grid, Validation) {
  EXPECT_NO_THROW(kwtest::grid(16).validate());
  EXPECT_THROW(kwtest::grid(6 + 1).validate(), ConfigError);
  EXPECT_THROW(kwtest::grid(2).validate(), ConfigError);
  EXPECT_THROW(kwtest::grid(16, 1.0, 2).validate(), ConfigError);
  EXPECT_THROW(kwtest::grid(16, 1.0, 0, 0.5).validate(), ConfigError);
  const auto g = kwtest::grid(8);
  for (std::size_t s = 0; s < 8; ++s) EXPECT_EQ(g.slot(g.mode(s)), s);
  EXPECT_EQ(g.mode(4), -4);
}

TEST(Transform, ZeroAndCosine) {
  const auto g = kwtest::grid(16);
  const auto zero = forward_transform(sample(g, [](double) { return 0.0; }), g);
  for (const auto& c : zero.coeffs) EXPECT_EQ(c, cplx{});

  const auto u = forward_transform(sample(g, [](double x) { return std::cos(x); }), g);
  for (int k = g.k_min(); k <= g.k_max(); ++k) {
    const double expect = std::abs(k) == 1 ? 0.5 : 0.0;
    EXPECT_NEAR(std::abs(u.at(k) - expect), 0.0, 1e-15) << k;
  }
  const auto back = inverse_transform(kwtest::cosine(g));
  const auto x = grid_points(g);
  for (std::size_t j = 0; j < x.size(); ++j) EXPECT_NEAR(back.samples[j], std::cos(x[j]), 1e-15);
}

TEST(Transform, LengthMismatch) {
  const auto g = kwtest::grid(16);
  RealField f;
  f.samples.assign(8, 1.0);
  EXPECT_THROW(forward_transform(f, g), ConfigError);
}

TEST(Transform, ParsevalAgainstDirectSum) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  const auto g = kwtest::grid(64, 7.5);
  RealField f;
  for (int j = 0; j < 64; ++j) f.samples.push_back(n(rng));
  const auto u = forward_transform(f, g);

  // direct O(M^2) DFT oracle
  const auto x = grid_points(g);
  for (int k = g.k_min(); k <= g.k_max(); ++k) {
    cplx c{};
    for (int j = 0; j < 64; ++j) c += f.samples[j] * std::polar(1.0, -g.xi(k) * x[j]);
    c /= 64.0;
    EXPECT_LT(std::abs(c - u.at(k)), 1e-13);
  }
  double spatial = 0;
  for (double v : f.samples) spatial += v * v;
  spatial *= g.length / 64.0;
  EXPECT_NEAR(sobolev_norm(u, 0.0) * sobolev_norm(u, 0.0), spatial, 1e-12 * spatial);
}

TEST(Transform, RoundTripHermitian) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = kwtest::grid(128, 3.0 + trial);
    const auto u = kwtest::random_field(g, rng, 1.0, -1, 40.0);
    const auto back = forward_transform(inverse_transform(u), g);
    double scale = 0;
    for (const auto& c : u.coeffs) scale = std::max(scale, std::abs(c));
    EXPECT_LT(kwtest::max_diff(u, back), 1e-12 * scale);
  }
}

TEST(Transform, RejectsNonHermitian) {
  const auto g = kwtest::grid(16);
  SpectralField u(g);
  u.at(3) = 1.0;
  EXPECT_THROW(inverse_transform(u), NumericalError);
}

TEST(Dispersion, Values) {
  EXPECT_DOUBLE_EQ(dispersion_symbol(2.0, 1.0, 1), 40.0);
  EXPECT_DOUBLE_EQ(dispersion_symbol(0.0, 3.0, -1), 0.0);
  EXPECT_DOUBLE_EQ(dispersion_symbol(1.0, 2.0, -1), 0.75);
}

TEST(Semigroup, ExactPhases) {
  const auto g = kwtest::grid(16);
  auto u = kwtest::cosine(g);
  EXPECT_EQ(kwtest::max_diff(semigroup_apply(u, 0.0), u), 0.0);

  SpectralField single(g);
  single.at(1) = 1.0;
  EXPECT_NEAR(std::abs(semigroup_apply(single, kPi).at(1) + 1.0), 0.0, 1e-15);

  const auto moved = inverse_transform(semigroup_apply(u, 0.7));
  const auto x = grid_points(g);
  for (std::size_t j = 0; j < x.size(); ++j) EXPECT_NEAR(moved.samples[j], std::cos(x[j] + 0.7), 1e-12);
}

TEST(Semigroup, GroupLawAndNormPreservation) {
  std::mt19937_64 rng(3);
  const auto g = kwtest::grid(64, 20.0, 1, 1.5);
  const auto u = kwtest::random_field(g, rng, 1.0, -1, 20.0);
  const auto a = semigroup_apply(semigroup_apply(u, 0.013), 0.021);
  const auto b = semigroup_apply(u, 0.034);
  EXPECT_LT(kwtest::max_diff(a, b), 1e-12);
  for (double s : {-2.0, 0.0, 1.5})
    EXPECT_NEAR(sobolev_norm(b, s), sobolev_norm(u, s), 1e-13 * sobolev_norm(u, s));
  EXPECT_LT(hermitian_defect(b), 1e-15);
}

TEST(Sobolev, Values) {
  const auto g = kwtest::grid(16);
  EXPECT_EQ(sobolev_norm(SpectralField(g), 1.0), 0.0);
  EXPECT_NEAR(sobolev_norm(kwtest::cosine(g), 0.0), std::sqrt(kPi), 1e-15);
  // coefficient A at +-k0: norm^2 = 2 L <xi>^{2s} A^2
  const auto h = kwtest::grid(32, 5.0);
  SpectralField u(h);
  u.at(3) = 0.4;
  u.at(-3) = 0.4;
  const double s = -1.3;
  const double expect = std::pow(1 + h.xi(3) * h.xi(3), s / 2) * 0.4 * std::sqrt(2 * h.length);
  EXPECT_NEAR(sobolev_norm(u, s), expect, 1e-15);
}

TEST(Scaling, IdentityAndCosine) {
  const auto g = kwtest::grid(16);
  std::mt19937_64 rng(1);
  const auto u = kwtest::random_field(g, rng, 1.0);
  const auto same = scale_field(u, 1.0);
  EXPECT_EQ(same.grid, u.grid);
  EXPECT_EQ(kwtest::max_diff(same, u), 0.0);

  const auto c = scale_field(kwtest::cosine(g), 2.0);
  EXPECT_EQ(c.grid.modes, 32u);
  EXPECT_NEAR(c.grid.length, 4 * kPi, 1e-14);
  const auto f = inverse_transform(c);
  const auto x = grid_points(c.grid);
  for (std::size_t j = 0; j < x.size(); ++j)
    EXPECT_NEAR(f.samples[j], std::cos(x[j] / 2) / 16, 1e-15);
  EXPECT_NEAR(sobolev_norm(c, 0) / sobolev_norm(kwtest::cosine(g), 0), std::pow(2.0, -3.5), 1e-14);
}

TEST(Scaling, NegativeSobolevBound) {
  std::mt19937_64 rng(21);
  const auto g = kwtest::grid(64, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = kwtest::random_field(g, rng, 1.0, -1, 10.0 + trial);
    for (double lambda : {2.0, 4.0}) {
      const auto v = scale_field(u, lambda);
      for (double s : {-0.5, -38.0 / 21, -2.0}) {
        const double ratio = sobolev_norm(v, s) / sobolev_norm(u, s);
        EXPECT_LE(ratio, std::pow(lambda, -s - 3.5) * (1 + 1e-12));
      }
    }
  }
}

TEST(Scaling, ResourceCap) {
  const auto g = kwtest::grid(64);
  ::setenv("KWLAB_MAX_MODES", "100", 1);
  EXPECT_THROW(scale_field(kwtest::cosine(g), 2.0), ResourceLimit);
  ::unsetenv("KWLAB_MAX_MODES");
  EXPECT_THROW(scale_field(kwtest::cosine(g), 1.01), ConfigError);
}

TEST(SnapshotIO, RoundTripAndVersion) {
  std::mt19937_64 rng(2);
  auto g = kwtest::grid(32, 3.5, -1, 2.0);
  auto u = kwtest::random_field(g, rng, 1.0);
  u.time = 0.25;
  std::stringstream ss;
  write_snapshot(ss, u);
  EXPECT_EQ(ss.str().size(), 4 + 4 + 8 + 8 + 8 + 1 + 8 + 32 * 16u);
  const auto back = read_snapshot(ss);
  EXPECT_EQ(back.grid, u.grid);
  EXPECT_EQ(back.time, 0.25);
  EXPECT_EQ(kwtest::max_diff(back, u), 0.0);

  std::string bytes = [&] {
    std::stringstream t;
    write_snapshot(t, u);
    return t.str();
  }();
  bytes[4] = 2;
  std::stringstream bad(bytes);
  EXPECT_THROW(read_snapshot(bad), FormatError);
  std::stringstream junk("KWXX");
  EXPECT_THROW(read_snapshot(junk), FormatError);
}
