#include "kwlab/symbols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "kwlab/error.hpp"

namespace kwlab {
namespace {

constexpr cplx kI{0.0, 1.0};

std::string tuple_string(std::span<const double> xi) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (std::size_t i = 0; i < xi.size(); ++i) os << (i ? ", " : "") << xi[i];
  os << ')';
  return os.str();
}

double sum_squares(std::span<const double> xi) {
  double s = 0.0;
  for (double x : xi) s += x * x;
  return s;
}

}  // namespace

MultiplierSymbol symmetrize(const MultiplierSymbol& m) {
  if (m.arity < 1 || m.arity > 5) throw ConfigError("symmetrize: arity must be in 1..5");
  auto perms = std::make_shared<std::vector<std::array<int, 5>>>();
  std::array<int, 5> p{};
  std::iota(p.begin(), p.begin() + m.arity, 0);
  do {
    perms->push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + m.arity));

  MultiplierSymbol out;
  out.arity = m.arity;
  out.name = "[" + m.name + "]_sym";
  out.eval = [inner = m, perms](std::span<const double> xi) {
    if (static_cast<int>(xi.size()) != inner.arity) throw ConfigError("symbol: arity mismatch");
    std::array<double, 5> buf{};
    SymbolValue acc;
    for (const auto& q : *perms) {
      for (int i = 0; i < inner.arity; ++i) buf[i] = xi[q[i]];
      const auto v = inner.eval(std::span<const double>(buf.data(), xi.size()));
      acc.value += v.value;
      acc.excluded += v.excluded;
    }
    acc.value /= static_cast<double>(perms->size());
    return acc;
  };
  return out;
}

cplx resonance_denominator(std::span<const double> xi, double lambda, int beta) {
  double s5 = 0.0;
  double s3 = 0.0;
  for (double x : xi) {
    const double x3 = x * x * x;
    s3 += x3;
    s5 += x3 * x * x;
  }
  return kI * (s5 + static_cast<double>(beta) / (lambda * lambda) * s3);
}

cplx resonance_denominator_factored(std::span<const double> xi, double lambda, int beta) {
  const double q = 2.5 * sum_squares(xi) + 3.0 * static_cast<double>(beta) / (lambda * lambda);
  if (xi.size() == 3) return kI * (xi[0] * xi[1] * xi[2] * q);
  if (xi.size() == 4) return kI * ((xi[0] + xi[1]) * (xi[0] + xi[2]) * (xi[0] + xi[3]) * q);
  throw ConfigError("resonance_denominator_factored: k must be 3 or 4");
}

SymbolSet::SymbolSet(const SymbolContext& ctx, double dxi, int kmax)
    : ctx_(ctx), table_(std::make_shared<MultiplierTable>(ctx.im, dxi, kmax)) {
  ctx.im.validate();
}

SymbolSet::SymbolSet(const SymbolContext& ctx) : SymbolSet(ctx, 1.0, -1) {}

bool SymbolSet::pair_kept(double sum) const {
  return sum != 0.0 && std::abs(sum) <= ctx_.pair_cutoff * (1.0 + 1e-12);
}

SymbolValue SymbolSet::resonant(const std::string& which, std::span<const double> xi) const {
  if (ctx_.policy == ResonancePolicy::Throw)
    throw NearResonance(which + ": resonance denominator below guard", tuple_string(xi));
  return {cplx{}, 1};
}

SymbolValue SymbolSet::m3(double a, double b, double c) const {
  const double bc = b + c;
  const double ac = a + c;
  const double ab = a + b;
  const double sum = m(a) * m(bc) * bc + m(b) * m(ac) * ac + m(c) * m(ab) * ab;
  return {-2.0 * kI / 3.0 * sum, 0};
}

SymbolValue SymbolSet::sigma3(double a, double b, double c) const {
  const std::array<double, 3> xi{a, b, c};
  const cplx den = resonance_denominator_factored(xi, ctx_.lambda, ctx_.beta);
  if (std::abs(den) < ctx_.eps_den) return resonant("sigma3", xi);
  return {-m3(a, b, c).value / den, 0};
}

SymbolValue SymbolSet::m4(double a, double b, double c, double d) const {
  const std::array<double, 4> x{a, b, c, d};
  static constexpr int pairs[6][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2},
                                      {1, 2, 0, 3}, {1, 3, 0, 2}, {2, 3, 0, 1}};
  SymbolValue acc;
  for (const auto& p : pairs) {
    const double pair = x[p[2]] + x[p[3]];
    if (!pair_kept(pair)) continue;
    const auto s = sigma3(x[p[0]], x[p[1]], pair);
    acc.value += s.value * pair;
    acc.excluded += s.excluded;
  }
  acc.value *= -0.5 * kI;
  return acc;
}

SymbolValue SymbolSet::sigma4(double a, double b, double c, double d) const {
  const std::array<double, 4> xi{a, b, c, d};
  const cplx den = resonance_denominator_factored(xi, ctx_.lambda, ctx_.beta);
  if (std::abs(den) < ctx_.eps_den) return resonant("sigma4", xi);
  auto num = m4(a, b, c, d);
  return {-num.value / den, num.excluded};
}

SymbolValue SymbolSet::m5(double a, double b, double c, double d, double e) const {
  const std::array<double, 5> x{a, b, c, d, e};
  SymbolValue acc;
  for (int i = 0; i < 5; ++i) {
    for (int j = i + 1; j < 5; ++j) {
      const double pair = x[i] + x[j];
      if (!pair_kept(pair)) continue;
      std::array<double, 3> rest{};
      int r = 0;
      for (int l = 0; l < 5; ++l)
        if (l != i && l != j) rest[r++] = x[l];
      const auto s = sigma4(rest[0], rest[1], rest[2], pair);
      acc.value += s.value * pair;
      acc.excluded += s.excluded;
    }
  }
  acc.value *= -0.4 * kI;
  return acc;
}

MultiplierSymbol SymbolSet::symbol(const std::string& name) const {
  auto self = std::make_shared<SymbolSet>(*this);
  auto check = [](std::span<const double> xi, std::size_t k) {
    if (xi.size() != k) throw ConfigError("symbol: arity mismatch");
  };
  MultiplierSymbol out;
  out.name = name;
  if (name == "m2") {
    out.arity = 2;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 2);
      return SymbolValue{self->m(x[0]) * self->m(x[1]), 0};
    };
  } else if (name == "m3") {
    out.arity = 3;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 3);
      return self->m3(x[0], x[1], x[2]);
    };
  } else if (name == "sigma3") {
    out.arity = 3;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 3);
      return self->sigma3(x[0], x[1], x[2]);
    };
  } else if (name == "m4") {
    out.arity = 4;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 4);
      return self->m4(x[0], x[1], x[2], x[3]);
    };
  } else if (name == "sigma4") {
    out.arity = 4;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 4);
      return self->sigma4(x[0], x[1], x[2], x[3]);
    };
  } else if (name == "m5") {
    out.arity = 5;
    out.eval = [self, check](std::span<const double> x) {
      check(x, 5);
      return self->m5(x[0], x[1], x[2], x[3], x[4]);
    };
  } else {
    throw ConfigError("unknown symbol '" + name + "'");
  }
  return out;
}

namespace {

void expect(std::span<const double> xi, std::size_t k) {
  if (xi.size() != k) throw ConfigError("symbol: arity mismatch");
}

}  // namespace

cplx m3_symbol(std::span<const double> xi, const SymbolContext& ctx) {
  expect(xi, 3);
  return SymbolSet(ctx).m3(xi[0], xi[1], xi[2]).value;
}

cplx sigma3(std::span<const double> xi, const SymbolContext& ctx) {
  expect(xi, 3);
  return SymbolSet(ctx).sigma3(xi[0], xi[1], xi[2]).value;
}

cplx m4_symbol(std::span<const double> xi, const SymbolContext& ctx) {
  expect(xi, 4);
  return SymbolSet(ctx).m4(xi[0], xi[1], xi[2], xi[3]).value;
}

cplx sigma4(std::span<const double> xi, const SymbolContext& ctx) {
  expect(xi, 4);
  return SymbolSet(ctx).sigma4(xi[0], xi[1], xi[2], xi[3]).value;
}

cplx m5_symbol(std::span<const double> xi, const SymbolContext& ctx) {
  expect(xi, 5);
  return SymbolSet(ctx).m5(xi[0], xi[1], xi[2], xi[3], xi[4]).value;
}

}  // namespace kwlab
