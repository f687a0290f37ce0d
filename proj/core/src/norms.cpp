#include "kwlab/norms.hpp"

#include <cmath>
#include <map>

#include "kwlab/error.hpp"

namespace kwlab {
namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace

double modulation(double tau, double xi, double lambda, int beta) {
  return tau - dispersion_symbol(xi, lambda, beta);
}

std::string to_string(Region r) {
  switch (r) {
    case Region::D1: return "D1";
    case Region::D2: return "D2";
    case Region::D3: return "D3";
  }
  return "?";
}

double region_threshold(double xi, double lambda, int beta) {
  const double a = std::abs(xi);
  return 31.0 / 32.0 * a * a * a * a * a + 7.0 / 8.0 * beta / (lambda * lambda) * a * a * a;
}

Region region_classify(double tau, double xi, double lambda, int beta) {
  if (std::abs(xi) <= 1.0) return Region::D3;
  return std::abs(modulation(tau, xi, lambda, beta)) > region_threshold(xi, lambda, beta) ? Region::D2
                                                                                          : Region::D1;
}

std::string to_string(NormKind k) {
  switch (k) {
    case NormKind::X: return "X";
    case NormKind::X21: return "X21";
    case NormKind::Y: return "Y";
    case NormKind::Z: return "Z";
    case NormKind::W: return "W";
  }
  return "?";
}

NormKind parse_norm_kind(const std::string& s) {
  for (NormKind k : {NormKind::X, NormKind::X21, NormKind::Y, NormKind::Z, NormKind::W})
    if (to_string(k) == s) return k;
  throw ConfigError("unknown norm kind '" + s + "'");
}

void NormSpec::validate() const {
  if (!std::isfinite(s) || !std::isfinite(s2)) throw ConfigError("norm: non-finite regularity");
  for (double e : {b, b1, b2})
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("norm: modulation exponents must lie in (0, 1]");
}

std::size_t SampleSet::size() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.tau.size();
  return n;
}

SampleSet SampleSet::restrict_to(const std::function<bool(double, double)>& keep) const {
  SampleSet out{lambda, beta, {}};
  for (const auto& c : columns) {
    SampleColumn col{c.xi, c.w_xi, {}, {}, {}};
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      if (!keep(c.tau[i], c.xi)) continue;
      col.tau.push_back(c.tau[i]);
      col.w_tau.push_back(c.w_tau[i]);
      col.value.push_back(c.value[i]);
    }
    if (!col.tau.empty()) out.columns.push_back(std::move(col));
  }
  return out;
}

SampleSet SampleSet::restrict_to(Region r) const {
  const double lam = lambda;
  const int bet = beta;
  return restrict_to([=](double tau, double xi) { return region_classify(tau, xi, lam, bet) == r; });
}

SampleSet SampleSet::weighted(const std::function<cplx(double, double)>& f) const {
  SampleSet out = *this;
  for (auto& c : out.columns)
    for (std::size_t i = 0; i < c.tau.size(); ++i) c.value[i] *= f(c.tau[i], c.xi);
  return out;
}

int shell_index(double x) {
  const int j = static_cast<int>(std::floor(std::log2(bracket(x))));
  return j < 0 ? 0 : j;
}

double x_norm(const SampleSet& f, double s, double b) {
  double sum = 0.0;
  for (const auto& c : f.columns) {
    const double ws = std::pow(bracket(c.xi), 2.0 * s);
    double col = 0.0;
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      const double mu = modulation(c.tau[i], c.xi, f.lambda, f.beta);
      col += c.w_tau[i] * std::pow(bracket(mu), 2.0 * b) * std::norm(c.value[i]);
    }
    sum += c.w_xi * ws * col;
  }
  return std::sqrt(sum);
}

double x21_norm(const SampleSet& f, double s, double b) {
  // block masses keyed by (j, k); std::map keeps the summation order fixed
  std::map<std::pair<int, int>, double> blocks;
  for (const auto& c : f.columns) {
    const int j = shell_index(c.xi);
    const double ws = std::pow(bracket(c.xi), 2.0 * s);
    for (std::size_t i = 0; i < c.tau.size(); ++i) {
      const double mu = modulation(c.tau[i], c.xi, f.lambda, f.beta);
      blocks[{j, shell_index(mu)}] +=
          c.w_xi * c.w_tau[i] * ws * std::pow(bracket(mu), 2.0 * b) * std::norm(c.value[i]);
    }
  }
  double total = 0.0;
  auto it = blocks.begin();
  while (it != blocks.end()) {
    const int j = it->first.first;
    double l1 = 0.0;
    for (; it != blocks.end() && it->first.first == j; ++it) l1 += std::sqrt(it->second);
    total += l1 * l1;
  }
  return std::sqrt(total);
}

double y_norm(const SampleSet& f, double s) {
  double sum = 0.0;
  for (const auto& c : f.columns) {
    double l1 = 0.0;
    for (std::size_t i = 0; i < c.tau.size(); ++i) l1 += c.w_tau[i] * std::abs(c.value[i]);
    sum += c.w_xi * std::pow(bracket(c.xi), 2.0 * s) * l1 * l1;
  }
  return std::sqrt(sum);
}

double norm(const SampleSet& f, const NormSpec& spec) {
  spec.validate();
  switch (spec.kind) {
    case NormKind::X: return x_norm(f, spec.s, spec.b);
    case NormKind::X21: return x21_norm(f, spec.s, spec.b);
    case NormKind::Y: return y_norm(f, spec.s);
    case NormKind::Z: {
      const double lam = f.lambda;
      const int bet = f.beta;
      const auto rest = f.restrict_to(
          [=](double tau, double xi) { return region_classify(tau, xi, lam, bet) != Region::D1; });
      return x21_norm(f.restrict_to(Region::D1), spec.s, 0.5) + x21_norm(rest, spec.s + 1.0, 0.3) +
             y_norm(f, spec.s);
    }
    case NormKind::W:
      return x21_norm(f.restrict_to(Region::D1), spec.s, 0.5) +
             x21_norm(f.restrict_to(Region::D2), spec.s + spec.s2, spec.b2) +
             x21_norm(f.restrict_to(Region::D3), spec.s, spec.b1) + y_norm(f, spec.s);
  }
  throw ConfigError("norm: unsupported kind");
}

}  // namespace kwlab
