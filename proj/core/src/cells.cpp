#include "kwlab/cells.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>

#include "kwlab/error.hpp"

namespace kwlab {
namespace {

constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0,
                                       0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};

struct Event {
  double tau;
  cplx jump;
  cplx slope;
  int active;
};

void append_events(const Trapezoid& p, std::vector<Event>& ev) {
  if (p.w_short == 0.0) {
    ev.push_back({p.t0, p.height, {}, 1});
    ev.push_back({p.t0 + p.w_long, -p.height, {}, -1});
    return;
  }
  const cplx s = p.height / p.w_short;
  ev.push_back({p.t0, {}, s, 1});
  ev.push_back({p.t0 + p.w_short, {}, -s, 0});
  ev.push_back({p.t0 + p.w_long, {}, -s, 0});
  ev.push_back({p.t0 + p.w_long + p.w_short, {}, s, -1});
}

void shell_breaks(double xi, double lo, double hi, double lambda, int beta, std::vector<Event>& ev) {
  const double p = dispersion_symbol(xi, lambda, beta);
  auto add = [&](double mu) {
    const double t = p + mu;
    if (t > lo && t < hi) ev.push_back({t, {}, {}, 0});
  };
  const double reach = std::max(std::abs(lo - p), std::abs(hi - p));
  add(0.0);
  for (int k = 1; k < 1100; ++k) {
    const double mu = std::sqrt(std::ldexp(1.0, 2 * k) - 1.0);
    if (mu > reach) break;
    add(mu);
    add(-mu);
  }
  if (std::abs(xi) > 1.0) {
    const double thr = region_threshold(xi, lambda, beta);
    add(thr);
    add(-thr);
  }
}

}  // namespace

CellField::CellField(double d, double lam, int b) : dxi(d), lambda(lam), beta(b) {
  if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("cells: lattice spacing must be positive");
  if (!(lam > 0.0)) throw ConfigError("cells: lambda must be positive");
}

void CellField::add_box(std::int64_t k, double lo, double hi, cplx amplitude) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) throw ConfigError("cells: empty box");
  auto it = std::lower_bound(columns.begin(), columns.end(), k,
                             [](const CellColumn& c, std::int64_t key) { return c.k < key; });
  if (it == columns.end() || it->k != k) it = columns.insert(it, CellColumn{k, {}});
  it->parts.push_back({lo, hi - lo, 0.0, amplitude});
}

std::size_t CellField::part_count() const {
  std::size_t n = 0;
  for (const auto& c : columns) n += c.parts.size();
  return n;
}

CellField convolve(const CellField& u, const CellField& v) {
  if (std::abs(u.dxi - v.dxi) > 1e-12 * u.dxi || u.lambda != v.lambda || u.beta != v.beta)
    throw ConfigError("cells: lattice mismatch");
  std::map<std::int64_t, std::vector<Trapezoid>> out;
  for (const auto& cu : u.columns)
    for (const auto& cv : v.columns) {
      auto& dst = out[cu.k + cv.k];
      for (const auto& a : cu.parts)
        for (const auto& b : cv.parts) {
          if (a.w_short != 0.0 || b.w_short != 0.0) throw ConfigError("cells: convolution inputs must be boxes");
          const double wl = std::max(a.w_long, b.w_long);
          const double ws = std::min(a.w_long, b.w_long);
          dst.push_back({a.t0 + b.t0, wl, ws, u.dxi * a.height * b.height * ws});
        }
    }
  CellField f(u.dxi, u.lambda, u.beta);
  for (auto& [k, parts] : out) f.columns.push_back({k, std::move(parts)});
  return f;
}

SampleSet to_samples(const CellField& f) {
  SampleSet out{f.lambda, f.beta, {}};
  std::vector<Event> ev;
  for (const auto& col : f.columns) {
    if (col.parts.empty()) continue;
    const double xi = f.xi(col.k);
    ev.clear();
    for (const auto& p : col.parts) append_events(p, ev);
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.tau < b.tau; });
    shell_breaks(xi, ev.front().tau, ev.back().tau, f.lambda, f.beta, ev);
    std::stable_sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return a.tau < b.tau; });

    SampleColumn sc{xi, f.dxi, {}, {}, {}};
    cplx value{}, slope{};
    int active = 0;
    std::size_t i = 0;
    while (i < ev.size()) {
      const double t = ev[i].tau;
      for (; i < ev.size() && ev[i].tau == t; ++i) {
        value += ev[i].jump;
        slope += ev[i].slope;
        active += ev[i].active;
      }
      if (active == 0) {
        value = slope = cplx{};
        continue;
      }
      if (i == ev.size()) break;
      const double h = ev[i].tau - t;
      for (std::size_t q = 0; q < kNodes.size(); ++q) {
        const double off = 0.5 * h * (1.0 + kNodes[q]);
        sc.tau.push_back(t + off);
        sc.w_tau.push_back(0.5 * h * kWeights[q]);
        sc.value.push_back(value + slope * off);
      }
      value += slope * h;
    }
    if (!sc.tau.empty()) out.columns.push_back(std::move(sc));
  }
  return out;
}

double norm(const CellField& f, const NormSpec& spec) { return norm(to_samples(f), spec); }

PhysicalField evaluate(const CellField& f, double tau_ref, double t_begin, double dt, std::size_t nt,
                       std::size_t nx) {
  if (nt == 0 || nx == 0 || !(dt > 0.0)) throw ConfigError("cells: empty evaluation grid");
  PhysicalField p;
  p.nt = nt;
  p.nx = nx;
  p.dt = dt;
  p.dx = 2.0 * std::numbers::pi / f.dxi / static_cast<double>(nx);
  p.periodic_time = false;
  p.values.assign(nt * nx, cplx{});
  std::vector<cplx> col_t(nt);
  for (const auto& col : f.columns) {
    std::fill(col_t.begin(), col_t.end(), cplx{});
    for (const auto& part : col.parts) {
      if (part.w_short != 0.0) throw ConfigError("cells: evaluate expects boxes");
      const double c = part.t0 + 0.5 * part.w_long - tau_ref;
      for (std::size_t n = 0; n < nt; ++n) {
        const double t = t_begin + dt * static_cast<double>(n);
        const double z = 0.5 * part.w_long * t;
        const double sinc = z == 0.0 ? 1.0 : std::sin(z) / z;
        col_t[n] += part.height * part.w_long * sinc * std::polar(1.0, c * t);
      }
    }
    const auto kmod = static_cast<std::int64_t>(nx);
    const std::int64_t kr = ((col.k % kmod) + kmod) % kmod;
    for (std::size_t m = 0; m < nx; ++m) {
      const double ph = 2.0 * std::numbers::pi * static_cast<double>((kr * static_cast<std::int64_t>(m)) % kmod) /
                        static_cast<double>(nx);
      const cplx e = f.dxi * std::polar(1.0, ph);
      for (std::size_t n = 0; n < nt; ++n) p.values[n * nx + m] += e * col_t[n];
    }
  }
  return p;
}

}  // namespace kwlab
