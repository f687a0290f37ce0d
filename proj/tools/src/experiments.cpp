#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "json.hpp"

#include "kwlab/bilinear.hpp"
#include "kwlab/energies.hpp"
#include "kwlab/error.hpp"
#include "kwlab/estimate_checks.hpp"
#include "kwlab/experiments.hpp"
#include "kwlab/imethod_checks.hpp"
#include "kwlab/norms.hpp"
#include "kwlab/solver.hpp"
#include "kwlab/spacetime.hpp"
#include "params.hpp"

namespace kwlab::cli {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream out(p, binary ? std::ios::binary : std::ios::out);
  if (!out) throw Error("cannot open " + p.string());
  out << std::setprecision(17);
  return out;
}

void close_out(std::ofstream& out, const fs::path& p) {
  out.close();
  if (!out) throw Error("write failed: " + p.string());
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json ratio_json(const RatioReport& r) {
  json j;
  j["name"] = r.name;
  j["samples"] = r.count();
  j["max"] = finite_or_null(r.max);
  j["mean"] = finite_or_null(r.mean);
  json per = json::array();
  for (const auto& [scale, m] : r.scale_max) per.push_back({{"scale", scale}, {"max", m}});
  j["scale_max"] = per;
  return j;
}

DriftData drift_data(const Params& p, std::uint64_t seed) {
  DriftData d;
  d.modes = p.count("M");
  d.length = p.number("L");
  d.beta = static_cast<int>(p.integer("beta"));
  d.amplitude = p.number("amplitude");
  d.decay = p.number("decay");
  d.kmax = static_cast<int>(p.integer("kmax"));
  d.seed = seed;
  if (d.kmax < 0) throw ConfigError("config: 'kmax' must be >= 0");
  return d;
}

SpectralField initial_field(const Params& p, std::uint64_t seed, double lambda) {
  SpectralField u = drift_initial_data(drift_data(p, seed));
  u.grid.lambda = lambda;
  u.grid.validate();
  return u;
}

double max_relative_drift(const Trajectory& traj, double (*q)(const SpectralField&)) {
  const double q0 = q(traj.snapshots.front());
  double d = 0.0;
  for (const auto& s : traj.snapshots) d = std::max(d, std::abs(q(s) - q0) / std::max(q0, 1e-300));
  return d;
}

json run_simulate(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const double lambda = p.number("lambda");
  SpectralField u0(GridSpec{});
  if (p.text("init") == "random") {
    u0 = initial_field(p, seed, lambda);
  } else if (p.text("init") == "cos") {
    GridSpec g{p.count("M"), p.number("L"), lambda, static_cast<int>(p.integer("beta"))};
    g.validate();
    u0 = SpectralField(g);
    u0.at(1) = u0.at(-1) = 0.5 * p.number("amplitude");
  } else {
    throw ConfigError("config: 'init' must be random or cos");
  }
  SolverConfig sc;
  sc.dt = p.number("dt");
  sc.t_end = p.number("t_end");
  sc.nonlinear = p.flag("nonlinear");
  sc.dealias = parse_dealias(p.text("dealias"));
  const auto traj = simulate(u0, sc, p.count("stride"));

  auto tf = open_out(dir / "trajectory.kwtr", true);
  write_trajectory(tf, traj);
  close_out(tf, dir / "trajectory.kwtr");
  auto cf = open_out(dir / "conserved.csv");
  write_conserved_csv(cf, traj);
  close_out(cf, dir / "conserved.csv");

  json r;
  r["snapshots"] = traj.snapshots.size();
  r["t_final"] = traj.times.back();
  r["l2_initial"] = conserved_l2(traj.snapshots.front());
  r["l2_final"] = conserved_l2(traj.snapshots.back());
  r["l2_relative_drift"] = max_relative_drift(traj, conserved_l2);
  r["h2_relative_drift"] = max_relative_drift(traj, conserved_h2);
  return r;
}

json run_energy_track(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const auto u0 = initial_field(p, seed, 1.0);
  SolverConfig sc;
  sc.dt = p.number("dt");
  sc.t_end = p.number("t_end");
  sc.nonlinear = p.flag("nonlinear");
  const auto traj = simulate(u0, sc, p.count("stride"));
  IMultiplier im{p.number("N"), p.number("s")};
  im.validate();
  const auto rep = energy_track(traj, im, p.number("eps_den"));
  write_energy_csv(rep, (dir / "energy.csv").string());

  json r;
  r["N"] = rep.N;
  r["s"] = rep.s;
  r["snapshots"] = rep.times.size();
  r["drift2"] = rep.drift2;
  r["drift4"] = rep.drift4;
  r["drift2_direct"] = rep.drift2_direct;
  r["drift4_direct"] = rep.drift4_direct;
  r["max_res2"] = rep.res2.empty() ? 0.0 : *std::max_element(rep.res2.begin(), rep.res2.end());
  r["max_res3"] = rep.res3.empty() ? 0.0 : *std::max_element(rep.res3.begin(), rep.res3.end());
  r["max_res4"] = rep.res4.empty() ? 0.0 : *std::max_element(rep.res4.begin(), rep.res4.end());
  r["excluded"] = {rep.excluded3, rep.excluded4, rep.excluded5};
  return r;
}

json run_acl_scaling(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const auto u0 = initial_field(p, seed, 1.0);
  DriftOptions opt;
  opt.N_values = p.numbers("N");
  opt.s = p.number("s");
  opt.T = p.number("T");
  opt.dt = p.number("dt");
  opt.spacing = p.number("spacing");
  opt.eps_den = p.number("eps_den");
  if (opt.N_values.size() < 2) throw ConfigError("config: 'N' needs at least two values");
  const auto res = drift_experiment(u0, opt);

  auto out = open_out(dir / "drift.csv");
  out << "N,drift2,drift4,drift2_direct,drift4_direct\n";
  json per = json::array();
  for (const auto& rep : res.reports) {
    out << rep.N << ',' << rep.drift2 << ',' << rep.drift4 << ',' << rep.drift2_direct << ','
        << rep.drift4_direct << '\n';
    per.push_back({{"N", rep.N}, {"drift2", rep.drift2}, {"drift4", rep.drift4},
                   {"excluded", {rep.excluded3, rep.excluded4, rep.excluded5}}});
  }
  close_out(out, dir / "drift.csv");

  json r;
  r["s"] = opt.s;
  r["T"] = opt.T;
  r["slope2"] = res.slope2;
  r["slope4"] = res.slope4;
  r["slope4_below_slope2_minus_1"] = res.slope4 < 0.0 && res.slope4 <= res.slope2 - 1.0;
  r["per_N"] = per;
  return r;
}

json run_norm(const Params& p, std::uint64_t seed, const fs::path& dir) {
  SpaceTimeField f = [&] {
    if (!p.text("input").empty()) {
      std::ifstream in(p.text("input"), std::ios::binary);
      if (!in) throw ConfigError("config: cannot open input '" + p.text("input") + "'");
      return read_spacetime(in);
    }
    const auto u0 = initial_field(p, seed, p.number("lambda"));
    const std::size_t tmodes = p.count("tmodes");
    SolverConfig sc;
    sc.dt = p.number("dt");
    sc.t_end = sc.dt * static_cast<double>(tmodes);
    sc.nonlinear = p.flag("nonlinear");
    return spacetime_transform(simulate(u0, sc, 1), tmodes, parse_taper(p.text("taper")));
  }();
  auto out = open_out(dir / "spacetime.kwst", true);
  write_spacetime(out, f);
  close_out(out, dir / "spacetime.kwst");

  NormSpec spec;
  spec.s = p.number("s");
  spec.b = p.number("b");
  json values;
  for (NormKind k : {NormKind::X, NormKind::X21, NormKind::Y, NormKind::Z, NormKind::W}) {
    spec.kind = k;
    spec.validate();
    values[to_string(k)] = norm(f, spec);
  }
  json r;
  r["tmodes"] = f.tmodes;
  r["modes"] = f.grid.modes;
  r["window"] = f.window;
  r["taper"] = to_string(f.taper);
  r["s"] = spec.s;
  r["b"] = spec.b;
  r["norms"] = values;
  return r;
}

bool strictly_increasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) return false;
  return true;
}

double spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *lo > 0.0 ? *hi / *lo : INFINITY;
}

json run_bilinear_w(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const double s = p.number("s");
  const int max_exp = static_cast<int>(p.integer("max_exp"));
  const std::size_t count = p.count("count");
  if (max_exp < 2 || max_exp > 12) throw ConfigError("config: 'max_exp' must lie in [2, 12]");

  auto out = open_out(dir / "ratios.csv");
  out << "case,scale,ratio\n";
  json cases;
  for (const auto& name : p.words("cases")) {
    const auto c = parse_interaction_case(name);
    const auto rep = bilinear_ratio_test(c, s, max_exp, count, seed);
    for (std::size_t i = 0; i < rep.count(); ++i) out << name << ',' << rep.scales[i] << ',' << rep.ratios[i] << '\n';
    json j = ratio_json(rep);
    if (c == InteractionCase::III || c == InteractionCase::V) j["delta"] = finite_or_null(decay_exponent(rep));
    cases[name] = j;
  }
  close_out(out, dir / "ratios.csv");

  json hhl;
  const auto Ns = p.numbers("hhl_N");
  hhl["N"] = Ns;
  json by_s = json::array();
  for (double hs : p.numbers("hhl_s")) {
    std::vector<double> ratios;
    for (double N : Ns) ratios.push_back(high_high_low_ratio(N, hs));
    by_s.push_back({{"s", hs},
                    {"ratio", ratios},
                    {"spread", finite_or_null(spread(ratios))},
                    {"strictly_increasing", strictly_increasing(ratios)}});
  }
  hhl["by_s"] = by_s;

  json r;
  r["estimate"] = "w";
  r["s"] = s;
  r["cases"] = cases;
  r["high_high_low"] = hhl;
  return r;
}

json run_bilinear_improved(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const double N2 = p.number("N2");
  const std::size_t count = p.count("improved_count");
  auto out = open_out(dir / "ratios.csv");
  out << "b,scale,ratio\n";
  json by_b = json::array();
  for (double b : p.numbers("b")) {
    std::vector<double> maxima;
    std::size_t samples = 0;
    for (double q : p.numbers("ratios")) {
      const auto rep = improved_bilinear_check(q * N2, N2, b, count, seed);
      for (std::size_t i = 0; i < rep.count(); ++i) out << b << ',' << rep.scales[i] << ',' << rep.ratios[i] << '\n';
      maxima.push_back(rep.max);
      samples += rep.count();
    }
    by_b.push_back({{"b", b},
                    {"samples", samples},
                    {"max_per_ratio", maxima},
                    {"spread", finite_or_null(spread(maxima))}});
  }
  close_out(out, dir / "ratios.csv");
  json r;
  r["estimate"] = "improved";
  r["N2"] = N2;
  r["ratios"] = p.numbers("ratios");
  r["by_b"] = by_b;
  return r;
}

json run_smoothing(const Params& p, std::uint64_t seed, const fs::path& dir) {
  const std::size_t count = p.count("count");
  const auto Ns = p.numbers("N");
  auto out = open_out(dir / "smoothing.csv");
  out << "which,N,ratio\n";
  json by = json::object();
  for (const auto& name : p.words("which")) {
    const auto w = parse_smoothing(name);
    std::vector<double> maxima;
    for (double N : Ns) {
      const auto rep = smoothing_check(N, w, count, seed);
      for (double x : rep.ratios) out << name << ',' << N << ',' << x << '\n';
      maxima.push_back(rep.max);
    }
    by[name] = {{"exponent", smoothing_exponent(w)}, {"max_per_N", maxima}};
  }
  close_out(out, dir / "smoothing.csv");
  json r;
  r["N"] = Ns;
  r["count"] = count;
  r["norms"] = by;
  return r;
}

json run_gwp(const Params& p) {
  const auto g = gwp_schedule(p.number("s"), p.number("T"), p.number("eps0"), p.number("C1"), p.number("C2"));
  json r;
  r["lambda"] = g.lambda;
  r["N"] = g.N;
  r["iteration_count"] = g.iteration_count;
  r["growth"] = g.growth;
  r["exponent_a"] = g.exponent_a;
  r["exponent_b"] = g.exponent_b;
  r["bound_a"] = finite_or_null(g.bound_a);
  r["bound_b"] = finite_or_null(g.bound_b);
  return r;
}

json dispatch(const ExperimentConfig& cfg, const fs::path& dir) {
  const Params p(cfg);
  const auto& c = cfg.command;
  if (c == "simulate") return run_simulate(p, cfg.seed, dir);
  if (c == "energy-track") return run_energy_track(p, cfg.seed, dir);
  if (c == "acl-scaling") return run_acl_scaling(p, cfg.seed, dir);
  if (c == "norm") return run_norm(p, cfg.seed, dir);
  if (c == "bilinear-test") {
    const auto& e = p.text("estimate");
    if (e == "w") return run_bilinear_w(p, cfg.seed, dir);
    if (e == "improved") return run_bilinear_improved(p, cfg.seed, dir);
    throw ConfigError("config: 'estimate' must be w or improved");
  }
  if (c == "smoothing-test") return run_smoothing(p, cfg.seed, dir);
  if (c == "gwp-schedule") return run_gwp(p);
  throw ConfigError("unknown command '" + c + "'");
}

}  // namespace

std::string ratio_report_json(const RatioReport& r) { return ratio_json(r).dump(2) + "\n"; }

std::string execute(const ExperimentConfig& cfg, const fs::path& dir) {
  const NormSpec w;
  json report;
  report["command"] = cfg.command;
  report["run_id"] = run_id(cfg);
  report["seed"] = cfg.seed;
  report["params"] = cfg.params;
  report["constants"] = {{"s2", w.s2}, {"b2", w.b2}, {"b1", w.b1}};
  report["results"] = dispatch(cfg, dir);
  return report.dump(2) + "\n";
}

}  // namespace kwlab::cli
