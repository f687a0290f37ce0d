#include "kwlab/solver.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>

#include "kwlab/error.hpp"
#include "kwlab/fft.hpp"

namespace kwlab {

std::string to_string(Dealias d) {
  switch (d) {
    case Dealias::GalerkinConsistent: return "galerkin_consistent";
    case Dealias::TwoThirds: return "two_thirds";
    case Dealias::None: return "none";
  }
  return "unknown";
}

Dealias parse_dealias(const std::string& name) {
  if (name == "galerkin_consistent") return Dealias::GalerkinConsistent;
  if (name == "two_thirds") return Dealias::TwoThirds;
  if (name == "none") return Dealias::None;
  throw ConfigError("unknown dealias mode '" + name + "'");
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("solver: dt must be positive");
  if (!(t_end >= dt * (1.0 - 1e-12)) || !std::isfinite(t_end))
    throw ConfigError("solver: t_end must be >= dt");
}

namespace {

// Computes i xi_k (u^2)_k for a fixed grid and truncation, reusing buffers.
class Convolver {
 public:
  Convolver(const GridSpec& g, Dealias mode) : grid_(g) {
    const int m = static_cast<int>(g.modes);
    switch (mode) {
      case Dealias::GalerkinConsistent:
        size_ = 2 * g.modes;
        in_cut_ = out_cut_ = g.retained();
        break;
      case Dealias::TwoThirds:
        size_ = g.modes;
        in_cut_ = out_cut_ = m / 3;
        break;
      case Dealias::None:
        size_ = g.modes;
        in_cut_ = out_cut_ = g.retained();
        break;
    }
    buf_.resize(size_);
    phys_.resize(size_);
  }

  void apply(const std::vector<cplx>& u, std::vector<cplx>& out) {
    std::fill(buf_.begin(), buf_.end(), cplx{});
    for (int k = -in_cut_; k <= in_cut_; ++k) buf_[wrap(k)] = u[grid_.slot(k)];
    fft::dft(buf_, phys_, fft::Direction::Backward);
    for (auto& v : phys_) v = v * v;
    fft::dft(phys_, buf_, fft::Direction::Forward);
    const double scale = 1.0 / static_cast<double>(size_);
    out.assign(grid_.modes, cplx{});
    for (int k = -out_cut_; k <= out_cut_; ++k)
      out[grid_.slot(k)] = cplx(0.0, grid_.xi(k)) * buf_[wrap(k)] * scale;
  }

 private:
  std::size_t wrap(int k) const {
    return k >= 0 ? static_cast<std::size_t>(k) : size_ - static_cast<std::size_t>(-k);
  }

  GridSpec grid_;
  std::size_t size_ = 0;
  int in_cut_ = 0;
  int out_cut_ = 0;
  std::vector<cplx> buf_;
  std::vector<cplx> phys_;
};

void check_finite(const SpectralField& u) {
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    if (!std::isfinite(u.coeffs[i].real()) || !std::isfinite(u.coeffs[i].imag()))
      throw NumericalError("blow-up detected at t=" + std::to_string(u.time) + ", mode " +
                           std::to_string(u.grid.mode(i)));
  }
}

}  // namespace

SpectralField nonlinearity(const SpectralField& u, Dealias mode) {
  Convolver conv(u.grid, mode);
  SpectralField out(u.grid, u.time);
  conv.apply(u.coeffs, out.coeffs);
  return out;
}

struct Stepper::Impl {
  GridSpec grid;
  SolverConfig cfg;
  Convolver conv;
  std::vector<double> symbol;
  double cached_dt = 0.0;
  std::vector<cplx> half;
  std::vector<cplx> full;
  std::vector<cplx> k1, k2, k3, k4, stage;

  Impl(const GridSpec& g, const SolverConfig& c) : grid(g), cfg(c), conv(g, c.dealias) {
    symbol.resize(g.modes);
    for (std::size_t s = 0; s < g.modes; ++s)
      symbol[s] = dispersion_symbol(g.xi(g.mode(s)), g.lambda, g.beta);
    half.resize(g.modes);
    full.resize(g.modes);
    stage.resize(g.modes);
  }

  void phases(double dt) {
    if (dt == cached_dt) return;
    for (std::size_t s = 0; s < grid.modes; ++s) {
      half[s] = std::polar(1.0, symbol[s] * dt * 0.5);
      full[s] = std::polar(1.0, symbol[s] * dt);
    }
    cached_dt = dt;
  }

  // du/dt = -i xi (u^2) in the rotating frame.
  void rhs(const std::vector<cplx>& u, std::vector<cplx>& out) {
    conv.apply(u, out);
    for (auto& v : out) v = -v;
  }

  void advance(SpectralField& u, double dt) {
    phases(dt);
    auto& c = u.coeffs;
    const std::size_t n = grid.modes;
    if (!cfg.nonlinear) {
      for (std::size_t s = 0; s < n; ++s) c[s] *= full[s];
      u.time += dt;
      return;
    }
    rhs(c, k1);
    for (std::size_t s = 0; s < n; ++s) stage[s] = half[s] * (c[s] + 0.5 * dt * k1[s]);
    rhs(stage, k2);
    for (std::size_t s = 0; s < n; ++s) stage[s] = half[s] * c[s] + 0.5 * dt * k2[s];
    rhs(stage, k3);
    for (std::size_t s = 0; s < n; ++s) stage[s] = full[s] * c[s] + dt * half[s] * k3[s];
    rhs(stage, k4);
    for (std::size_t s = 0; s < n; ++s)
      c[s] = full[s] * c[s] +
             dt / 6.0 * (full[s] * k1[s] + 2.0 * half[s] * (k2[s] + k3[s]) + k4[s]);
    u.time += dt;
  }
};

Stepper::Stepper(const GridSpec& grid, const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(grid, cfg)) {
  grid.validate();
}

Stepper::~Stepper() = default;

void Stepper::advance(SpectralField& u, double dt) {
  if (!(u.grid == impl_->grid)) throw ConfigError("stepper: grid mismatch");
  impl_->advance(u, dt);
  check_finite(u);
}

SpectralField step(const SpectralField& u, const SolverConfig& cfg) {
  cfg.validate();
  Stepper stepper(u.grid, cfg);
  SpectralField out = u;
  stepper.advance(out, cfg.dt);
  return out;
}

Trajectory simulate(const SpectralField& u0, const SolverConfig& cfg, std::size_t stride) {
  cfg.validate();
  u0.grid.validate();
  if (stride == 0) throw ConfigError("simulate: snapshot stride must be positive");
  check_finite(u0);
  if (u0.at(0) != cplx{}) throw ConfigError("simulate: initial data must be mean-zero");

  const double ratio = cfg.t_end / cfg.dt;
  const auto whole = static_cast<std::size_t>(std::llround(ratio));
  const bool exact = std::abs(ratio - static_cast<double>(whole)) <= 1e-9 * ratio;
  const std::size_t steps = exact ? whole : static_cast<std::size_t>(std::ceil(ratio));

  Trajectory traj;
  traj.grid = u0.grid;
  traj.config = cfg;
  traj.stride = stride;
  SpectralField u = u0;
  u.time = 0.0;
  traj.times.push_back(0.0);
  traj.snapshots.push_back(u);

  Stepper stepper(u0.grid, cfg);
  for (std::size_t n = 1; n <= steps; ++n) {
    const double t_next = n == steps ? cfg.t_end : static_cast<double>(n) * cfg.dt;
    stepper.advance(u, t_next - u.time);
    u.time = t_next;
    if (n % stride == 0 || n == steps) {
      traj.times.push_back(t_next);
      traj.snapshots.push_back(u);
    }
  }
  return traj;
}

double conserved_l2(const SpectralField& u) {
  const double n = sobolev_norm(u, 0.0);
  return n * n;
}

double conserved_h2(const SpectralField& u) {
  const double n = sobolev_norm(u, 2.0);
  return n * n;
}

void write_trajectory(std::ostream& out, const Trajectory& traj) {
  out.write("KWTR", 4);
  detail::put_u32(out, 1);
  detail::put_u64(out, traj.snapshots.size());
  for (const auto& s : traj.snapshots) write_snapshot(out, s);
}

Trajectory read_trajectory(std::istream& in) {
  detail::expect_magic(in, "KWTR");
  const auto version = detail::get_u32(in);
  if (version != 1) throw FormatError("KWTR: unsupported version " + std::to_string(version));
  const auto count = detail::get_u64(in);
  Trajectory traj;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto snap = read_snapshot(in);
    if (i == 0) traj.grid = snap.grid;
    else if (!(snap.grid == traj.grid)) throw FormatError("KWTR: snapshots disagree on grid");
    if (i > 0 && !(snap.time > traj.times.back()))
      throw FormatError("KWTR: times not strictly increasing");
    traj.times.push_back(snap.time);
    traj.snapshots.push_back(std::move(snap));
  }
  return traj;
}

void write_conserved_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,l2,h2\n" << std::setprecision(17);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i)
    out << traj.times[i] << ',' << conserved_l2(traj.snapshots[i]) << ','
        << conserved_h2(traj.snapshots[i]) << '\n';
}

}  // namespace kwlab
