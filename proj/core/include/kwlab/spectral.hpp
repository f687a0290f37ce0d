#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace kwlab {

using cplx = std::complex<double>;

/// Periodic grid with M modes on [0, L); mode k in [-M/2, M/2), frequency 2 pi k / L.
struct GridSpec {
  std::size_t modes = 64;
  double length = 6.283185307179586;
  double lambda = 1.0;
  int beta = 0;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;

  int k_min() const { return -static_cast<int>(modes / 2); }
  int k_max() const { return static_cast<int>(modes / 2) - 1; }
  /// Largest |k| kept by the solver; the Nyquist mode -M/2 is never populated.
  int retained() const { return static_cast<int>(modes / 2) - 1; }
  double dxi() const;
  double xi(int k) const { return dxi() * k; }
  /// Storage slot of mode k (FFT order: 0, 1, ..., M/2-1, -M/2, ..., -1).
  std::size_t slot(int k) const;
  int mode(std::size_t slot) const;

  bool operator==(const GridSpec&) const = default;
};

struct RealField {
  std::vector<double> samples;
};

struct SpectralField {
  GridSpec grid;
  std::vector<cplx> coeffs;  // FFT order, see GridSpec::slot
  double time = 0.0;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g, double t = 0.0);

  cplx& at(int k) { return coeffs[grid.slot(k)]; }
  const cplx& at(int k) const { return coeffs[grid.slot(k)]; }
};

/// Uniform grid points x_j = j L / M.
std::vector<double> grid_points(const GridSpec& g);

SpectralField forward_transform(const RealField& f, const GridSpec& g);
RealField inverse_transform(const SpectralField& u, double tolerance = 1e-10);

double dispersion_symbol(double xi, double lambda, int beta);
SpectralField semigroup_apply(const SpectralField& u, double t);
double sobolev_norm(const SpectralField& u, double s);

/// Largest mode count accepted anywhere; KWLAB_MAX_MODES overrides the default.
std::size_t max_modes();

/// u_{0,lambda}(x) = lambda^{-4} u0(x / lambda) on period lambda L at the same resolution.
SpectralField scale_field(const SpectralField& u0, double lambda);

/// Largest |Im c_k + conj c_{-k}| style defect, relative to the largest coefficient.
double hermitian_defect(const SpectralField& u);
/// Zeroes the mean and the Nyquist slot, and projects onto Hermitian symmetry.
void make_real_mean_zero(SpectralField& u);

/// KWSF snapshot record.
void write_snapshot(std::ostream& out, const SpectralField& u);
SpectralField read_snapshot(std::istream& in);

namespace detail {
void put_u32(std::ostream& out, std::uint32_t v);
void put_u64(std::ostream& out, std::uint64_t v);
void put_i64(std::ostream& out, std::int64_t v);
void put_f64(std::ostream& out, double v);
void put_i8(std::ostream& out, std::int8_t v);
std::uint32_t get_u32(std::istream& in);
std::uint64_t get_u64(std::istream& in);
std::int64_t get_i64(std::istream& in);
double get_f64(std::istream& in);
std::int8_t get_i8(std::istream& in);
void expect_magic(std::istream& in, const char (&magic)[5]);
}  // namespace detail

}  // namespace kwlab
