#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "kwlab/error.hpp"
#include "kwlab/spectral.hpp"

namespace kwlab {
namespace detail {
namespace {

template <typename T>
void put_le(std::ostream& out, T v) {
  std::array<unsigned char, sizeof(T)> bytes{};
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(reinterpret_cast<const char*>(bytes.data()), sizeof(T));
  if (!out) throw Error("write failed");
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw FormatError("unexpected end of file");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

}  // namespace

void put_u32(std::ostream& out, std::uint32_t v) { put_le(out, v); }
void put_u64(std::ostream& out, std::uint64_t v) { put_le(out, v); }
void put_i64(std::ostream& out, std::int64_t v) { put_le(out, v); }
void put_f64(std::ostream& out, double v) { put_le(out, v); }
void put_i8(std::ostream& out, std::int8_t v) { put_le(out, v); }
std::uint32_t get_u32(std::istream& in) { return get_le<std::uint32_t>(in); }
std::uint64_t get_u64(std::istream& in) { return get_le<std::uint64_t>(in); }
std::int64_t get_i64(std::istream& in) { return get_le<std::int64_t>(in); }
double get_f64(std::istream& in) { return get_le<double>(in); }
std::int8_t get_i8(std::istream& in) { return get_le<std::int8_t>(in); }

void expect_magic(std::istream& in, const char (&magic)[5]) {
  char buf[4];
  in.read(buf, 4);
  if (!in || std::memcmp(buf, magic, 4) != 0)
    throw FormatError(std::string("bad magic, expected ") + magic);
}

}  // namespace detail

using namespace detail;

void write_snapshot(std::ostream& out, const SpectralField& u) {
  out.write("KWSF", 4);
  put_u32(out, 1);
  put_u64(out, u.grid.modes);
  put_f64(out, u.grid.length);
  put_f64(out, u.grid.lambda);
  put_i8(out, static_cast<std::int8_t>(u.grid.beta));
  put_f64(out, u.time);
  for (const auto& c : u.coeffs) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
}

SpectralField read_snapshot(std::istream& in) {
  expect_magic(in, "KWSF");
  const auto version = get_u32(in);
  if (version != 1) throw FormatError("KWSF: unsupported version " + std::to_string(version));
  GridSpec g;
  g.modes = get_u64(in);
  g.length = get_f64(in);
  g.lambda = get_f64(in);
  g.beta = get_i8(in);
  try {
    g.validate();
  } catch (const ConfigError& e) {
    throw FormatError(std::string("KWSF: invalid grid: ") + e.what());
  }
  SpectralField u(g, get_f64(in));
  for (auto& c : u.coeffs) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c = {re, im};
  }
  return u;
}

}  // namespace kwlab
