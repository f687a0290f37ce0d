#include "kwlab/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "kwlab/error.hpp"

namespace kwlab::fft {
namespace {

using Key = std::tuple<std::size_t, std::size_t, int>;

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t rows, std::size_t cols, int sign) {
    std::lock_guard lock(mutex_);
    Key key{rows, cols, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const std::size_t n = rows * cols;
    auto* a = fftw_alloc_complex(n);
    auto* b = fftw_alloc_complex(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fftw_plan plan = rows == 1
                         ? fftw_plan_dft_1d(static_cast<int>(cols), a, b, sign, flags)
                         : fftw_plan_dft_2d(static_cast<int>(rows), static_cast<int>(cols), a, b,
                                            sign, flags);
    fftw_free(a);
    fftw_free(b);
    if (plan == nullptr) throw Error("fftw: plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out,
             Direction dir) {
  if (in.size() != rows * cols || out.size() != rows * cols)
    throw ConfigError("fft: buffer size does not match transform shape");
  if (in.empty()) return;
  fftw_plan plan = cache().get(rows, cols, static_cast<int>(dir));
  // FFTW_ESTIMATE plans do not modify the input for out-of-place complex transforms.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (src == dst) {
    std::vector<cplx> copy(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(copy.data()), dst);
  } else {
    fftw_execute_dft(plan, src, dst);
  }
}

}  // namespace

void dft(std::span<const cplx> in, std::span<cplx> out, Direction dir) {
  execute(1, in.size(), in, out, dir);
}

void dft2(std::size_t rows, std::size_t cols, std::span<const cplx> in, std::span<cplx> out,
          Direction dir) {
  execute(rows, cols, in, out, dir);
}

}  // namespace kwlab::fft
