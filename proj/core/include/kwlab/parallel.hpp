#pragma once

// Thread-count control and reductions whose result does not depend on the
// number of threads. Work is split into fixed-size chunks independent of the
// thread count; chunk partials are combined by a fixed pairwise tree.

#include <cstddef>
#include <functional>
#include <vector>

namespace kwlab {

void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(chunk_index) for chunk_index in [0, chunks) on the worker pool.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

inline constexpr std::size_t kReductionChunk = 2048;

template <typename T>
T pairwise_sum(std::vector<T> parts) {
  if (parts.empty()) return T{};
  while (parts.size() > 1) {
    std::size_t half = (parts.size() + 1) / 2;
    for (std::size_t i = 0; i < parts.size() / 2; ++i) parts[i] = parts[2 * i] + parts[2 * i + 1];
    if (parts.size() % 2 == 1) parts[parts.size() / 2] = parts.back();
    parts.resize(half);
  }
  return parts.front();
}

/// Sum of term(i) for i in [0, n), bit-identical for every thread count.
template <typename T, typename Term>
T deterministic_sum(std::size_t n, Term&& term) {
  const std::size_t chunks = (n + kReductionChunk - 1) / kReductionChunk;
  std::vector<T> partial(chunks, T{});
  parallel_chunks(chunks, [&](std::size_t c) {
    const std::size_t begin = c * kReductionChunk;
    const std::size_t end = begin + kReductionChunk < n ? begin + kReductionChunk : n;
    std::vector<T> local;
    local.reserve(end - begin);
    for (std::size_t i = begin; i < end; ++i) local.push_back(term(i));
    partial[c] = pairwise_sum(std::move(local));
  });
  return pairwise_sum(std::move(partial));
}

}  // namespace kwlab
