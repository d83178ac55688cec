#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

#include "graphonlab/dyadic.hpp"

namespace graphonlab {

// splitmix64 finalizer; full-period bijective mixing of a 64-bit word.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Stateless counter-keyed generator.  Every draw is a pure function of
// (seed, stream, counter), so results cannot depend on how work is split
// across threads.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t raw(std::uint64_t stream, std::uint64_t counter) const {
    return mix64(mix64(seed_ ^ (stream * 0xa24baed4963ee407ULL)) +
                 counter * 0x9fb21c651e98df25ULL);
  }

  // Uniform on the 53-bit dyadic lattice of [0,1).
  double u01(std::uint64_t stream, std::uint64_t counter) const {
    return static_cast<double>(raw(stream, counter) >> 11) * 0x1p-53;
  }

  UnitCoord coord(std::uint64_t stream, std::uint64_t counter) const {
    return UnitCoord(raw(stream, counter) >> 11);
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Worker cap: GRAPHONLAB_THREADS, else hardware concurrency.
inline unsigned worker_count() {
  if (const char* env = std::getenv("GRAPHONLAB_THREADS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Parallel reduction over index range [0, n) in fixed-size chunks.  Chunk
// results are folded in index order, so the outcome is byte-identical for
// any thread count.
//
// ChunkFn: (uint64_t begin, uint64_t end, Acc&) -> void
// MergeFn: (Acc&, const Acc&) -> void
template <class Acc, class ChunkFn, class MergeFn>
Acc parallel_reduce(std::uint64_t n, Acc zero, ChunkFn chunk_fn, MergeFn merge_fn,
                    std::uint64_t chunk_size = 1u << 14) {
  if (n == 0) return zero;
  const std::uint64_t chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<Acc> partial(chunks, zero);
  unsigned workers = worker_count();
  if (workers > chunks) workers = static_cast<unsigned>(chunks);

  if (workers <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) {
      const std::uint64_t b = c * chunk_size;
      const std::uint64_t e = std::min(n, b + chunk_size);
      chunk_fn(b, e, partial[c]);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        const std::uint64_t b = c * chunk_size;
        const std::uint64_t e = std::min(n, b + chunk_size);
        chunk_fn(b, e, partial[c]);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  Acc total = zero;
  for (const Acc& p : partial) merge_fn(total, p);
  return total;
}

// Mean / variance accumulator for Monte Carlo sums.
struct McMoments {
  double sum = 0.0;
  double sumsq = 0.0;
  std::uint64_t n = 0;

  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  void merge(const McMoments& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    n += o.n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double std_error() const {
    if (n < 2) return 0.0;
    const double m = mean();
    double var = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
    if (var < 0) var = 0;
    return std::sqrt(var / static_cast<double>(n));
  }
};

// Parallel Monte Carlo mean of f(i) over i in [0, n).
template <class F>
McMoments mc_moments(std::uint64_t n, F&& f) {
  return parallel_reduce(
      n, McMoments{},
      [&](std::uint64_t b, std::uint64_t e, McMoments& acc) {
        for (std::uint64_t i = b; i < e; ++i) acc.add(f(i));
      },
      [](McMoments& a, const McMoments& b) { a.merge(b); });
}

}  // namespace graphonlab
