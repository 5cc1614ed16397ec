#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace polyapprox {

// Upper bound on worker threads; 0 means hardware concurrency. Never changes results.
void set_max_threads(unsigned n) noexcept;
unsigned max_threads() noexcept;

// Calls fn(i) for i in [0, count). Each index is visited exactly once; order across workers is unspecified.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

// Fixed-size blocks over [0, count); results are returned in block order so reductions are schedule-independent.
inline constexpr std::uint64_t kBlockSize = 2048;

template <class T, class F>
std::vector<T> run_blocks(std::uint64_t count, F&& block) {
  const std::size_t nblocks = static_cast<std::size_t>((count + kBlockSize - 1) / kBlockSize);
  std::vector<T> out(nblocks);
  parallel_for(nblocks, [&](std::size_t b) {
    const std::uint64_t begin = b * kBlockSize;
    const std::uint64_t end = std::min<std::uint64_t>(count, begin + kBlockSize);
    out[b] = block(begin, end);
  });
  return out;
}

}  // namespace polyapprox
