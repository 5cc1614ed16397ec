#include "polyapprox/rng.hpp"

#include <random>

namespace polyapprox {

std::uint64_t entropy_seed() {
  std::random_device rd;
  const std::uint64_t hi = rd();
  const std::uint64_t lo = rd();
  return (hi << 32) ^ lo;
}

}  // namespace polyapprox
