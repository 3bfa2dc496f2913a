#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "geoconvex/linalg.hpp"

namespace geoconvex {

struct DomainBox {
  Vec lo;
  Vec hi;
  int dim() const { return static_cast<int>(lo.size()); }
};

// splitmix64; used to derive decorrelated stream offsets from one seed.
std::uint64_t mix64(std::uint64_t z);
// Uniform double in [0, 1) from a mixed seed/stream pair.
double unit_offset(std::uint64_t seed, std::uint64_t stream);

// Additive-recurrence (Kronecker) sequence in [0,1)^dim with sqrt-prime
// increments. Low discrepancy, trivially reproducible, seed shifts the start.
class KroneckerSequence {
 public:
  KroneckerSequence(int dim, std::uint64_t seed);
  Vec next();

 private:
  Vec state_;
  Vec alpha_;
};

Vec sample_in_box(const DomainBox& box, KroneckerSequence& seq);

// k-th of n well-spread unit directions in chart coordinates.
// dim 2: uniform angles with a seeded phase. dim 3: Fibonacci sphere with a
// seeded rotation. dim 1: alternating signs.
Vec spread_direction(int dim, int k, int n, std::uint64_t seed);

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream);

}  // namespace geoconvex
