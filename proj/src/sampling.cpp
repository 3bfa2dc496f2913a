#include "geoconvex/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace geoconvex {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double unit_offset(std::uint64_t seed, std::uint64_t stream) {
  const std::uint64_t h = mix64(mix64(seed) ^ (stream + 0x632be59bd9b4e019ull));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

KroneckerSequence::KroneckerSequence(int dim, std::uint64_t seed) {
  if (dim < 1) throw std::invalid_argument("sequence dimension must be positive");
  static const double primes[] = {2, 3, 5, 7, 11, 13, 17, 19};
  state_.resize(dim);
  alpha_.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const double a = std::sqrt(primes[i % 8]);
    alpha_[i] = a - std::floor(a);
    state_[i] = unit_offset(seed, static_cast<std::uint64_t>(i));
  }
}

Vec KroneckerSequence::next() {
  Vec out = state_;
  for (std::size_t i = 0; i < state_.size(); ++i) {
    state_[i] += alpha_[i];
    state_[i] -= std::floor(state_[i]);
  }
  return out;
}

Vec sample_in_box(const DomainBox& box, KroneckerSequence& seq) {
  Vec u = seq.next();
  Vec out(box.dim());
  for (int i = 0; i < box.dim(); ++i) out[i] = box.lo[i] + u[i] * (box.hi[i] - box.lo[i]);
  return out;
}

Vec spread_direction(int dim, int k, int n, std::uint64_t seed) {
  using std::numbers::pi;
  if (n < 1 || k < 0 || k >= n) throw std::invalid_argument("direction index out of range");
  if (dim == 1) return {k % 2 == 0 ? 1.0 : -1.0};
  if (dim == 2) {
    const double a = 2.0 * pi * (static_cast<double>(k) / n + unit_offset(seed, 101));
    return {std::cos(a), std::sin(a)};
  }
  if (dim == 3) {
    // Fibonacci sphere: near-uniform point set, rotated by a seeded phase.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double z = 1.0 - (2.0 * k + 1.0) / n;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = 2.0 * pi * (k / golden + unit_offset(seed, 202));
    return {rho * std::cos(a), rho * std::sin(a), z};
  }
  throw std::invalid_argument("spread_direction supports chart dimensions 1 to 3");
}

std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(mix64(seed) ^ mix64(stream + 0x51ul));
}

}  // namespace geoconvex
