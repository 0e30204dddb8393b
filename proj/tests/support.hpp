#pragma once

// Random inputs for property tests. Every generator is driven by an
// explicitly seeded mt19937_64.

#include <cstdint>
#include <numeric>
#include <random>

#include "k3iso/lattice.hpp"
#include "k3iso/mukai.hpp"
#include "k3iso/picard.hpp"

namespace k3iso::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long between(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  PicardParams params(long max_abc = 4) {
    for (;;) {
      const long a = between(1, max_abc), b = between(1, max_abc), c = between(1, max_abc);
      if (std::gcd(a, b) != 1) continue;
      const long h2 = 2 * a * b * c * c;
      const long mu = between(0, h2 - 1);
      if (std::gcd(mu, h2) != 1) continue;
      const long k_min = -((mu * mu - 1) / (2 * h2));
      const long d = mu * mu + 2 * h2 * between(k_min, k_min + 25);
      return PicardParams{a, b, c, d, mu};
    }
  }

  NVector element(const PicardParams& p, long range = 10) {
    return from_basis(p, between(-range, range), between(-range, range));
  }

  MukaiVector vector(const PicardParams& p, long range = 12) {
    for (;;) {
      MukaiVector v{p, between(0, range), element(p), between(-range, range)};
      if (!(v.r == 0 && v.s == 0 && v.c1 == NVector{0, 0})) return v;
    }
  }

  LatVec lat_vec(std::size_t n, long range) {
    LatVec v(n);
    for (auto& x : v) x = between(-range, range);
    return v;
  }

  IntMatrix matrix(std::size_t rows, std::size_t cols, long range) {
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = between(-range, range);
    }
    return m;
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace k3iso::testing
