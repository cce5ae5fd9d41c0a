#include "gdd/rng.hpp"

namespace gdd {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng Rng::stream(std::uint64_t master, std::uint64_t tag, std::uint64_t index) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(master) ^ tag) ^ index);
  return Rng(h);
}

Complex Rng::complex_normal() {
  const double re = normal_(engine_);
  const double im = normal_(engine_);
  return {re, im};
}

CMatrix Rng::complex_normal(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  // Fill column by column so the draw order matches the storage order.
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

}  // namespace gdd
