#pragma once

// Hand-rolled generators for property tests. They use their own engine so a
// bug in the library's seeding cannot hide behind the generator.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace rtsl_test {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::uint64_t seed() { return engine_(); }

  std::vector<int> branching(std::size_t length, int lo, int hi) {
    std::vector<int> b(length);
    for (auto& x : b) x = integer(lo, hi);
    return b;
  }

 private:
  std::mt19937 engine_;
};

inline double rel_err(double got, double want) {
  const double d = std::abs(got - want);
  return d / std::max(std::abs(want), 1e-300);
}

}  // namespace rtsl_test
