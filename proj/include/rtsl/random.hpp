#pragma once

// Branching laws, seeded i.i.d. branching sequences and the left shift.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <random>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rtsl {

/// Identifier recorded in run metadata for the generator family used below.
inline constexpr std::string_view kPrngId = "mt19937_64/splitmix64-substream";

// splitmix64 finalizer
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Seed of sub-stream `stream` under master seed `seed`. Pure, so a worker can
/// rebuild any stream from (seed, index) alone.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
  return mix64(mix64(seed) ^ mix64(stream * 0xD1B54A32D192ED03ull + 1));
}

class Substream {
 public:
  explicit Substream(std::uint64_t seed) : engine_(seed) {}
  Substream(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  // uniform on [0, 1) with 53 random bits
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct Atom {
  int value;
  double weight;
};

class BranchingDistribution {
 public:
  /// Weights must already sum to 1 within 1e-12; see `parse` for the lenient
  /// literal form.
  explicit BranchingDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
    if (atoms_.empty()) throw std::invalid_argument("distribution has no atoms");
    std::sort(atoms_.begin(), atoms_.end(),
              [](const Atom& a, const Atom& b) { return a.value < b.value; });
    double total = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      const auto& a = atoms_[i];
      if (a.value < 2) throw std::invalid_argument("branching value below 2");
      if (!(a.weight > 0.0)) throw std::invalid_argument("atom weight must be positive");
      if (i > 0 && atoms_[i - 1].value == a.value)
        throw std::invalid_argument("duplicate branching value");
      total += a.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("weights do not sum to 1");
    cumulative_.reserve(atoms_.size());
    double c = 0.0;
    for (const auto& a : atoms_) cumulative_.push_back(c += a.weight);
    cumulative_.back() = 1.0;
  }

  /// Parses "2:0.5,3:0.5". Weights within 1e-6 of summing to one are
  /// renormalized; anything further off is rejected.
  static BranchingDistribution parse(std::string_view literal) {
    std::vector<Atom> atoms;
    std::string text(literal);
    std::stringstream ss(text);
    std::string item;
    double total = 0.0;
    while (std::getline(ss, item, ',')) {
      const auto colon = item.find(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("malformed distribution atom '" + item + "'");
      std::size_t used = 0;
      int value = 0;
      double weight = 0.0;
      try {
        value = std::stoi(item.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing characters");
        const auto w = item.substr(colon + 1);
        weight = std::stod(w, &used);
        if (used != w.size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw std::invalid_argument("malformed distribution atom '" + item + "'");
      }
      atoms.push_back({value, weight});
      total += weight;
    }
    if (atoms.empty()) throw std::invalid_argument("empty distribution literal");
    if (std::abs(total - 1.0) > 1e-6)
      throw std::invalid_argument("distribution weights must sum to 1");
    for (auto& a : atoms) a.weight /= total;
    return BranchingDistribution(std::move(atoms));
  }

  static BranchingDistribution uniform(int lo, int hi) {
    std::vector<Atom> atoms;
    for (int v = lo; v <= hi; ++v) atoms.push_back({v, 1.0 / (hi - lo + 1)});
    return BranchingDistribution(std::move(atoms));
  }

  static BranchingDistribution point(int value) { return BranchingDistribution({{value, 1.0}}); }

  std::span<const Atom> atoms() const noexcept { return atoms_; }
  /// Largest value in the support.
  int d_mu() const noexcept { return atoms_.back().value; }
  int d_min() const noexcept { return atoms_.front().value; }
  bool degenerate() const noexcept { return atoms_.size() < 2; }

  bool contains(int value) const noexcept {
    return std::any_of(atoms_.begin(), atoms_.end(),
                       [value](const Atom& a) { return a.value == value; });
  }

  std::size_t index_of(double u) const noexcept {
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                 atoms_.size() - 1);
  }

  int draw(Substream& rng) const { return atoms_[index_of(rng.uniform())].value; }

  std::string to_string() const {
    std::string out;
    char buf[64];
    for (const auto& a : atoms_) {
      std::snprintf(buf, sizeof buf, "%s%d:%.17g", out.empty() ? "" : ",", a.value, a.weight);
      out += buf;
    }
    return out;
  }

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

/// Finite prefix (w_0, ..., w_{L-1}) of a branching sequence together with the
/// number of left shifts already applied.
class BranchingSequence {
 public:
  BranchingSequence() = default;
  explicit BranchingSequence(std::vector<int> values, std::size_t origin = 0)
      : values_(std::move(values)), origin_(origin) {}

  std::size_t size() const noexcept { return values_.size(); }
  std::size_t origin() const noexcept { return origin_; }
  int operator[](std::size_t n) const { return values_[n]; }
  int at(std::size_t n) const {
    if (n >= values_.size()) throw std::out_of_range("branching sequence index out of range");
    return values_[n];
  }
  std::span<const int> values() const noexcept { return values_; }
  int max() const { return *std::max_element(values_.begin(), values_.end()); }

  friend bool operator==(const BranchingSequence&, const BranchingSequence&) = default;

 private:
  std::vector<int> values_;
  std::size_t origin_ = 0;
};

inline BranchingSequence sample_sequence(const BranchingDistribution& dist, std::size_t length,
                                         std::uint64_t seed) {
  if (length == 0) throw std::invalid_argument("empty sequence");
  Substream rng(seed);
  std::vector<int> values(length);
  for (auto& v : values) v = dist.draw(rng);
  return BranchingSequence(std::move(values));
}

/// Left shift T^k.
inline BranchingSequence shift(const BranchingSequence& w, std::size_t k) {
  if (k > w.size()) throw std::invalid_argument("shift past end");
  const auto v = w.values();
  return BranchingSequence(std::vector<int>(v.begin() + static_cast<std::ptrdiff_t>(k), v.end()),
                           w.origin() + k);
}

}  // namespace rtsl
