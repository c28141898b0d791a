#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace permpat {

// Raised on violated preconditions and exceeded enumeration budgets.
// The C API and CLI map it to status/exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A permutation of [n], stored as its 1-based value sequence.
class Permutation {
 public:
  explicit Permutation(std::vector<int> values);

  static Permutation identity(int n);

  // One line of values, separated by commas and/or whitespace, e.g. "1,4,3,2,5".
  static Permutation parse(std::string_view text);

  int size() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& values() const { return values_; }
  std::span<const int> window(int start, int k) const {
    return std::span<const int>(values_).subspan(start, k);
  }

  Permutation reversed() const;
  Permutation complemented() const;

  std::string to_string() const;

  bool operator==(const Permutation&) const = default;

 private:
  std::vector<int> values_;
};

/// The reduced (canonical) form of a window; a permutation of [k].
/// Two windows are order isomorphic iff their Patterns are equal.
struct Pattern {
  std::vector<int> values;

  int length() const { return static_cast<int>(values.size()); }
  std::string to_string() const;
  bool operator==(const Pattern&) const = default;
  auto operator<=>(const Pattern&) const = default;
};

/// Lehmer rank of a pattern in lexicographic order; k <= 20 so the
/// rank fits 64 bits (20! < 2^64).
struct PackedCode {
  int k = 0;
  std::uint64_t code = 0;

  bool operator==(const PackedCode&) const = default;
};

constexpr int kMaxPackedLength = 20;

std::uint64_t factorial_u64(int k);  // k <= 20

Pattern reduce_window(std::span<const int> window);
bool is_order_isomorphic(std::span<const int> a, std::span<const int> b);

PackedCode pattern_rank(const Pattern& p);
Pattern pattern_unrank(int k, std::uint64_t code);

// Lehmer rank of reduce_window(window) computed directly from the window,
// without materializing the reduced sequence. O(k^2).
std::uint64_t window_rank(std::span<const int> window);

/// Deterministic seedable generator (xoshiro256**, splitmix64 seeding).
/// Identical seed gives an identical sample stream on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  std::uint64_t next();

  // Uniform in [0, bound), unbiased via rejection. bound >= 1.
  std::uint64_t below(std::uint64_t bound);

  // Independent stream for a worker shard, derived from the same seed.
  RandomSource fork(std::uint64_t shard) const;

 private:
  RandomSource() = default;
  std::uint64_t state_[4];
  std::uint64_t seed_ = 0;
};

Permutation random_permutation(int n, RandomSource& rng);

}  // namespace permpat
