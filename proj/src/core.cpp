#include "core.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace permpat {

namespace {

void check_bijection(const std::vector<int>& values) {
  const int n = static_cast<int>(values.size());
  if (n == 0) throw PreconditionError("permutation is empty");
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : values) {
    if (v < 1 || v > n) {
      throw PreconditionError("value " + std::to_string(v) +
                              " out of range for a permutation of [" +
                              std::to_string(n) + "]");
    }
    if (seen[static_cast<size_t>(v - 1)]) {
      throw PreconditionError("value " + std::to_string(v) + " repeated");
    }
    seen[static_cast<size_t>(v - 1)] = true;
  }
}

void check_distinct(std::span<const int> window) {
  if (window.empty()) throw PreconditionError("empty window");
  std::vector<int> sorted(window.begin(), window.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw PreconditionError("not injective");
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  check_bijection(values_);
}

Permutation Permutation::identity(int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<int> values;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',' || std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
    if (ec != std::errc()) {
      throw PreconditionError("cannot parse permutation near '" +
                              std::string(text.substr(i, 8)) + "'");
    }
    values.push_back(v);
    i = static_cast<size_t>(ptr - text.data());
  }
  return Permutation(std::move(values));
}

Permutation Permutation::reversed() const {
  std::vector<int> v(values_.rbegin(), values_.rend());
  return Permutation(std::move(v));
}

Permutation Permutation::complemented() const {
  const int n = size();
  std::vector<int> v(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) v[i] = n + 1 - values_[i];
  return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ',';
    os << values_[i];
  }
  return os.str();
}

std::string Pattern::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i) os << ',';
    os << values[i];
  }
  return os.str();
}

std::uint64_t factorial_u64(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

Pattern reduce_window(std::span<const int> window) {
  check_distinct(window);
  const size_t k = window.size();
  // argsort of argsort: rank of each entry among the window's values
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return window[static_cast<size_t>(a)] <
                                       window[static_cast<size_t>(b)]; });
  Pattern p;
  p.values.resize(k);
  for (size_t r = 0; r < k; ++r) {
    p.values[static_cast<size_t>(order[r])] = static_cast<int>(r) + 1;
  }
  return p;
}

bool is_order_isomorphic(std::span<const int> a, std::span<const int> b) {
  check_distinct(a);
  check_distinct(b);
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = i + 1; j < a.size(); ++j) {
      if ((a[i] < a[j]) != (b[i] < b[j])) return false;
    }
  }
  return true;
}

PackedCode pattern_rank(const Pattern& p) {
  if (p.length() > kMaxPackedLength) throw PreconditionError("rank overflow");
  return PackedCode{p.length(), window_rank(p.values)};
}

Pattern pattern_unrank(int k, std::uint64_t code) {
  if (k < 1 || k > kMaxPackedLength) throw PreconditionError("rank overflow");
  if (code >= factorial_u64(k)) throw PreconditionError("code out of range");
  std::vector<int> digits(static_cast<size_t>(k));
  for (int i = k - 1; i >= 0; --i) {
    digits[static_cast<size_t>(i)] = static_cast<int>(code % static_cast<std::uint64_t>(k - i));
    code /= static_cast<std::uint64_t>(k - i);
  }
  std::vector<int> pool(static_cast<size_t>(k));
  std::iota(pool.begin(), pool.end(), 1);
  Pattern p;
  p.values.reserve(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) {
    const auto d = static_cast<size_t>(digits[static_cast<size_t>(i)]);
    p.values.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return p;
}

std::uint64_t window_rank(std::span<const int> window) {
  const int k = static_cast<int>(window.size());
  if (k > kMaxPackedLength) throw PreconditionError("rank overflow");
  // Lehmer digit at i is the number of later entries smaller than window[i];
  // it depends only on relative order, so this ranks the reduced pattern.
  std::uint64_t rank = 0;
  std::uint64_t radix = factorial_u64(k - 1);
  for (int i = 0; i < k; ++i) {
    int smaller_later = 0;
    for (int j = i + 1; j < k; ++j) {
      if (window[static_cast<size_t>(j)] < window[static_cast<size_t>(i)]) ++smaller_later;
    }
    rank += static_cast<std::uint64_t>(smaller_later) * radix;
    if (k - 1 - i > 0) radix /= static_cast<std::uint64_t>(k - 1 - i);
  }
  return rank;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int r) { return (x << r) | (x >> (64 - r)); }

}  // namespace

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed) {
  std::uint64_t s = seed;
  for (auto& w : state_) w = splitmix64(s);
}

std::uint64_t RandomSource::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

std::uint64_t RandomSource::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("bound must be >= 1");
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

RandomSource RandomSource::fork(std::uint64_t shard) const {
  std::uint64_t s = seed_ ^ (0xa0761d6478bd642fULL * (shard + 1));
  RandomSource out;
  out.seed_ = s;
  for (auto& w : out.state_) w = splitmix64(s);
  return out;
}

Permutation random_permutation(int n, RandomSource& rng) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  std::vector<int> v(static_cast<size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  for (int i = n - 1; i >= 1; --i) {
    const auto j = rng.below(static_cast<std::uint64_t>(i) + 1);
    std::swap(v[static_cast<size_t>(i)], v[j]);
  }
  return Permutation(std::move(v));
}

}  // namespace permpat
