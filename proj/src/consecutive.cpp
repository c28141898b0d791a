#include "consecutive.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace permpat {

namespace {

// Number of distinct patterns among the length-k windows of p.
long long distinct_count(const Permutation& p, int k) {
  const int n = p.size();
  const int windows = n - k + 1;
  if (k <= kMaxPackedLength) {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(static_cast<size_t>(windows) * 2);
    for (int j = 0; j < windows; ++j) seen.insert(window_rank(p.window(j, k)));
    return static_cast<long long>(seen.size());
  }
  std::set<std::vector<int>> seen;
  for (int j = 0; j < windows; ++j) seen.insert(reduce_window(p.window(j, k)).values);
  return static_cast<long long>(seen.size());
}

}  // namespace

PatternProfile profile(const Permutation& p) {
  const int n = p.size();
  PatternProfile out;
  out.n = n;
  out.x.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const long long xk = distinct_count(p, k);
    out.x.push_back(xk);
    out.phi += xk;
  }
  return out;
}

long long phi(const Permutation& p) { return profile(p).phi; }

PairCounts pair_counts(const Permutation& p, int k_min) {
  const int n = p.size();
  if (k_min < 1 || k_min > n) throw PreconditionError("k_min out of range");
  PairCounts out;
  out.n = n;
  out.k_min = k_min;
  for (int k = k_min; k <= n; ++k) {
    const int windows = n - k + 1;
    long long pairs = 0;
    long long distinct = 0;
    if (k <= kMaxPackedLength) {
      std::unordered_map<std::uint64_t, long long> mult;
      mult.reserve(static_cast<size_t>(windows) * 2);
      for (int j = 0; j < windows; ++j) ++mult[window_rank(p.window(j, k))];
      distinct = static_cast<long long>(mult.size());
      for (const auto& [_, m] : mult) pairs += m * (m - 1) / 2;
    } else {
      std::map<std::vector<int>, long long> mult;
      for (int j = 0; j < windows; ++j) ++mult[reduce_window(p.window(j, k)).values];
      distinct = static_cast<long long>(mult.size());
      for (const auto& [_, m] : mult) pairs += m * (m - 1) / 2;
    }
    out.z.push_back(pairs);
    out.y.push_back(windows - distinct);
  }
  return out;
}

std::vector<Pattern> distinct_patterns(const Permutation& p) {
  const int n = p.size();
  std::vector<Pattern> out;
  for (int k = 1; k <= n; ++k) {
    std::set<std::vector<int>> seen;
    for (int j = 0; j <= n - k; ++j) seen.insert(reduce_window(p.window(j, k)).values);
    for (const auto& v : seen) out.push_back(Pattern{v});
  }
  return out;
}

}  // namespace permpat
