#pragma once

#include <vector>

#include "core.hpp"

namespace permpat {

/// Per-length distinct window-pattern counts X_k and their total phi.
struct PatternProfile {
  int n = 0;
  std::vector<long long> x;  // x[k-1] = X_k, k = 1..n
  long long phi = 0;
};

/// Z_k: ordered isomorphic window pairs; Y_k = (n-k+1) - X_k repeats.
struct PairCounts {
  int n = 0;
  int k_min = 1;
  std::vector<long long> z;  // z[i] for k = k_min + i
  std::vector<long long> y;
};

PatternProfile profile(const Permutation& p);
long long phi(const Permutation& p);
PairCounts pair_counts(const Permutation& p, int k_min);

// All distinct window patterns of p, sorted by length then lexicographically.
std::vector<Pattern> distinct_patterns(const Permutation& p);

}  // namespace permpat
