#pragma once

#include <chrono>
#include <optional>
#include <vector>

#include "core.hpp"

namespace permpat {

/// B(n) = sum over k of min(n-k+1, k!), with the per-length terms and the
/// smallest k at which k! overtakes the window count.
struct BoundTable {
  int n = 0;
  std::vector<unsigned long long> terms;  // terms[k-1], k = 1..n
  unsigned long long total = 0;
  int crossover = 1;  // smallest k with k! >= n-k+1
};

struct AsymptoticParams {
  int n = 0;
  double a_n = 0.0;               // ln n / ln ln n
  long long k0 = 0;               // ceil(200 ln n)
  unsigned long long lower_bound = 0;  // sum_{k=ceil(a_n)}^{n} (n-k+1)
};

BoundTable bound_table(int n);
AsymptoticParams asymptotic_params(int n);  // n >= 3

// Search for a permutation with phi = B(n). Empty result means the budget
// ran out, not that no such permutation exists. The returned permutation is
// verified against phi before being returned.
std::optional<Permutation> search_attaining(int n, std::chrono::milliseconds budget);

}  // namespace permpat
