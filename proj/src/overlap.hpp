#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core.hpp"

namespace permpat {

// Enumeration over S_{2k-l} is capped at 10! sequences.
constexpr int kEnumerationBudget = 10;

/// Probability that two length-k windows overlapping in l positions are
/// order isomorphic. Exact mode carries the witness count over S_{2k-l};
/// for l = 0 the windows are taken adjacent (positions 1..k and k+1..2k).
struct OverlapStat {
  int k = 0;
  int l = 0;
  bool exact = true;
  unsigned long long numerator = 0;    // exact mode
  unsigned long long denominator = 1;  // (2k-l)!
  double estimate = 0.0;               // MC mode
  double stderr_est = 0.0;
  long long samples = 0;

  double probability() const {
    return exact ? static_cast<double>(numerator) / static_cast<double>(denominator)
                 : estimate;
  }
};

/// Witness counts per shared pattern, from full enumeration of S_{2k-l}.
struct OverlapWitnesses {
  int k = 0;
  int l = 0;
  unsigned long long total = 0;
  std::map<std::uint64_t, unsigned long long> per_pattern;  // PackedCode code -> count
};

/// The l-good patterns of length k: those that can be the common pattern
/// of two windows overlapping in l positions.
struct GoodSet {
  int k = 0;
  int l = 0;
  std::vector<Pattern> members;  // sorted lexicographically
  unsigned long long count() const { return members.size(); }
};

struct LemmaReport {
  int k = 0;
  int l = 0;
  OverlapStat stat;
  std::string lemma;   // which bound applies
  double bound = 0.0;
  bool pass = false;   // probability <= bound (exact arithmetic when exact)
};

/// The closed-form terms of the E(Z) decomposition, evaluated at (n, k).
struct BoundBreakdown {
  int n = 0;
  int k = 0;
  double term_disjoint = 0.0;       // n^3 / k!
  double term_full_overlap = 0.0;   // 2 n^2 / (k+1)!
  double term_small_overlap = 0.0;  // n^2 k 3^k / k!
  double term_large_overlap = 0.0;  // n^2 sum_{l = ceil(k/2)}^{k-2} ((k-l)!)^(-l/(k-l))
  double z_bound = 0.0;             // 6 n^3 (0.96)^k
  double y_bound = 0.0;             // 3 n^5 (0.96)^k
};

struct ProbeRow {
  int k = 0;
  int l = 0;
  bool computed = false;  // false when k + d exceeds the enumeration budget
  unsigned long long g = 0;
};

/// G(k, k-d) over a k range, with iterated finite differences of the
/// computed prefix.
struct ProbeTable {
  int d = 0;
  std::vector<ProbeRow> rows;
  std::vector<std::vector<long long>> differences;  // differences[i] = order i+1
  bool next_difference_vanishes = false;  // order d+1 differences all zero
};

OverlapWitnesses enumerate_overlap(int k, int l);
OverlapStat exact_overlap_probability(int k, int l);
OverlapStat mc_overlap_probability(int k, int l, long long samples, RandomSource& rng);
GoodSet enumerate_good(int k, int l);

// Applicable bound and pass flag for an already-computed probability.
// Exact-mode comparisons use integer arithmetic.
LemmaReport lemma_report(const OverlapStat& stat);

// Uses the exact probability when 2k-l <= 10, otherwise a Monte Carlo
// estimate with the given sample count.
LemmaReport check_lemma_bounds(int k, int l, long long mc_samples = 1000000,
                               std::uint64_t seed = 0);

BoundBreakdown bound_breakdown(int n, int k);
ProbeTable good_count_probe(int d, int k_min, int k_max);

}  // namespace permpat
