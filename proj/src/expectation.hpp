#pragma once

#include <vector>

#include "core.hpp"

namespace permpat {

struct Rational {
  unsigned long long num = 0;
  unsigned long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// E(X) = E(phi) by full enumeration of S_n. value.den is n!.
struct ExactExpectation {
  int n = 0;
  Rational value;
  std::vector<Rational> per_length;  // E(X_k), k = 1..n
};

struct McMoments {
  double mean = 0.0;
  double stderr_est = 0.0;
};

struct McExpectation {
  int n = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  int shards = 1;
  McMoments phi;
  std::vector<McMoments> per_length;  // empty unless requested
};

struct PairExpectation {
  int n = 0;
  int k_min = 1;
  long long samples = 0;
  std::uint64_t seed = 0;
  int shards = 1;
  std::vector<McMoments> z;  // E(Z_k), k = k_min..n
  std::vector<McMoments> y;  // E(Y_k)
};

struct PsiResult {
  int n = 0;
  long long samples = 0;
  std::uint64_t seed = 0;
  int shards = 1;
  McMoments psi;
  double ratio_to_2n = 0.0;
};

constexpr int kDefaultExactCap = 10;
constexpr int kPsiCap = 20;

ExactExpectation exact_expected_phi(int n, int cap = kDefaultExactCap);
McExpectation mc_expected_phi(int n, long long samples, std::uint64_t seed,
                              int threads, bool per_length);
PairExpectation expected_pair_counts(int n, int k_min, long long samples,
                                     std::uint64_t seed, int threads);

// Distinct subsequence patterns over all 2^n subsets, including the empty
// pattern. n <= 20.
long long psi(const Permutation& p);
PsiResult mc_expected_psi(int n, long long samples, std::uint64_t seed, int threads);

}  // namespace permpat
