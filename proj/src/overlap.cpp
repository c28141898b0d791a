#include "overlap.hpp"

#include <algorithm>
#include <cmath>

namespace permpat {

namespace {

void check_kl(int k, int l) {
  if (k < 1) throw PreconditionError("k must be >= 1");
  if (l < 0 || l > k - 1) throw PreconditionError("l must satisfy 0 <= l <= k-1");
}

// Pruned DFS over S_m, m = 2k-l, filling positions left to right in value
// order (lexicographic enumeration). Windows are [0,k) and [d, d+k) with
// d = k-l; the pair constraint sign(s[i]-s[j]) == sign(s[d+i]-s[d+j]) is
// checked as soon as its last position d+j is placed.
struct OverlapEnumerator {
  int k, l, m, d;
  std::vector<int> assign;
  std::vector<bool> used;
  OverlapWitnesses out;

  OverlapEnumerator(int k_, int l_)
      : k(k_), l(l_), m(2 * k_ - l_), d(k_ - l_),
        used(static_cast<size_t>(2 * k_ - l_) + 1, false) {
    out.k = k;
    out.l = l;
    assign.reserve(static_cast<size_t>(m));
  }

  bool constraints_ok(int t) const {
    if (t < d + 1) return true;
    const int j = t - d;
    if (j >= k) return true;  // beyond window1; no new pair completes here
    const int vt = assign[static_cast<size_t>(t)];
    for (int i = 0; i < j; ++i) {
      const bool w1 = assign[static_cast<size_t>(i)] < assign[static_cast<size_t>(j)];
      const bool w2 = assign[static_cast<size_t>(d + i)] < vt;
      if (w1 != w2) return false;
    }
    return true;
  }

  void run() {
    const int t = static_cast<int>(assign.size());
    if (t == m) {
      ++out.total;
      ++out.per_pattern[window_rank(
          std::span<const int>(assign).first(static_cast<size_t>(k)))];
      return;
    }
    for (int v = 1; v <= m; ++v) {
      if (used[static_cast<size_t>(v)]) continue;
      assign.push_back(v);
      used[static_cast<size_t>(v)] = true;
      if (constraints_ok(t)) run();
      used[static_cast<size_t>(v)] = false;
      assign.pop_back();
    }
  }
};

}  // namespace

OverlapWitnesses enumerate_overlap(int k, int l) {
  check_kl(k, l);
  if (2 * k - l > kEnumerationBudget) {
    throw PreconditionError("enumeration budget exceeded; use MC");
  }
  OverlapEnumerator e(k, l);
  e.run();
  return e.out;
}

OverlapStat exact_overlap_probability(int k, int l) {
  const auto witnesses = enumerate_overlap(k, l);
  OverlapStat stat;
  stat.k = k;
  stat.l = l;
  stat.exact = true;
  stat.numerator = witnesses.total;
  stat.denominator = factorial_u64(2 * k - l);
  return stat;
}

OverlapStat mc_overlap_probability(int k, int l, long long samples, RandomSource& rng) {
  check_kl(k, l);
  if (samples < 1) throw PreconditionError("samples must be >= 1");
  const int m = 2 * k - l;
  const int d = k - l;
  long long hits = 0;
  for (long long s = 0; s < samples; ++s) {
    const Permutation p = random_permutation(m, rng);
    const auto vals = std::span<const int>(p.values());
    if (window_rank(vals.first(static_cast<size_t>(k))) ==
        window_rank(vals.subspan(static_cast<size_t>(d), static_cast<size_t>(k)))) {
      ++hits;
    }
  }
  OverlapStat stat;
  stat.k = k;
  stat.l = l;
  stat.exact = false;
  stat.samples = samples;
  stat.estimate = static_cast<double>(hits) / static_cast<double>(samples);
  stat.stderr_est =
      std::sqrt(stat.estimate * (1.0 - stat.estimate) / static_cast<double>(samples));
  return stat;
}

GoodSet enumerate_good(int k, int l) {
  const auto witnesses = enumerate_overlap(k, l);
  GoodSet out;
  out.k = k;
  out.l = l;
  for (const auto& [code, _] : witnesses.per_pattern) {
    out.members.push_back(pattern_unrank(k, code));
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

namespace {

using u128 = unsigned __int128;

u128 ipow128(u128 base, int exp) {
  u128 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

LemmaReport lemma_report(const OverlapStat& stat) {
  const int k = stat.k;
  const int l = stat.l;
  check_kl(k, l);
  LemmaReport report;
  report.k = k;
  report.l = l;
  report.stat = stat;

  const auto num = static_cast<u128>(report.stat.numerator);
  const auto den = static_cast<u128>(report.stat.denominator);
  const bool exact = report.stat.exact;
  const double p = report.stat.probability();

  if (l == 0) {
    report.lemma = "disjoint";
    report.bound = 1.0 / static_cast<double>(factorial_u64(k));
    // p <= 1/k!  <=>  num * k! <= den
    report.pass = exact ? (num * factorial_u64(k) <= den) : (p <= report.bound);
  } else if (l == k - 1) {
    report.lemma = "max-overlap";
    report.bound = 2.0 / static_cast<double>(factorial_u64(k + 1));
    report.pass = exact ? (num * factorial_u64(k + 1) <= 2 * den) : (p <= report.bound);
  } else if (2 * l <= k) {
    report.lemma = "small-overlap";
    const u128 three_k = ipow128(3, k);
    report.bound = static_cast<double>(three_k) / static_cast<double>(factorial_u64(k));
    report.pass = exact ? (num * factorial_u64(k) <= den * three_k) : (p <= report.bound);
  } else {
    report.lemma = "large-overlap";
    const int r = k - l;
    const double exponent = static_cast<double>(k) / r - 1.0;
    report.bound = std::pow(1.0 / static_cast<double>(factorial_u64(r)), exponent);
    // p <= (r!)^{-(k/r - 1)} = (r!)^{-l/r}  <=>  num^r * (r!)^l <= den^r
    report.pass = exact
                      ? (ipow128(num, r) * ipow128(factorial_u64(r), l) <= ipow128(den, r))
                      : (p <= report.bound);
  }
  return report;
}

LemmaReport check_lemma_bounds(int k, int l, long long mc_samples, std::uint64_t seed) {
  check_kl(k, l);
  if (2 * k - l <= kEnumerationBudget) {
    return lemma_report(exact_overlap_probability(k, l));
  }
  RandomSource rng(seed);
  return lemma_report(mc_overlap_probability(k, l, mc_samples, rng));
}

BoundBreakdown bound_breakdown(int n, int k) {
  if (k < 2 || n < k) throw PreconditionError("require n >= k >= 2");
  BoundBreakdown out;
  out.n = n;
  out.k = k;
  const double nd = static_cast<double>(n);
  double fact_k = 0.0, fact_k1 = 0.0;
  {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    fact_k = f;
    fact_k1 = f * (k + 1);
  }
  out.term_disjoint = nd * nd * nd / fact_k;
  out.term_full_overlap = 2.0 * nd * nd / fact_k1;
  out.term_small_overlap = nd * nd * k * std::pow(3.0, k) / fact_k;
  double large = 0.0;
  for (int l = (k + 1) / 2; l <= k - 2; ++l) {
    const int r = k - l;
    double fact_r = 1.0;
    for (int i = 2; i <= r; ++i) fact_r *= i;
    large += std::pow(1.0 / fact_r, static_cast<double>(l) / r);
  }
  out.term_large_overlap = nd * nd * large;
  out.z_bound = 6.0 * nd * nd * nd * std::pow(0.96, k);
  out.y_bound = 3.0 * std::pow(nd, 5) * std::pow(0.96, k);
  return out;
}

ProbeTable good_count_probe(int d, int k_min, int k_max) {
  if (d < 1) throw PreconditionError("d must be >= 1");
  if (k_min < d) k_min = d;  // l = k-d must be >= 0
  if (k_min > k_max) throw PreconditionError("empty k range");
  ProbeTable out;
  out.d = d;
  std::vector<long long> computed;
  bool prefix_intact = true;
  for (int k = k_min; k <= k_max; ++k) {
    ProbeRow row;
    row.k = k;
    row.l = k - d;
    if (k + d <= kEnumerationBudget) {
      row.computed = true;
      row.g = enumerate_good(k, k - d).count();
      if (prefix_intact) computed.push_back(static_cast<long long>(row.g));
    } else {
      prefix_intact = false;
    }
    out.rows.push_back(row);
  }
  // iterated finite differences of the computed prefix
  std::vector<long long> cur = computed;
  for (int order = 1; cur.size() > 1; ++order) {
    std::vector<long long> next;
    for (size_t i = 0; i + 1 < cur.size(); ++i) next.push_back(cur[i + 1] - cur[i]);
    out.differences.push_back(next);
    cur = next;
  }
  if (static_cast<int>(out.differences.size()) >= d + 1) {
    const auto& diff = out.differences[static_cast<size_t>(d)];
    out.next_difference_vanishes =
        std::all_of(diff.begin(), diff.end(), [](long long v) { return v == 0; });
  }
  return out;
}

}  // namespace permpat
