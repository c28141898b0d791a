#include "bounds.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "consecutive.hpp"

namespace permpat {

BoundTable bound_table(int n) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  BoundTable out;
  out.n = n;
  out.terms.reserve(static_cast<size_t>(n));
  out.crossover = 0;
  unsigned long long fact = 1;
  bool saturated = false;  // k! no longer representable; certainly >= windows
  for (int k = 1; k <= n; ++k) {
    const auto windows = static_cast<unsigned long long>(n - k + 1);
    if (!saturated && k > 1) {
      if (fact > (1ULL << 62) / static_cast<unsigned long long>(k)) {
        saturated = true;
      } else {
        fact *= static_cast<unsigned long long>(k);
      }
    }
    const bool fact_wins = saturated || fact >= windows;
    out.terms.push_back(fact_wins ? windows : fact);
    out.total += out.terms.back();
    if (out.crossover == 0 && fact_wins) out.crossover = k;
  }
  return out;
}

AsymptoticParams asymptotic_params(int n) {
  if (n < 3) throw PreconditionError("n must be >= 3");
  AsymptoticParams out;
  out.n = n;
  const double ln_n = std::log(static_cast<double>(n));
  out.a_n = ln_n / std::log(ln_n);
  out.k0 = static_cast<long long>(std::ceil(200.0 * ln_n));
  const int k_start = std::max(1, static_cast<int>(std::ceil(out.a_n)));
  for (int k = k_start; k <= n; ++k) {
    out.lower_bound += static_cast<unsigned long long>(n - k + 1);
  }
  return out;
}

namespace {

using Clock = std::chrono::steady_clock;

struct AttainSearch {
  int n;
  unsigned long long target;
  Clock::time_point deadline;
  std::vector<int> prefix;
  std::vector<bool> used;
  std::vector<std::unordered_set<std::uint64_t>> seen;  // per length k (1-based)
  std::vector<unsigned long long> max_patterns;          // min(k!, enough) per k
  unsigned long long distinct_total = 0;
  long long nodes = 0;
  bool timed_out = false;

  explicit AttainSearch(int n_, unsigned long long target_, Clock::time_point deadline_)
      : n(n_), target(target_), deadline(deadline_),
        used(static_cast<size_t>(n_) + 1, false),
        seen(static_cast<size_t>(n_) + 1) {
    prefix.reserve(static_cast<size_t>(n));
    max_patterns.resize(static_cast<size_t>(n) + 1, 0);
    unsigned long long fact = 1;
    for (int k = 1; k <= n; ++k) {
      if (fact <= static_cast<unsigned long long>(n)) fact *= static_cast<unsigned long long>(k);
      max_patterns[static_cast<size_t>(k)] =
          std::min(fact, static_cast<unsigned long long>(n));
    }
  }

  // Ranks of the windows ending at the position where v would be placed.
  // Returns the number of patterns not yet seen.
  int new_pattern_gain(int v, std::vector<std::uint64_t>& ranks_out) {
    prefix.push_back(v);
    const int len = static_cast<int>(prefix.size());
    ranks_out.clear();
    int gain = 0;
    for (int k = 1; k <= len; ++k) {
      const auto r = window_rank(
          std::span<const int>(prefix).subspan(static_cast<size_t>(len - k)));
      ranks_out.push_back(r);
      if (!seen[static_cast<size_t>(k)].contains(r)) ++gain;
    }
    prefix.pop_back();
    return gain;
  }

  bool optimistic_reaches_target() const {
    const int placed = static_cast<int>(prefix.size());
    unsigned long long best = distinct_total;
    for (int k = 1; k <= n; ++k) {
      const long long done = std::max(0, placed - k + 1);
      const long long remaining = (n - k + 1) - done;
      const unsigned long long headroom =
          max_patterns[static_cast<size_t>(k)] - seen[static_cast<size_t>(k)].size();
      best += std::min(static_cast<unsigned long long>(remaining), headroom);
    }
    return best >= target;
  }

  std::optional<Permutation> dfs() {
    if ((++nodes & 1023) == 0 && Clock::now() > deadline) {
      timed_out = true;
      return std::nullopt;
    }
    if (static_cast<int>(prefix.size()) == n) {
      if (distinct_total != target) return std::nullopt;
      Permutation p(prefix);
      if (static_cast<unsigned long long>(phi(p)) != target) return std::nullopt;
      return p;
    }
    if (!optimistic_reaches_target()) return std::nullopt;

    struct Candidate {
      int v;
      int gain;
      std::vector<std::uint64_t> ranks;
    };
    std::vector<Candidate> cands;
    std::vector<std::uint64_t> ranks;
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<size_t>(v)]) continue;
      const int gain = new_pattern_gain(v, ranks);
      cands.push_back(Candidate{v, gain, ranks});
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const Candidate& a, const Candidate& b) { return a.gain > b.gain; });

    for (const auto& c : cands) {
      prefix.push_back(c.v);
      used[static_cast<size_t>(c.v)] = true;
      std::vector<int> inserted;
      for (size_t i = 0; i < c.ranks.size(); ++i) {
        const int k = static_cast<int>(i) + 1;
        if (seen[static_cast<size_t>(k)].insert(c.ranks[i]).second) {
          inserted.push_back(k);
          ++distinct_total;
        }
      }
      auto found = dfs();
      for (int k : inserted) {
        // the rank for length k is c.ranks[k-1]
        seen[static_cast<size_t>(k)].erase(c.ranks[static_cast<size_t>(k) - 1]);
        --distinct_total;
      }
      used[static_cast<size_t>(c.v)] = false;
      prefix.pop_back();
      if (found || timed_out) return found;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Permutation> search_attaining(int n, std::chrono::milliseconds budget) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  const auto target = bound_table(n).total;
  AttainSearch search(n, target, Clock::now() + budget);
  return search.dfs();
}

}  // namespace permpat
