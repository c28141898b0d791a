#include "expectation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <unordered_set>

#include "consecutive.hpp"

namespace permpat {

namespace {

struct ShardSums {
  std::vector<unsigned long long> sum;
  std::vector<unsigned long long> sum_sq;
};

// Runs `samples` i.i.d. evaluations of `stat` on uniform permutations of [n],
// sharded across `threads` workers with seeds derived from `seed`. Shard s
// owns a contiguous block of sample indices; sums are merged in shard order,
// so the result is bit-identical for a fixed (seed, threads).
template <typename StatFn>
ShardSums sharded_mc(int n, long long samples, std::uint64_t seed, int threads,
                     size_t stat_count, const StatFn& stat) {
  if (samples < 1) throw PreconditionError("samples must be >= 1");
  if (threads < 1) throw PreconditionError("threads must be >= 1");
  threads = static_cast<int>(std::min<long long>(threads, samples));

  const RandomSource base(seed);
  std::vector<ShardSums> partial(static_cast<size_t>(threads));
  auto worker = [&](int s) {
    auto& acc = partial[static_cast<size_t>(s)];
    acc.sum.assign(stat_count, 0);
    acc.sum_sq.assign(stat_count, 0);
    const long long per = samples / threads;
    const long long extra = samples % threads;
    const long long count = per + (s < extra ? 1 : 0);
    RandomSource rng = base.fork(static_cast<std::uint64_t>(s));
    std::vector<long long> values(stat_count);
    for (long long i = 0; i < count; ++i) {
      const Permutation p = random_permutation(n, rng);
      stat(p, values);
      for (size_t c = 0; c < stat_count; ++c) {
        const auto v = static_cast<unsigned long long>(values[c]);
        acc.sum[c] += v;
        acc.sum_sq[c] += v * v;
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int s = 0; s < threads; ++s) pool.emplace_back(worker, s);
    for (auto& t : pool) t.join();
  }

  ShardSums merged;
  merged.sum.assign(stat_count, 0);
  merged.sum_sq.assign(stat_count, 0);
  for (const auto& part : partial) {
    for (size_t c = 0; c < stat_count; ++c) {
      merged.sum[c] += part.sum[c];
      merged.sum_sq[c] += part.sum_sq[c];
    }
  }
  return merged;
}

McMoments moments(unsigned long long sum, unsigned long long sum_sq, long long samples) {
  McMoments m;
  const double nd = static_cast<double>(samples);
  m.mean = static_cast<double>(sum) / nd;
  if (samples > 1) {
    const double var =
        (static_cast<double>(sum_sq) - static_cast<double>(sum) * m.mean) / (nd - 1.0);
    m.stderr_est = std::sqrt(std::max(0.0, var) / nd);
  }
  return m;
}

}  // namespace

ExactExpectation exact_expected_phi(int n, int cap) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (n > cap) {
    throw PreconditionError("n exceeds the exact-mode cap of " + std::to_string(cap) +
                            "; use Monte Carlo");
  }
  std::vector<unsigned long long> per_length(static_cast<size_t>(n), 0);
  unsigned long long total = 0;
  std::vector<int> values(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) values[static_cast<size_t>(i)] = i + 1;
  do {
    const auto prof = profile(Permutation(values));
    total += static_cast<unsigned long long>(prof.phi);
    for (int k = 1; k <= n; ++k) {
      per_length[static_cast<size_t>(k) - 1] +=
          static_cast<unsigned long long>(prof.x[static_cast<size_t>(k) - 1]);
    }
  } while (std::next_permutation(values.begin(), values.end()));

  const unsigned long long den = factorial_u64(n);
  ExactExpectation out;
  out.n = n;
  out.value = Rational{total, den};
  out.per_length.reserve(static_cast<size_t>(n));
  for (int k = 1; k <= n; ++k) {
    out.per_length.push_back(Rational{per_length[static_cast<size_t>(k) - 1], den});
  }
  return out;
}

McExpectation mc_expected_phi(int n, long long samples, std::uint64_t seed,
                              int threads, bool per_length) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (samples < 2) throw PreconditionError("samples must be >= 2");
  const size_t stats = per_length ? static_cast<size_t>(n) + 1 : 1;
  const auto sums = sharded_mc(
      n, samples, seed, threads, stats,
      [&](const Permutation& p, std::vector<long long>& values) {
        if (per_length) {
          const auto prof = profile(p);
          values[0] = prof.phi;
          std::copy(prof.x.begin(), prof.x.end(), values.begin() + 1);
        } else {
          values[0] = phi(p);
        }
      });

  McExpectation out;
  out.n = n;
  out.samples = samples;
  out.seed = seed;
  out.shards = static_cast<int>(std::min<long long>(threads, samples));
  out.phi = moments(sums.sum[0], sums.sum_sq[0], samples);
  if (per_length) {
    for (int k = 1; k <= n; ++k) {
      const auto i = static_cast<size_t>(k);
      out.per_length.push_back(moments(sums.sum[i], sums.sum_sq[i], samples));
    }
  }
  return out;
}

PairExpectation expected_pair_counts(int n, int k_min, long long samples,
                                     std::uint64_t seed, int threads) {
  if (n < 1) throw PreconditionError("n must be >= 1");
  if (k_min < 1 || k_min > n) throw PreconditionError("k_min out of range");
  if (samples < 2) throw PreconditionError("samples must be >= 2");
  const size_t lengths = static_cast<size_t>(n - k_min + 1);
  const auto sums = sharded_mc(
      n, samples, seed, threads, 2 * lengths,
      [&](const Permutation& p, std::vector<long long>& values) {
        const auto pc = pair_counts(p, k_min);
        std::copy(pc.z.begin(), pc.z.end(), values.begin());
        std::copy(pc.y.begin(), pc.y.end(),
                  values.begin() + static_cast<std::ptrdiff_t>(lengths));
      });

  PairExpectation out;
  out.n = n;
  out.k_min = k_min;
  out.samples = samples;
  out.seed = seed;
  out.shards = static_cast<int>(std::min<long long>(threads, samples));
  for (size_t i = 0; i < lengths; ++i) {
    out.z.push_back(moments(sums.sum[i], sums.sum_sq[i], samples));
    out.y.push_back(moments(sums.sum[lengths + i], sums.sum_sq[lengths + i], samples));
  }
  return out;
}

long long psi(const Permutation& p) {
  const int n = p.size();
  if (n > kPsiCap) {
    throw PreconditionError("n exceeds the 2^n subset-enumeration cap of " +
                            std::to_string(kPsiCap));
  }
  std::vector<std::unordered_set<std::uint64_t>> seen(static_cast<size_t>(n) + 1);
  std::vector<int> sub;
  sub.reserve(static_cast<size_t>(n));
  const auto& vals = p.values();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    sub.clear();
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) sub.push_back(vals[static_cast<size_t>(i)]);
    }
    seen[sub.size()].insert(window_rank(sub));
  }
  long long count = 1;  // the empty pattern
  for (const auto& s : seen) count += static_cast<long long>(s.size());
  return count;
}

PsiResult mc_expected_psi(int n, long long samples, std::uint64_t seed, int threads) {
  if (n < 1 || n > kPsiCap) throw PreconditionError("n must be in [1, 20]");
  if (samples < 2) throw PreconditionError("samples must be >= 2");
  const auto sums = sharded_mc(
      n, samples, seed, threads, 1,
      [&](const Permutation& p, std::vector<long long>& values) { values[0] = psi(p); });
  PsiResult out;
  out.n = n;
  out.samples = samples;
  out.seed = seed;
  out.shards = static_cast<int>(std::min<long long>(threads, samples));
  out.psi = moments(sums.sum[0], sums.sum_sq[0], samples);
  out.ratio_to_2n = out.psi.mean / std::pow(2.0, n);
  return out;
}

}  // namespace permpat
