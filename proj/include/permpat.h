/* permpat — consecutive permutation pattern statistics.
 *
 * C interface to the shared library. Every operation returns an opaque
 * result handle carrying either a JSON document or an error message;
 * free it with permpat_result_free().
 */
#ifndef PERMPAT_H
#define PERMPAT_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  PERMPAT_OK = 0,
  PERMPAT_ERR_INTERNAL = 1,     /* unexpected failure */
  PERMPAT_ERR_PRECONDITION = 2  /* bad argument or enumeration budget exceeded */
} permpat_status;

typedef struct permpat_result permpat_result;

permpat_status permpat_result_status(const permpat_result* r);
/* JSON document on success, NULL otherwise. Owned by the result. */
const char* permpat_result_json(const permpat_result* r);
/* Error message on failure, NULL on success. Owned by the result. */
const char* permpat_result_error(const permpat_result* r);
void permpat_result_free(permpat_result* r);

/* phi / profile / pair counts of one permutation. perm_text is one line of
 * 1-based values separated by commas or whitespace, e.g. "1,4,3,2,5". */
permpat_result* permpat_phi(const char* perm_text, int with_profile,
                            int with_patterns, int with_pairs, int k_min);

/* B(n) = sum min(n-k+1, k!); optional a_n / k0 / asymptotic lower bound. */
permpat_result* permpat_bounds(int n, int with_asymptotics);

/* Search for a permutation attaining phi = B(n) within the budget. */
permpat_result* permpat_attain(int n, long long budget_ms);

/* P(two length-k windows overlapping in l positions are order isomorphic),
 * by exhaustive enumeration of S_{2k-l} (2k-l <= 10) or by Monte Carlo.
 * Both include the applicable lemma bound and a pass flag. */
permpat_result* permpat_overlap_exact(int k, int l);
permpat_result* permpat_overlap_mc(int k, int l, long long samples, uint64_t seed);

/* The l-good patterns of length k (2k-l <= 10). */
permpat_result* permpat_good(int k, int l);

/* G(k, k-d) over k in [k_min, k_max] with iterated finite differences. */
permpat_result* permpat_probe(int d, int k_min, int k_max);

/* Closed-form terms of the E(Z) decomposition at (n, k). */
permpat_result* permpat_bound_breakdown(int n, int k);

/* E(phi) exactly over S_n (n <= cap; cap <= 0 means the default of 10),
 * or by Monte Carlo. */
permpat_result* permpat_expect_exact(int n, int per_length, int cap);
permpat_result* permpat_expect_mc(int n, long long samples, uint64_t seed,
                                  int threads, int per_length);

/* Monte Carlo E(Z_k), E(Y_k) for k >= k_min. */
permpat_result* permpat_zexpect(int n, int k_min, long long samples,
                                uint64_t seed, int threads);

/* Distinct subsequence patterns (including the empty one), n <= 20. */
permpat_result* permpat_psi(const char* perm_text);
permpat_result* permpat_psi_expect(int n, long long samples, uint64_t seed,
                                   int threads);

/* Recompute B(n), an attaining permutation, and exact E(X) for n = 3..max_n
 * and compare against the reference table. expected_json may override the
 * embedded reference (object keyed by n, entries {"bound": int, "ex": "d.dd"});
 * pass NULL for the default. The result's JSON has "ok": false on any
 * disagreement. */
permpat_result* permpat_reproduce(int max_n, long long budget_ms,
                                  const char* expected_json);

#ifdef __cplusplus
}
#endif

#endif /* PERMPAT_H */
