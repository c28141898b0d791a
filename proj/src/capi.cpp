#include "permpat.h"

#include <cmath>
#include <cstdio>
#include <exception>
#include <string>

#include <json.hpp>

#include "bounds.hpp"
#include "consecutive.hpp"
#include "core.hpp"
#include "expectation.hpp"
#include "overlap.hpp"

using nlohmann::json;

struct permpat_result {
  permpat_status status = PERMPAT_OK;
  std::string json_text;
  std::string error;
};

extern "C" permpat_status permpat_result_status(const permpat_result* r) {
  return r ? r->status : PERMPAT_ERR_INTERNAL;
}

extern "C" const char* permpat_result_json(const permpat_result* r) {
  return (r && r->status == PERMPAT_OK) ? r->json_text.c_str() : nullptr;
}

extern "C" const char* permpat_result_error(const permpat_result* r) {
  return (r && r->status != PERMPAT_OK) ? r->error.c_str() : nullptr;
}

extern "C" void permpat_result_free(permpat_result* r) { delete r; }

namespace {

using namespace permpat;

// Exact counts stay exact in JSON: plain integer while faithfully
// representable as a double, decimal string beyond that.
json exact_count(unsigned long long v) {
  if (v <= (1ULL << 53)) return v;
  return std::to_string(v);
}

json rational_json(const Rational& r) {
  return json{{"num", exact_count(r.num)}, {"den", exact_count(r.den)}};
}

json moments_json(const McMoments& m) {
  return json{{"mean", m.mean}, {"stderr", m.stderr_est}};
}

json lemma_json(const LemmaReport& rep) {
  return json{{"lemma", rep.lemma}, {"bound", rep.bound}, {"pass", rep.pass}};
}

json overlap_json(const OverlapStat& stat) {
  json j{{"k", stat.k}, {"l", stat.l}};
  if (stat.exact) {
    j["mode"] = "exact";
    j["numerator"] = exact_count(stat.numerator);
    j["denominator"] = exact_count(stat.denominator);
    j["probability"] = stat.probability();
  } else {
    j["mode"] = "monte-carlo";
    j["estimate"] = stat.estimate;
    j["stderr"] = stat.stderr_est;
    j["samples"] = stat.samples;
  }
  j["check"] = lemma_json(lemma_report(stat));
  return j;
}

template <typename Fn>
permpat_result* wrap(const Fn& fn) {
  auto* r = new permpat_result;
  try {
    r->json_text = fn().dump();
  } catch (const PreconditionError& e) {
    r->status = PERMPAT_ERR_PRECONDITION;
    r->error = e.what();
  } catch (const std::exception& e) {
    r->status = PERMPAT_ERR_INTERNAL;
    r->error = e.what();
  } catch (...) {
    r->status = PERMPAT_ERR_INTERNAL;
    r->error = "unknown error";
  }
  return r;
}

std::string require_text(const char* text) {
  if (!text) throw PreconditionError("missing permutation text");
  return text;
}

std::string two_decimals(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct TableRow {
  unsigned long long bound;
  const char* ex;
};

// Reference values recomputed by permpat_reproduce.
const std::pair<int, TableRow> kReferenceTable[] = {
    {3, {4, "3.67"}},   {4, {6, "5.83"}},   {5, {9, "8.70"}},
    {6, {13, "12.33"}}, {7, {18, "16.78"}}, {8, {24, "22.08"}},
};

}  // namespace

extern "C" permpat_result* permpat_phi(const char* perm_text, int with_profile,
                                       int with_patterns, int with_pairs, int k_min) {
  return wrap([&] {
    const Permutation p = Permutation::parse(require_text(perm_text));
    const auto prof = profile(p);
    json j{{"n", prof.n}, {"phi", prof.phi}};
    if (with_profile) j["x"] = prof.x;
    if (with_patterns) {
      json patterns = json::array();
      for (const auto& pat : distinct_patterns(p)) patterns.push_back(pat.to_string());
      j["patterns"] = patterns;
    }
    if (with_pairs) {
      const auto pc = pair_counts(p, k_min);
      j["pairs"] = json{{"k_min", pc.k_min}, {"z", pc.z}, {"y", pc.y}};
    }
    return j;
  });
}

extern "C" permpat_result* permpat_bounds(int n, int with_asymptotics) {
  return wrap([&] {
    const auto table = bound_table(n);
    json j{{"n", table.n},
           {"terms", table.terms},
           {"total", exact_count(table.total)},
           {"crossover", table.crossover}};
    if (with_asymptotics) {
      const auto params = asymptotic_params(n);
      j["asymptotics"] = json{{"a_n", params.a_n},
                              {"k0", params.k0},
                              {"lower_bound", exact_count(params.lower_bound)}};
    }
    return j;
  });
}

extern "C" permpat_result* permpat_attain(int n, long long budget_ms) {
  return wrap([&] {
    if (budget_ms < 0) throw PreconditionError("budget must be >= 0");
    const auto table = bound_table(n);
    const auto witness = search_attaining(n, std::chrono::milliseconds(budget_ms));
    json j{{"n", n}, {"bound", exact_count(table.total)}, {"found", witness.has_value()}};
    if (witness) {
      j["witness"] = witness->to_string();
      j["phi"] = phi(*witness);
    }
    return j;
  });
}

extern "C" permpat_result* permpat_overlap_exact(int k, int l) {
  return wrap([&] { return overlap_json(exact_overlap_probability(k, l)); });
}

extern "C" permpat_result* permpat_overlap_mc(int k, int l, long long samples,
                                              uint64_t seed) {
  return wrap([&] {
    RandomSource rng(seed);
    json j = overlap_json(mc_overlap_probability(k, l, samples, rng));
    j["seed"] = seed;
    return j;
  });
}

extern "C" permpat_result* permpat_good(int k, int l) {
  return wrap([&] {
    const auto good = enumerate_good(k, l);
    json members = json::array();
    for (const auto& p : good.members) members.push_back(p.to_string());
    return json{{"k", good.k}, {"l", good.l},
                {"count", exact_count(good.count())}, {"members", members}};
  });
}

extern "C" permpat_result* permpat_probe(int d, int k_min, int k_max) {
  return wrap([&] {
    const auto table = good_count_probe(d, k_min, k_max);
    json rows = json::array();
    for (const auto& row : table.rows) {
      json r{{"k", row.k}, {"l", row.l}, {"computed", row.computed}};
      if (row.computed) r["g"] = exact_count(row.g);
      rows.push_back(r);
    }
    return json{{"d", table.d},
                {"rows", rows},
                {"differences", table.differences},
                {"next_difference_vanishes", table.next_difference_vanishes}};
  });
}

extern "C" permpat_result* permpat_bound_breakdown(int n, int k) {
  return wrap([&] {
    const auto b = bound_breakdown(n, k);
    return json{{"n", b.n},
                {"k", b.k},
                {"term_disjoint", b.term_disjoint},
                {"term_full_overlap", b.term_full_overlap},
                {"term_small_overlap", b.term_small_overlap},
                {"term_large_overlap", b.term_large_overlap},
                {"z_bound", b.z_bound},
                {"y_bound", b.y_bound}};
  });
}

extern "C" permpat_result* permpat_expect_exact(int n, int per_length, int cap) {
  return wrap([&] {
    const auto result = exact_expected_phi(n, cap > 0 ? cap : kDefaultExactCap);
    json j{{"n", result.n}, {"mode", "exact"}, {"value", rational_json(result.value)},
           {"rounded", two_decimals(result.value.value())}};
    if (per_length) {
      json per = json::array();
      for (const auto& r : result.per_length) per.push_back(rational_json(r));
      j["per_length"] = per;
    }
    return j;
  });
}

extern "C" permpat_result* permpat_expect_mc(int n, long long samples, uint64_t seed,
                                             int threads, int per_length) {
  return wrap([&] {
    const auto result = mc_expected_phi(n, samples, seed, threads, per_length != 0);
    json j{{"n", result.n},      {"mode", "monte-carlo"},
           {"mean", result.phi.mean}, {"stderr", result.phi.stderr_est},
           {"samples", result.samples}, {"seed", result.seed},
           {"shards", result.shards}};
    if (per_length) {
      json per = json::array();
      for (const auto& m : result.per_length) per.push_back(moments_json(m));
      j["per_length"] = per;
    }
    return j;
  });
}

extern "C" permpat_result* permpat_zexpect(int n, int k_min, long long samples,
                                           uint64_t seed, int threads) {
  return wrap([&] {
    const auto result = expected_pair_counts(n, k_min, samples, seed, threads);
    json z = json::array(), y = json::array();
    for (const auto& m : result.z) z.push_back(moments_json(m));
    for (const auto& m : result.y) y.push_back(moments_json(m));
    return json{{"n", result.n},       {"k_min", result.k_min},
                {"samples", result.samples}, {"seed", result.seed},
                {"shards", result.shards},   {"z", z},
                {"y", y}};
  });
}

extern "C" permpat_result* permpat_psi(const char* perm_text) {
  return wrap([&] {
    const Permutation p = Permutation::parse(require_text(perm_text));
    return json{{"n", p.size()}, {"psi", psi(p)}};
  });
}

extern "C" permpat_result* permpat_psi_expect(int n, long long samples, uint64_t seed,
                                              int threads) {
  return wrap([&] {
    const auto result = mc_expected_psi(n, samples, seed, threads);
    return json{{"n", result.n},
                {"mean", result.psi.mean},
                {"stderr", result.psi.stderr_est},
                {"samples", result.samples},
                {"seed", result.seed},
                {"shards", result.shards},
                {"ratio_to_2n", result.ratio_to_2n}};
  });
}

extern "C" permpat_result* permpat_reproduce(int max_n, long long budget_ms,
                                             const char* expected_json) {
  return wrap([&] {
    if (max_n < 3 || max_n > 10) throw PreconditionError("max_n must be in [3, 10]");
    if (budget_ms < 0) throw PreconditionError("budget must be >= 0");

    json expected = json::object();
    for (const auto& [n, row] : kReferenceTable) {
      expected[std::to_string(n)] = json{{"bound", row.bound}, {"ex", row.ex}};
    }
    if (expected_json) {
      const json overrides = json::parse(expected_json);
      for (const auto& [key, value] : overrides.items()) expected[key] = value;
    }

    bool all_ok = true;
    json rows = json::array();
    for (int n = 3; n <= max_n; ++n) {
      const auto table = bound_table(n);
      const auto witness = search_attaining(n, std::chrono::milliseconds(budget_ms));
      const auto ex = exact_expected_phi(n);
      const std::string rounded = two_decimals(ex.value.value());

      json row{{"n", n},
               {"bound", exact_count(table.total)},
               {"ex", rounded},
               {"attained", witness.has_value()}};
      if (witness) row["witness"] = witness->to_string();

      const auto key = std::to_string(n);
      bool row_ok = true;
      if (expected.contains(key)) {
        const auto& want = expected[key];
        row["bound_expected"] = want["bound"];
        row["ex_expected"] = want["ex"];
        row_ok = witness.has_value() &&
                 json(exact_count(table.total)) == want["bound"] &&
                 rounded == want["ex"].get<std::string>();
      }
      row["ok"] = row_ok;
      all_ok = all_ok && row_ok;
      rows.push_back(row);
    }
    return json{{"max_n", max_n}, {"rows", rows}, {"ok", all_ok}};
  });
}
