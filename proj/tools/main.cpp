// permpat command-line tool. Thin shell over the C API: parse flags, call
// the library, print JSON (or CSV) to stdout, diagnostics to stderr.
//
// Exit codes: 0 success, 2 precondition/budget/usage error, 1 internal error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "permpat.h"

namespace {

using nlohmann::json;

struct ResultDeleter {
  void operator()(permpat_result* r) const { permpat_result_free(r); }
};
using Result = std::unique_ptr<permpat_result, ResultDeleter>;

// CSV rendering: array-valued fields become one row per index, scalar fields
// one key,value row each.
void print_csv(const json& j) {
  std::vector<std::string> array_keys;
  size_t rows = 0;
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() && !value.empty() && !value.front().is_array()) {
      array_keys.push_back(key);
      rows = std::max(rows, value.size());
    }
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_array() || value.is_object()) continue;
    std::cout << key << ',' << value.dump() << '\n';
  }
  if (array_keys.empty()) return;
  std::cout << "index";
  for (const auto& key : array_keys) std::cout << ',' << key;
  std::cout << '\n';
  for (size_t i = 0; i < rows; ++i) {
    std::cout << i + 1;
    for (const auto& key : array_keys) {
      std::cout << ',';
      const auto& arr = j[key];
      if (i < arr.size()) {
        const auto& cell = arr[i];
        if (cell.is_object()) {
          // per-length stat records: emit mean/stderr or num/den pairs
          bool first = true;
          for (const auto& [_, v] : cell.items()) {
            if (!first) std::cout << ';';
            first = false;
            std::cout << v.dump();
          }
        } else {
          std::cout << cell.dump();
        }
      }
    }
    std::cout << '\n';
  }
}

int emit(Result result, const std::string& format) {
  const auto status = permpat_result_status(result.get());
  if (status != PERMPAT_OK) {
    std::cerr << "error: " << permpat_result_error(result.get()) << '\n';
    return status == PERMPAT_ERR_PRECONDITION ? 2 : 1;
  }
  const std::string text = permpat_result_json(result.get());
  if (format == "csv") {
    print_csv(json::parse(text));
  } else {
    std::cout << text << '\n';
  }
  return 0;
}

std::vector<std::string> read_perm_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--perm-file", "cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"consecutive permutation pattern statistics"};
  app.require_subcommand(1);

  std::string format = "json";
  std::uint64_t seed = 0;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", seed, "RNG seed (default 0; runs are reproducible)");
  app.add_option("--threads", threads, "worker count for Monte Carlo runs");

  std::string perm_text, perm_file;
  int n = 0, k = 0, l = 0, k_min = 1, k_max = 0, d = 1;
  long long samples = 0, budget_ms = 60000;
  bool with_profile = false, with_patterns = false, with_pairs = false;
  bool asymptotics = false, exact = false, per_length = false;
  int max_n = 8;

  auto add_perm_opts = [&](CLI::App* cmd) {
    cmd->add_option("--perm", perm_text, "permutation, e.g. \"1,4,3,2,5\"");
    cmd->add_option("--perm-file", perm_file, "file with one permutation per line");
  };

  auto* phi_cmd = app.add_subcommand("phi", "distinct consecutive pattern count");
  add_perm_opts(phi_cmd);
  phi_cmd->add_flag("--profile", with_profile, "include per-length counts X_k");
  phi_cmd->add_flag("--patterns", with_patterns, "list the distinct patterns");
  phi_cmd->add_flag("--pairs", with_pairs, "include Z_k / Y_k pair counts");
  phi_cmd->add_option("--kmin", k_min, "smallest length for --pairs");

  auto* bounds_cmd = app.add_subcommand("bounds", "B(n) bound table");
  bounds_cmd->add_option("--n", n, "permutation length")->required();
  bounds_cmd->add_flag("--asymptotics", asymptotics, "include a_n, k0, lower bound");

  auto* attain_cmd = app.add_subcommand("attain", "search for phi = B(n)");
  attain_cmd->add_option("--n", n, "permutation length")->required();
  attain_cmd->add_option("--budget-ms", budget_ms, "search budget in milliseconds");

  auto* overlap_cmd = app.add_subcommand("overlap", "window overlap probability");
  overlap_cmd->add_option("--k", k, "window length")->required();
  overlap_cmd->add_option("--l", l, "overlap size")->required();
  overlap_cmd->add_flag("--exact", exact, "exhaustive enumeration (2k-l <= 10)");
  overlap_cmd->add_option("--samples", samples, "Monte Carlo sample count");

  auto* good_cmd = app.add_subcommand("good", "enumerate l-good patterns");
  good_cmd->add_option("--k", k, "pattern length")->required();
  good_cmd->add_option("--l", l, "overlap size")->required();

  auto* probe_cmd = app.add_subcommand("probe", "G(k, k-d) finite differences");
  probe_cmd->add_option("--d", d, "fixed k-l difference")->required();
  probe_cmd->add_option("--kmin", k_min, "smallest k");
  probe_cmd->add_option("--kmax", k_max, "largest k")->required();

  auto* decomp_cmd = app.add_subcommand("bounddecomp", "E(Z) bound term breakdown");
  decomp_cmd->add_option("--n", n, "permutation length")->required();
  decomp_cmd->add_option("--k", k, "pattern length")->required();

  auto* expect_cmd = app.add_subcommand("expect", "E(phi) exact or Monte Carlo");
  expect_cmd->add_option("--n", n, "permutation length")->required();
  expect_cmd->add_flag("--exact", exact, "full S_n enumeration (n <= 10)");
  expect_cmd->add_option("--samples", samples, "Monte Carlo sample count");
  expect_cmd->add_flag("--per-length", per_length, "include per-length E(X_k)");

  auto* zexpect_cmd = app.add_subcommand("zexpect", "E(Z_k), E(Y_k) estimates");
  zexpect_cmd->add_option("--n", n, "permutation length")->required();
  zexpect_cmd->add_option("--kmin", k_min, "smallest length");
  zexpect_cmd->add_option("--samples", samples, "sample count")->required();

  auto* psi_cmd = app.add_subcommand("psi", "distinct subsequence patterns");
  add_perm_opts(psi_cmd);

  auto* psix_cmd = app.add_subcommand("psi-expect", "E(psi) Monte Carlo");
  psix_cmd->add_option("--n", n, "permutation length")->required();
  psix_cmd->add_option("--samples", samples, "sample count")->required();

  auto* repro_cmd = app.add_subcommand("reproduce", "recompute the reference table");
  repro_cmd->add_option("--max-n", max_n, "largest n (3..10)");
  repro_cmd->add_option("--budget-ms", budget_ms, "attainment budget per n");

  // global flags may appear before or after the subcommand
  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  auto for_each_perm = [&](auto call) -> int {
    if (!perm_file.empty()) {
      for (const auto& line : read_perm_lines(perm_file)) {
        if (int rc = emit(Result(call(line.c_str())), format); rc != 0) return rc;
      }
      return 0;
    }
    if (perm_text.empty()) {
      std::cerr << "error: provide --perm or --perm-file\n";
      return 2;
    }
    return emit(Result(call(perm_text.c_str())), format);
  };

  try {
    if (*phi_cmd) {
      return for_each_perm([&](const char* text) {
        return permpat_phi(text, with_profile, with_patterns, with_pairs, k_min);
      });
    }
    if (*bounds_cmd) return emit(Result(permpat_bounds(n, asymptotics)), format);
    if (*attain_cmd) return emit(Result(permpat_attain(n, budget_ms)), format);
    if (*overlap_cmd) {
      if (exact) return emit(Result(permpat_overlap_exact(k, l)), format);
      if (samples <= 0) {
        std::cerr << "error: pass --exact or --samples N\n";
        return 2;
      }
      return emit(Result(permpat_overlap_mc(k, l, samples, seed)), format);
    }
    if (*good_cmd) return emit(Result(permpat_good(k, l)), format);
    if (*probe_cmd) return emit(Result(permpat_probe(d, k_min, k_max)), format);
    if (*decomp_cmd) return emit(Result(permpat_bound_breakdown(n, k)), format);
    if (*expect_cmd) {
      if (exact) return emit(Result(permpat_expect_exact(n, per_length, 0)), format);
      return emit(Result(permpat_expect_mc(n, samples, seed, threads, per_length)),
                  format);
    }
    if (*zexpect_cmd) {
      return emit(Result(permpat_zexpect(n, k_min, samples, seed, threads)), format);
    }
    if (*psi_cmd) {
      return for_each_perm([&](const char* text) { return permpat_psi(text); });
    }
    if (*psix_cmd) {
      return emit(Result(permpat_psi_expect(n, samples, seed, threads)), format);
    }
    if (*repro_cmd) {
      Result result(permpat_reproduce(max_n, budget_ms, nullptr));
      if (permpat_result_status(result.get()) != PERMPAT_OK) {
        return emit(std::move(result), format);
      }
      const json j = json::parse(permpat_result_json(result.get()));
      if (format == "csv") {
        print_csv(j);
      } else {
        std::cout << j.dump() << '\n';
      }
      // nonzero exit when the recomputed table disagrees with the reference
      return j["ok"].get<bool>() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
