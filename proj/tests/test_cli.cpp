// End-to-end checks of the installed CLI binary: output content, exit
// codes, and byte-identical reruns.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run(const std::string& args) {
  const std::string cmd = std::string(PERMPAT_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    result.stdout_text.append(buf.data(), got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("phi subcommand") {
  const auto r = run("phi --perm 1,4,3,2,5");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"phi\":9") != std::string::npos);

  const auto profile = run("phi --perm 1,4,3,2,5 --profile --patterns");
  CHECK(profile.stdout_text.find("\"x\":[1,2,3,2,1]") != std::string::npos);
  CHECK(profile.stdout_text.find("\"1,4,3,2,5\"") != std::string::npos);
}

TEST_CASE("bounds and overlap subcommands") {
  const auto b = run("bounds --n 8");
  CHECK(b.exit_code == 0);
  CHECK(b.stdout_text.find("\"total\":24") != std::string::npos);

  const auto o = run("overlap --k 3 --l 2 --exact");
  CHECK(o.exit_code == 0);
  CHECK(o.stdout_text.find("\"numerator\":2") != std::string::npos);
  CHECK(o.stdout_text.find("\"denominator\":24") != std::string::npos);
}

TEST_CASE("error exit codes") {
  CHECK(run("expect --n 100 --samples 0").exit_code == 2);   // precondition
  CHECK(run("expect --n 11 --exact").exit_code == 2);        // exact cap
  CHECK(run("overlap --k 6 --l 1 --exact").exit_code == 2);  // budget
  CHECK(run("phi --perm 1,2,2").exit_code == 2);             // invalid input
  CHECK(run("phi").exit_code == 2);                          // missing input
  CHECK(run("no-such-command").exit_code == 2);              // usage
  CHECK(run("bounds --n 5 --bogus-flag").exit_code == 2);
}

TEST_CASE("identical flags give byte-identical stdout") {
  const std::string cmd = "expect --n 6 --samples 5000 --seed 31 --threads 3";
  const auto a = run(cmd);
  const auto b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.stdout_text == b.stdout_text);
  CHECK(a.stdout_text.find("\"seed\":31") != std::string::npos);
}

TEST_CASE("csv output") {
  const auto r = run("--format csv expect --n 5 --exact --per-length");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("n,5") != std::string::npos);
  CHECK(r.stdout_text.find("index,per_length") != std::string::npos);
}

TEST_CASE("reproduce subcommand") {
  const auto r = run("reproduce --max-n 4 --budget-ms 10000");
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"ok\":true") != std::string::npos);
}

TEST_CASE("perm-file input emits one JSON document per line") {
  char path[] = "/tmp/permpat_test_XXXXXX";
  const int fd = mkstemp(path);
  REQUIRE(fd >= 0);
  FILE* f = fdopen(fd, "w");
  std::fputs("1,4,3,2,5\n2,1\n", f);
  std::fclose(f);
  const auto r = run(std::string("phi --perm-file ") + path);
  std::remove(path);
  CHECK(r.exit_code == 0);
  CHECK(r.stdout_text.find("\"phi\":9") != std::string::npos);
  CHECK(r.stdout_text.find("\"phi\":2") != std::string::npos);
}
