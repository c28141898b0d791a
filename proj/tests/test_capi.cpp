#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <memory>
#include <string>

#include <json.hpp>

#include "permpat.h"

using nlohmann::json;

namespace {

struct Deleter {
  void operator()(permpat_result* r) const { permpat_result_free(r); }
};
using Result = std::unique_ptr<permpat_result, Deleter>;

json parse_ok(const Result& r) {
  REQUIRE(permpat_result_status(r.get()) == PERMPAT_OK);
  REQUIRE(permpat_result_json(r.get()) != nullptr);
  CHECK(permpat_result_error(r.get()) == nullptr);
  return json::parse(permpat_result_json(r.get()));
}

}  // namespace

TEST_CASE("phi endpoint") {
  Result r(permpat_phi("1,4,3,2,5", 1, 1, 1, 2));
  const json j = parse_ok(r);
  CHECK(j["n"] == 5);
  CHECK(j["phi"] == 9);
  CHECK(j["x"] == json::array({1, 2, 3, 2, 1}));
  CHECK(j["patterns"].size() == 9);
  CHECK(j["pairs"]["k_min"] == 2);
  CHECK(j["pairs"]["y"] == json::array({2, 0, 0, 0}));

  Result bad(permpat_phi("1,2,2", 0, 0, 0, 1));
  CHECK(permpat_result_status(bad.get()) == PERMPAT_ERR_PRECONDITION);
  CHECK(permpat_result_json(bad.get()) == nullptr);
  CHECK(std::string(permpat_result_error(bad.get())).find("repeated") !=
        std::string::npos);

  Result null_text(permpat_phi(nullptr, 0, 0, 0, 1));
  CHECK(permpat_result_status(null_text.get()) == PERMPAT_ERR_PRECONDITION);
}

TEST_CASE("bounds endpoint") {
  Result r(permpat_bounds(5, 1));
  const json j = parse_ok(r);
  CHECK(j["total"] == 9);
  CHECK(j["terms"] == json::array({1, 2, 3, 2, 1}));
  CHECK(j["crossover"] == 3);
  CHECK(j["asymptotics"]["k0"] == 322);  // ceil(200 ln 5)

  Result bad(permpat_bounds(0, 0));
  CHECK(permpat_result_status(bad.get()) == PERMPAT_ERR_PRECONDITION);
}

TEST_CASE("attain endpoint") {
  Result r(permpat_attain(5, 10000));
  const json j = parse_ok(r);
  CHECK(j["found"] == true);
  CHECK(j["phi"] == 9);
  CHECK(j["bound"] == 9);
}

TEST_CASE("overlap endpoints") {
  Result exact(permpat_overlap_exact(3, 2));
  const json je = parse_ok(exact);
  CHECK(je["numerator"] == 2);
  CHECK(je["denominator"] == 24);
  CHECK(je["check"]["lemma"] == "max-overlap");
  CHECK(je["check"]["pass"] == true);

  Result budget(permpat_overlap_exact(6, 1));
  CHECK(permpat_result_status(budget.get()) == PERMPAT_ERR_PRECONDITION);
  CHECK(std::string(permpat_result_error(budget.get())).find("use MC") !=
        std::string::npos);

  Result mc1(permpat_overlap_mc(3, 2, 50000, 9));
  Result mc2(permpat_overlap_mc(3, 2, 50000, 9));
  CHECK(std::string(permpat_result_json(mc1.get())) ==
        std::string(permpat_result_json(mc2.get())));
  const json jm = parse_ok(mc1);
  CHECK(jm["mode"] == "monte-carlo");
  CHECK(jm["samples"] == 50000);
}

TEST_CASE("good and probe endpoints") {
  Result good(permpat_good(3, 2));
  const json jg = parse_ok(good);
  CHECK(jg["count"] == 2);
  CHECK(jg["members"] == json::array({"1,2,3", "3,2,1"}));

  Result probe(permpat_probe(1, 3, 6));
  const json jp = parse_ok(probe);
  CHECK(jp["rows"].size() == 4);
  CHECK(jp["rows"][0]["g"] == 2);
  CHECK(jp["next_difference_vanishes"] == true);
}

TEST_CASE("breakdown endpoint") {
  Result r(permpat_bound_breakdown(10, 5));
  const json j = parse_ok(r);
  CHECK(j["term_disjoint"].get<double>() == doctest::Approx(1000.0 / 120.0));
}

TEST_CASE("expect endpoints") {
  Result exact(permpat_expect_exact(3, 1, 0));
  const json je = parse_ok(exact);
  CHECK(je["value"]["num"] == 22);
  CHECK(je["value"]["den"] == 6);
  CHECK(je["rounded"] == "3.67");
  CHECK(je["per_length"].size() == 3);

  Result cap(permpat_expect_exact(11, 0, 0));
  CHECK(permpat_result_status(cap.get()) == PERMPAT_ERR_PRECONDITION);

  Result mc(permpat_expect_mc(4, 0, 0, 1, 0));
  CHECK(permpat_result_status(mc.get()) == PERMPAT_ERR_PRECONDITION);

  Result mc1(permpat_expect_mc(5, 2000, 42, 2, 1));
  Result mc2(permpat_expect_mc(5, 2000, 42, 2, 1));
  CHECK(std::string(permpat_result_json(mc1.get())) ==
        std::string(permpat_result_json(mc2.get())));
}

TEST_CASE("zexpect and psi endpoints") {
  Result z(permpat_zexpect(6, 2, 2000, 1, 2));
  const json jz = parse_ok(z);
  CHECK(jz["z"].size() == 5);
  CHECK(jz["y"].size() == 5);

  Result p(permpat_psi("2,1"));
  CHECK(parse_ok(p)["psi"] == 3);

  Result px(permpat_psi_expect(8, 100, 0, 2));
  const json jx = parse_ok(px);
  CHECK(jx["ratio_to_2n"].get<double>() > 0.0);
  CHECK(jx["ratio_to_2n"].get<double>() <= 1.0);
}

TEST_CASE("reproduce endpoint") {
  Result ok(permpat_reproduce(4, 10000, nullptr));
  const json j = parse_ok(ok);
  CHECK(j["ok"] == true);
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["bound"] == 4);
  CHECK(j["rows"][0]["ex"] == "3.67");

  // corrupted reference table: disagreement must be flagged
  Result bad(permpat_reproduce(3, 10000, R"({"3": {"bound": 5, "ex": "3.67"}})"));
  const json jb = parse_ok(bad);
  CHECK(jb["ok"] == false);
  CHECK(jb["rows"][0]["ok"] == false);

  Result range(permpat_reproduce(2, 1000, nullptr));
  CHECK(permpat_result_status(range.get()) == PERMPAT_ERR_PRECONDITION);
}
