#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "commands.hpp"
#include "flipbench/error.hpp"

#include <set>

using namespace flipbench::cli;

namespace {

RunConfig config(std::string command) {
  RunConfig cfg;
  cfg.command = std::move(command);
  return cfg;
}

int exit_code(const Json& report) { return report.at("summary").at("exit_code").get<int>(); }

}  // namespace

TEST_CASE("field-check over finite fields") {
  RunConfig cfg = config("field-check");
  cfg.max_q = 27;
  cfg.group = "psl2";
  const Json r = run(cfg);
  CHECK(exit_code(r) == 0);
  std::set<std::uint32_t> yes;
  for (const Json& rec : r["records"]) {
    CHECK(rec["agreement"] == true);
    CHECK(rec["verdict"]["method"].is_string());
    if (rec["verdict"]["value"] == "yes") yes.insert(rec["q"].get<std::uint32_t>());
  }
  CHECK(yes == std::set<std::uint32_t>{3, 7, 11, 19, 23, 27});
}

TEST_CASE("field-check over Q and Q(sqrt -1)") {
  RunConfig cfg = config("field-check");
  cfg.field = "Q";
  cfg.sigma = "id";
  cfg.group = "psl2";
  Json r = run(cfg);
  REQUIRE(r["records"].size() == 1);
  CHECK(r["records"][0]["verdict"]["value"] == "no");
  CHECK(r["records"][0]["counterexample"] == "2");

  cfg.field = "Q(sqrt:-1)";
  cfg.sigma = "conj";
  r = run(cfg);
  CHECK(r["records"][0]["verdict"]["value"] == "no");
  CHECK(r["records"][0]["counterexample"] == "3");
  CHECK(r["records"][0]["agreement"].is_null());
}

TEST_CASE("flip-sweep") {
  RunConfig cfg = config("flip-sweep");
  cfg.q = 8;
  Json r = run(cfg);
  CHECK(exit_code(r) == 0);
  for (const Json& rec : r["records"]) CHECK(rec["oracle"]["value"] == "no");

  cfg.q = 9;
  cfg.sigma = "frob^1";
  r = run(cfg);
  CHECK(r["records"].size() == 4);
  for (const Json& rec : r["records"]) CHECK(rec["criterion"]["value"] == "no");

  RunConfig sweep13 = config("flip-sweep");
  sweep13.max_q = 13;
  const Json a = run(sweep13);
  CHECK(a["summary"]["disagreements"] == 0);
  CHECK(a.dump(2) == run(sweep13).dump(2));
  CHECK_FALSE(a["records"][0].contains("timing_ms"));
}

TEST_CASE("moufang, classify, quat, product-demo, factorize") {
  RunConfig m = config("moufang");
  m.q = 7;
  m.verify_all = true;
  const Json rm = run(m);
  CHECK(exit_code(rm) == 0);
  CHECK(rm["records"].size() == 18);

  RunConfig c = config("classify");
  c.q = 9;
  const Json rc = run(c);
  CHECK(rc["records"][0]["agreement"] == true);
  CHECK(rc["records"][0]["predicted"].size() == rc["records"][0]["observed"].size());

  RunConfig quat = config("quat");
  quat.samples = 500;
  quat.seed = 1;
  const Json rq = run(quat);
  CHECK(exit_code(rq) == 0);
  CHECK(rq["records"][1]["check"] == "dieudonne_multiplicative");
  CHECK(rq["records"][1]["passed"] == 500);
  CHECK(rq["records"][1]["total"] == 500);
  CHECK(rq["summary"]["condition_examples"][1]["nrd"] == "5");

  RunConfig d = config("product-demo");
  d.q = 5;
  const Json rd = run(d);
  CHECK(exit_code(rd) == 0);
  CHECK(rd["records"][0]["status"] == "expected-negative");
  CHECK(rd["records"][0]["local_to_global"]["global_transitive"] == false);

  RunConfig f = config("factorize");
  f.q = 7;
  f.group = "psl2";
  f.matrix = "[[2,0],[0,4]]";
  const Json rf = run(f);
  CHECK(exit_code(rf) == 0);
  CHECK(rf["records"][0]["factorization"]["recomposes"] == true);
}

TEST_CASE("config validation and cache keys") {
  RunConfig bad = config("flip-sweep");
  bad.q = 6;
  CHECK_THROWS_AS(run(bad), flipbench::Error);
  RunConfig big = config("flip-sweep");
  big.max_q = 31;
  big.max_group_order = 1000;
  CHECK_THROWS_AS(run(big), flipbench::Error);
  CHECK_THROWS_AS(run(config("nonsense")), flipbench::Error);

  RunConfig a = config("quat"), b = config("quat");
  CHECK(config_key(a) == config_key(b));
  b.seed = 2;
  CHECK(config_key(a) != config_key(b));
  CHECK(config_key(a).size() == 16);
}
