#include "doctest.h"

#include <omp.h>

#include "tamefiber/cli/cli.hpp"

using namespace tamefiber::cli;

namespace {

int run(std::vector<std::string> args)
{
  args.insert(args.begin(), "tamefiber");
  std::vector<char*> argv;
  for (auto& a : args)
    argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

RunConfig config(unsigned n, std::uint64_t q, std::uint64_t ell = 0)
{
  RunConfig c;
  c.n = n;
  c.q = q;
  c.ell = ell;
  return c;
}

} // namespace

TEST_CASE("config validation")
{
  CHECK_NOTHROW(validate(config(2, 3, 2)));
  CHECK_THROWS_AS(validate(config(2, 6)), ConfigError);
  CHECK_THROWS_AS(validate(config(2, 3, 3)), ConfigError);
  CHECK_THROWS_AS(validate(config(2, 4, 4)), ConfigError);
  CHECK_THROWS_AS(validate(config(0, 3)), ConfigError);
  auto c = config(2, 3);
  c.budget = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c = config(2, 3);
  c.format = "xml";
  CHECK_THROWS_AS(validate(c), ConfigError);
  CHECK_THROWS_AS(run_command("bm", "check", config(2, 3)), ConfigError);
  CHECK_THROWS_AS(run_command("nope", "x", config(2, 3)), ConfigError);
  CHECK_THROWS_AS(run_command("bqn", "x", config(2, 3)), ConfigError);
}

TEST_CASE("documented examples")
{
  const auto r = run_command("bqn", "rank", config(2, 3));
  REQUIRE(r.records.size() == 1);
  CHECK(r.records[0].expected == 6);
  CHECK(r.records[0].actual == 6);
  CHECK(r.pass());

  const auto g = run_command("group", "gg", config(3, 2));
  for (const auto& rec : g.records) {
    CHECK(rec.expected == 4);
    CHECK(rec.actual == 4);
  }
  CHECK(run_command("bm", "check", config(2, 3, 2)).pass());

  const auto j = to_json(r);
  CHECK(j["schema"] == "tamefiber/1");
  CHECK(j["records"][0]["pass"] == true);
  CHECK(render(r, "table").find("PASS") != std::string::npos);
}

TEST_CASE("a failing record fails the report")
{
  Report r;
  r.check("x", "x", 1, 1);
  CHECK(r.pass());
  r.check("y", "y", 1, 2);
  CHECK_FALSE(r.pass());
  CHECK_FALSE(Report{}.pass());
}

TEST_CASE("exit codes")
{
  CHECK(run({"bqn", "rank", "--q", "3", "--n", "2"}) == 0);
  CHECK(run({"bqn", "rank", "--q", "6", "--n", "2"}) == 2);
  CHECK(run({"bqn", "rank", "--q", "3"}) == 2);
  CHECK(run({"bm", "check", "--q", "3", "--n", "2"}) == 2);
  CHECK(run({"params", "fiber", "--q", "3", "--n", "2", "--ell", "3"}) == 2);
  CHECK(run({"bogus"}) == 2);
  CHECK(run({"defo", "probe", "--q", "3", "--n", "2", "--ell", "2", "--budget", "10"}) == 2);
  CHECK(run({"dl", "gg", "--q", "3", "--n", "2", "--format", "table"}) == 0);
}

TEST_CASE("JSON is independent of the thread count")
{
  for (const auto& [g, s, c] : std::vector<std::tuple<std::string, std::string, RunConfig>>{
           {"dl", "mult", config(2, 4)}, {"defo", "probe", config(2, 3, 2)}, {"group", "classes", config(2, 3)}}) {
    omp_set_num_threads(1);
    const auto a = to_json(run_command(g, s, c)).dump();
    omp_set_num_threads(3);
    const auto b = to_json(run_command(g, s, c)).dump();
    const auto b2 = to_json(run_command(g, s, c)).dump();
    CHECK(a == b);
    CHECK(b == b2);
  }
}
