// One PASS/FAIL line per acceptance criterion.
#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include <omp.h>

#include "tamefiber/cli/cli.hpp"
#include "tamefiber/dlcomb/dlcomb.hpp"

using namespace tamefiber;
using cli::Report;
using cli::RunConfig;

namespace {

RunConfig config(unsigned n, std::uint64_t q, std::uint64_t ell = 0, unsigned a = 2)
{
  RunConfig c;
  c.n = n;
  c.q = q;
  c.ell = ell;
  c.a = a;
  return c;
}

std::string failures;

bool passes(const Report& r)
{
  if (!r.pass())
    for (const auto& rec : r.records)
      if (!rec.pass)
        failures += r.command + ": " + rec.name + " expected " + rec.expected.dump() + " actual " + rec.actual.dump() +
                    "; ";
  return r.pass();
}

const cli::Record* find(const Report& r, const std::string& name)
{
  for (const auto& rec : r.records)
    if (rec.name == name)
      return &rec;
  return nullptr;
}

bool criterion1()
{
  bool ok = true;
  for (auto [q, n] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {4, 2}, {5, 2}})
    ok = passes(cli::run_command("bqn", "basis", config(n, q))) && ok;
  return ok;
}

bool criterion2()
{
  bool ok = true;
  for (auto [n, q, value] : std::vector<std::tuple<unsigned, std::uint64_t, long long>>{
           {2, 2, 2}, {2, 3, 6}, {3, 2, 4}, {2, 4, 12}, {2, 5, 20}}) {
    for (const char* sub : {"classes", "gg"}) {
      const auto r = cli::run_command("group", sub, config(n, q));
      ok = passes(r) && ok;
      for (const auto& rec : r.records)
        ok = ok && rec.actual == value;
    }
  }
  return ok;
}

bool criterion3()
{
  bool ok = true;
  for (auto [n, q] : std::vector<std::pair<unsigned, std::uint64_t>>{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {3, 2}, {3, 3}})
    ok = passes(cli::run_command("dl", "norm", config(n, q))) && ok;
  return ok;
}

bool criterion4()
{
  bool ok = true;
  for (std::uint64_t q : {2u, 3u}) {
    ok = passes(cli::run_command("group", "homdim", config(2, q))) && ok;
    // engine side: <Gamma, R(e, s)> = 1 for every torus character
    for (std::uint64_t a = 0; a + 1 < q; ++a)
      for (std::uint64_t b = 0; b + 1 < q; ++b) {
        const dlcomb::DLPair pr{dlcomb::identity_perm(2), {{a, q - 1}, {b, q - 1}}};
        if (dlcomb::gg_dl_pairing(pr, q) != 1) {
          failures += "engine <Gamma, R(e, s)> != 1; ";
          ok = false;
        }
      }
  }
  return ok;
}

bool criterion5()
{
  bool ok = passes(cli::run_command("defo", "roundtrip", config(2, 3, 2, 2)));
  Report deg;
  deg.command = "degree-d";
  cli::checks::degree_d_roundtrip(deg, config(2, 2, 7, 3), 1000);
  ok = passes(deg) && ok;
  return ok && deg.records.size() == 2 && deg.records[0].actual == 1000;
}

bool criterion6()
{
  const auto r = cli::run_command("defo", "probe", config(2, 3, 2, 2));
  const auto* lo = find(r, "full lifts (min)");
  const auto* hi = find(r, "full lifts (max)");
  return passes(r) && lo && hi && lo->expected == 16 && lo->actual == 16 && hi->actual == 16;
}

bool criterion7()
{
  const auto r = cli::run_command("bm", "check", config(2, 3, 2, 2));
  std::size_t squares = 0, lattices = 0, thetas = 0;
  for (const auto& rec : r.records) {
    squares += rec.name.rfind("red(cyc) ", 0) == 0 ? 1 : 0;
    lattices += rec.name.rfind("lattice independence ", 0) == 0 ? 1 : 0;
    thetas += rec.name.rfind("theta dimension ", 0) == 0 ? 1 : 0;
  }
  return passes(r) && r.details["fiber"].size() == 6 && squares == 6 && lattices > 0 && thetas > 0;
}

bool criterion8()
{
  bool ok = true;
  for (const auto& [g, s, c] : std::vector<std::tuple<std::string, std::string, RunConfig>>{
           {"bm", "check", config(2, 3, 2)},
           {"defo", "probe", config(2, 3, 2)},
           {"dl", "mult", config(3, 3)},
           {"group", "gg", config(2, 4)}}) {
    std::string first;
    for (int threads : {1, 2, 4, 1}) {
      omp_set_num_threads(threads);
      const auto text = cli::render(cli::run_command(g, s, c), "json");
      if (first.empty())
        first = text;
      else if (text != first) {
        failures += g + " " + s + " output differs at " + std::to_string(threads) + " threads; ";
        ok = false;
      }
    }
  }
  omp_set_num_threads(1);
  return ok;
}

} // namespace

int main()
{
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<bool()> run;
  };
  const std::vector<Criterion> all{
      {"rank identity and nonsingular evaluation pairing", 30, criterion1},
      {"semisimple classes = q-stable orbits = basis = Gelfand-Graev self-pairing", 60, criterion2},
      {"pi_G(s) norms and cuspidal support pairings", 0, criterion3},
      {"<Ind_U psi, Ind_B theta> = 1 by brute force and in the engine", 0, criterion4},
      {"normalization, Hensel, Sigma-in-Levi and degree-d round trips", 300, criterion5},
      {"formal smoothness probe: uniform 2^4 lifts", 0, criterion6},
      {"local commuting square and Theta oracle", 300, criterion7},
      {"byte-identical JSON across thread counts", 0, criterion8}};
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    failures.clear();
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = all[i].run();
    } catch (const std::exception& e) {
      failures += std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (all[i].limit_s > 0 && secs > all[i].limit_s) {
      ok = false;
      failures += "over the time limit; ";
    }
    std::cout << "criterion " << i + 1 << ": " << (ok ? "PASS" : "FAIL") << "  " << all[i].name << "  ("
              << static_cast<long>(secs * 1000) << " ms)";
    if (!ok)
      std::cout << "  " << failures;
    std::cout << "\n";
    failed += ok ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
