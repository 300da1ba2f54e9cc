#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "CLI11.hpp"
#include "tamefiber/cli/cli.hpp"

namespace tamefiber::cli {

namespace {

void apply_thread_cap()
{
  if (const char* env = std::getenv("TAMEFIBER_THREADS")) {
    const int k = std::atoi(env);
    if (k > 0)
      omp_set_num_threads(k);
  }
}

void add_config_flags(CLI::App* app, RunConfig& cfg, std::optional<unsigned>& f)
{
  app->add_option("--n", cfg.n, "rank")->required();
  app->add_option("--q", cfg.q, "size of the finite field")->required();
  app->add_option("--ell", cfg.ell, "coefficient characteristic");
  app->add_option("--f", f, "Frobenius power (default: least large f)");
  app->add_option("--e", cfg.e, "residue degree");
  app->add_option("--a", cfg.a, "truncation length");
  app->add_option("--budget", cfg.budget, "enumeration budget");
  app->add_option("--seed", cfg.seed, "RNG seed");
  app->add_option("--format", cfg.format, "json or table");
}

} // namespace

int main_entry(int argc, char** argv)
{
  apply_thread_cap();
  CLI::App app{"tamefiber verification runs"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<unsigned> f;
  std::string group, sub;
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands{
      {"bqn", {"basis", "rank"}},
      {"params", {"enumerate", "fiber", "distinguished"}},
      {"dl", {"norm", "mult", "gg"}},
      {"group", {"classes", "gg", "homdim"}},
      {"defo", {"probe", "roundtrip"}},
      {"bm", {"check"}}};
  for (const auto& [g, subs] : commands) {
    auto* top = app.add_subcommand(g);
    top->require_subcommand(1);
    for (const auto& s : subs) {
      auto* leaf = top->add_subcommand(s);
      add_config_flags(leaf, cfg, f);
      leaf->callback([&group, &sub, g = g, s = s] {
        group = g;
        sub = s;
      });
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  cfg.f = f;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Report rep = run_command(group, sub, cfg);
    std::cout << render(rep, cfg.format);
    const auto ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << rep.command << ": " << ms << " ms, " << (rep.pass() ? "pass" : "FAIL") << "\n";
    return rep.pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

} // namespace tamefiber::cli
