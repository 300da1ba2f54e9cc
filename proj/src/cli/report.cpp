#include <sstream>

#include "tamefiber/cli/cli.hpp"
#include "tamefiber/exactalg/integer.hpp"

namespace tamefiber::cli {

namespace {

bool is_prime_power(std::uint64_t q)
{
  if (q < 2)
    return false;
  std::uint64_t p = 2;
  while (p * p <= q && q % p != 0)
    ++p;
  if (q % p != 0)
    p = q;
  while (q % p == 0)
    q /= p;
  return q == 1;
}

Json config_json(const RunConfig& c)
{
  Json j;
  j["n"] = c.n;
  j["q"] = c.q;
  j["ell"] = c.ell == 0 ? Json(nullptr) : Json(c.ell);
  j["f"] = c.f ? Json(*c.f) : Json(nullptr);
  j["e"] = c.e;
  j["a"] = c.a;
  j["budget"] = c.budget;
  j["seed"] = c.seed;
  return j;
}

std::string cell(const Json& j)
{
  return j.is_string() ? j.get<std::string>() : j.dump();
}

} // namespace

void validate(const RunConfig& cfg)
{
  if (cfg.n == 0 || cfg.n > 8)
    throw ConfigError("n must be between 1 and 8");
  if (!is_prime_power(cfg.q))
    throw ConfigError("q must be a prime power");
  if (cfg.ell != 0) {
    if (!exactalg::is_prime_u64(cfg.ell))
      throw ConfigError("ell must be prime");
    if (cfg.q % cfg.ell == 0)
      throw ConfigError("ell must not divide q");
  }
  if (cfg.f && *cfg.f == 0)
    throw ConfigError("f must be positive");
  if (cfg.e == 0 || cfg.a == 0 || cfg.budget == 0)
    throw ConfigError("e, a and budget must be positive");
  if (cfg.format != "json" && cfg.format != "table")
    throw ConfigError("format must be json or table");
}

std::uint64_t require_ell(const RunConfig& cfg)
{
  if (cfg.ell == 0)
    throw ConfigError("this command needs --ell");
  return cfg.ell;
}

void Report::check(std::string name, std::string identity, Json expected, Json actual)
{
  Record r{std::move(name), std::move(identity), std::move(expected), std::move(actual), false};
  r.pass = r.expected == r.actual;
  records.push_back(std::move(r));
}

bool Report::pass() const
{
  for (const auto& r : records)
    if (!r.pass)
      return false;
  return !records.empty();
}

Json to_json(const Report& r)
{
  Json j;
  j["schema"] = kSchema;
  j["command"] = r.command;
  j["config"] = config_json(r.config);
  Json recs = Json::array();
  for (const auto& rec : r.records) {
    Json x;
    x["name"] = rec.name;
    x["identity"] = rec.identity;
    x["expected"] = rec.expected;
    x["actual"] = rec.actual;
    x["pass"] = rec.pass;
    recs.push_back(std::move(x));
  }
  j["records"] = std::move(recs);
  j["details"] = r.details;
  j["pass"] = r.pass();
  return j;
}

std::string render(const Report& r, const std::string& format)
{
  const Json j = to_json(r);
  if (format == "json")
    return j.dump(2) + "\n";
  std::ostringstream os;
  os << j["command"].get<std::string>() << "  " << j["config"].dump() << "\n";
  for (const auto& x : j["records"])
    os << (x["pass"].get<bool>() ? "PASS  " : "FAIL  ") << x["name"].get<std::string>()
       << "  expected=" << cell(x["expected"]) << "  actual=" << cell(x["actual"]) << "\n";
  os << (j["pass"].get<bool>() ? "all checks pass" : "some checks fail") << "\n";
  return os.str();
}

} // namespace tamefiber::cli
