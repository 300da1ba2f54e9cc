#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace tamefiber::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "tamefiber/1";

struct RunConfig {
  unsigned n = 2;
  std::uint64_t q = 2;
  std::uint64_t ell = 0;  ///< 0: not given
  std::optional<unsigned> f;
  unsigned e = 1;
  unsigned a = 2;
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::uint64_t seed = 1;
  std::string format = "json";
};

/// Bad flags or a configuration outside the supported range (exit code 2).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// q a prime power, ell prime with ell not dividing q when given, budgets positive.
void validate(const RunConfig& cfg);
/// Throws ConfigError if ell was not given.
std::uint64_t require_ell(const RunConfig& cfg);

struct Record {
  std::string name;
  std::string identity;
  Json expected;
  Json actual;
  bool pass = false;
};

struct Report {
  std::string command;
  RunConfig config;
  std::vector<Record> records;
  Json details = Json::object();

  /// pass = (expected == actual)
  void check(std::string name, std::string identity, Json expected, Json actual);
  bool pass() const;
};

/// Runs `group sub` (e.g. "bqn", "rank").  Throws ConfigError on an unknown
/// command or an invalid configuration.
Report run_command(const std::string& group, const std::string& sub, const RunConfig& cfg);

Json to_json(const Report& r);
std::string render(const Report& r, const std::string& format);

/// Command-line entry point: JSON to stdout, diagnostics and timing to stderr.
int main_entry(int argc, char** argv);

namespace checks {

/// Degree-d restriction round trip on `samples` seeded samples, r = 1, d = n.
/// Records nothing when no residue field of degree <= 6 has an orbit of size n.
void degree_d_roundtrip(Report& rep, const RunConfig& cfg, std::size_t samples);

} // namespace checks

} // namespace tamefiber::cli
