// Machine-readable run reports shared by the verification suites and the
// CLI. Reports serialize to JSON (full) and CSV (one row per check), and a
// JSON report parses back to an identical in-memory value.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace altseq {

struct SeedSpec;

inline constexpr int kReportSchemaVersion = 1;

// One verdict: what was observed, what it was compared against, and the
// rule used ("exact", "within 4 SE", "chi2 <= critical", ...).
struct Check {
  std::string name;
  nlohmann::json observed;
  nlohmann::json expected;
  std::string criterion;
  bool pass = false;

  bool operator==(const Check&) const = default;
};

struct Report {
  std::string command;  // "exact", "mc", "verify", "oracle"
  std::string suite;    // verify suite name, empty otherwise
  std::string build_id;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json results = nlohmann::json::object();
  std::vector<Check> checks;

  bool passed() const;
  bool operator==(const Report&) const = default;
};

// Doubles go through JSON as numbers; non-finite values become the strings
// "inf", "-inf" and "nan".
nlohmann::json number(double v);

nlohmann::json to_json(const Check& c);
Check check_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SeedSpec& s);

// CSV: schema_version,command,suite,check,observed,expected,criterion,pass
void write_checks_csv(std::ostream& out, const Report& r);

// Renders a double with the shortest representation that round-trips.
std::string format_double(double v);

// Writes `contents` to `path` through a temporary file in the same
// directory followed by rename.
void write_file_atomically(const std::string& path,
                           const std::string& contents);

}  // namespace altseq
