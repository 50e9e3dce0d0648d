#include "altseq/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <system_error>

#include "altseq/random.hpp"

namespace altseq {

namespace {

std::string csv_field(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

bool Report::passed() const {
  for (const auto& c : checks) {
    if (!c.pass) return false;
  }
  return true;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

nlohmann::json to_json(const Check& c) {
  return {{"name", c.name},
          {"observed", c.observed},
          {"expected", c.expected},
          {"criterion", c.criterion},
          {"pass", c.pass}};
}

Check check_from_json(const nlohmann::json& j) {
  Check c;
  c.name = j.at("name").get<std::string>();
  c.observed = j.at("observed");
  c.expected = j.at("expected");
  c.criterion = j.at("criterion").get<std::string>();
  c.pass = j.at("pass").get<bool>();
  return c;
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {{"schema_version", kReportSchemaVersion},
          {"command", r.command},
          {"suite", r.suite},
          {"build_id", r.build_id},
          {"parameters", r.parameters},
          {"results", r.results},
          {"checks", checks},
          {"passed", r.passed()}};
}

Report report_from_json(const nlohmann::json& j) {
  if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
    throw std::invalid_argument("unsupported report schema_version");
  }
  Report r;
  r.command = j.at("command").get<std::string>();
  r.suite = j.at("suite").get<std::string>();
  r.build_id = j.at("build_id").get<std::string>();
  r.parameters = j.at("parameters");
  r.results = j.at("results");
  for (const auto& c : j.at("checks")) r.checks.push_back(check_from_json(c));
  return r;
}

nlohmann::json to_json(const SeedSpec& s) {
  return {{"master_seed", s.master_seed}, {"stream_index", s.stream_index}};
}

void write_checks_csv(std::ostream& out, const Report& r) {
  out << "schema_version,command,suite,check,observed,expected,criterion,pass\n";
  for (const auto& c : r.checks) {
    out << kReportSchemaVersion << ',' << csv_escape(r.command) << ','
        << csv_escape(r.suite) << ',' << csv_escape(c.name) << ','
        << csv_escape(csv_field(c.observed)) << ','
        << csv_escape(csv_field(c.expected)) << ','
        << csv_escape(c.criterion) << ',' << (c.pass ? "true" : "false")
        << '\n';
  }
}

void write_file_atomically(const std::string& path,
                           const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string());
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to " + path + " failed: " + ec.message());
  }
}

}  // namespace altseq
