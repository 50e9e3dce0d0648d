#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "altseq/exact.hpp"

namespace altseq {

namespace {

constexpr const char* kCsvHeader = "schema_version,n,k,length,count";

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

long long parse_int(const std::string& s, const char* what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw std::invalid_argument(std::string("bad ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

void write_tables_csv(std::ostream& out,
                      std::span<const LengthDistribution> tables) {
  out << kCsvHeader << '\n';
  for (const auto& t : tables) {
    for (const auto& [len, c] : t.counts) {
      out << kTableSchemaVersion << ',' << t.n << ',' << t.k << ',' << len
          << ',' << c.str() << '\n';
    }
  }
}

std::vector<LengthDistribution> read_tables_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("table CSV must start with header '" +
                                std::string(kCsvHeader) + "'");
  }
  std::vector<LengthDistribution> tables;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 5) {
      throw std::invalid_argument("row " + std::to_string(row) +
                                  ": expected 5 fields");
    }
    if (parse_int(f[0], "schema_version") != kTableSchemaVersion) {
      throw std::invalid_argument("row " + std::to_string(row) +
                                  ": unsupported schema_version " + f[0]);
    }
    const int n = static_cast<int>(parse_int(f[1], "n"));
    const Value k = parse_int(f[2], "k");
    const auto len = static_cast<std::size_t>(parse_int(f[3], "length"));
    BigInt count;
    try {
      count = BigInt(f[4]);
    } catch (const std::exception&) {
      throw std::invalid_argument("row " + std::to_string(row) +
                                  ": bad count '" + f[4] + "'");
    }
    if (tables.empty() || tables.back().n != n || tables.back().k != k) {
      tables.push_back(LengthDistribution{n, k, {}});
    }
    tables.back().counts[len] += count;
  }
  for (const auto& t : tables) t.check_total();
  return tables;
}

std::string tables_to_json(std::span<const LengthDistribution> tables) {
  nlohmann::json doc;
  doc["schema_version"] = kTableSchemaVersion;
  doc["tables"] = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json counts = nlohmann::json::object();
    for (const auto& [len, c] : t.counts) counts[std::to_string(len)] = c.str();
    doc["tables"].push_back({{"n", t.n}, {"k", t.k}, {"counts", counts}});
  }
  return doc.dump(2);
}

std::vector<LengthDistribution> tables_from_json(const std::string& text) {
  std::vector<LengthDistribution> tables;
  try {
    const auto doc = nlohmann::json::parse(text);
    if (doc.at("schema_version").get<int>() != kTableSchemaVersion) {
      throw std::invalid_argument("unsupported schema_version");
    }
    for (const auto& t : doc.at("tables")) {
      LengthDistribution d{t.at("n").get<int>(), t.at("k").get<Value>(), {}};
      for (const auto& [len, c] : t.at("counts").items()) {
        d.counts[static_cast<std::size_t>(std::stoul(len))] =
            BigInt(c.get<std::string>());
      }
      tables.push_back(std::move(d));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("table JSON: ") + e.what());
  }
  for (const auto& t : tables) t.check_total();
  return tables;
}

}  // namespace altseq
