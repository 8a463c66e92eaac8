#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hlrsk {

using Json = nlohmann::ordered_json;

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Machine-readable run summary.  Serialization is deterministic: fixed key
// order, no timestamps, no host data; wall-clock metadata goes to a ".meta"
// sidecar so identical runs produce byte-identical reports.
struct RunReport {
  std::string command;
  Json config = Json::object();
  std::vector<CheckLine> checks;
  Json payload = Json::object();
  bool allPassed() const;
};

Json reportToJson(const RunReport& r);
std::string reportToString(const RunReport& r);

void writeReportFile(const RunReport& r, const std::string& path);

}  // namespace hlrsk
