#include "hlrsk/report.hpp"

#include <chrono>
#include <fstream>
#include <stdexcept>

namespace hlrsk {

bool RunReport::allPassed() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

Json reportToJson(const RunReport& r) {
  Json j = Json::object();
  j["command"] = r.command;
  j["config"] = r.config;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    Json line = Json::object();
    line["name"] = c.name;
    line["pass"] = c.pass;
    if (!c.detail.empty()) line["detail"] = c.detail;
    checks.push_back(line);
  }
  j["checks"] = checks;
  j["all_passed"] = r.allPassed();
  j["payload"] = r.payload;
  return j;
}

std::string reportToString(const RunReport& r) {
  return reportToJson(r).dump(2) + "\n";
}

void writeReportFile(const RunReport& r, const std::string& path) {
  {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write report file: " + path);
    out << reportToString(r);
  }
  Json meta = Json::object();
  auto now = std::chrono::system_clock::now();
  meta["written_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          now.time_since_epoch())
          .count();
  std::ofstream m(path + ".meta", std::ios::binary);
  if (m) m << meta.dump(2) << "\n";
}

}  // namespace hlrsk
