#include "itmlab/report.hpp"

#include <chrono>
#include <ctime>

namespace itmlab {

static std::string now_utc() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json Report::to_json(bool with_timestamp) const {
  json j;
  j["schema_version"] = 1;
  j["command"] = command_;
  if (with_timestamp) j["timestamp"] = now_utc();
  j["params"] = params_;
  json checks = json::array();
  for (const auto& c : checks_) {
    json jc;
    jc["name"] = c.name;
    jc["pass"] = c.pass;
    if (!c.note.empty()) jc["note"] = c.note;
    if (!c.data.empty()) jc["data"] = c.data;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["pass"] = pass();
  return j;
}

json report_to_json(const Report& r, bool with_timestamp) { return r.to_json(with_timestamp); }

}  // namespace itmlab
