// Structured pass/fail reports emitted by the verification suites and the CLI.
//
// Conventions: big integers and rationals are serialized as decimal strings
// ("p/q" for rationals), never as floats; floats carry explicit CI fields.
// The timestamp is excluded from determinism guarantees.

#pragma once

#include <json.hpp>

#include <string>
#include <utility>
#include <vector>

namespace itmlab {

using json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool pass = false;
  std::string note;  // which mathematical statement this check mirrors
  json data = json::object();
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  Check& add(const std::string& name, bool pass, const std::string& note = "") {
    checks_.push_back(Check{name, pass, note, json::object()});
    return checks_.back();
  }

  bool pass() const {
    for (const auto& c : checks_)
      if (!c.pass) return false;
    return true;
  }

  const std::string& command() const { return command_; }
  const std::vector<Check>& checks() const { return checks_; }
  json& params() { return params_; }
  const json& params() const { return params_; }

  json to_json(bool with_timestamp = true) const;

 private:
  std::string command_;
  json params_ = json::object();
  std::vector<Check> checks_;
};

json report_to_json(const Report& r, bool with_timestamp);

}  // namespace itmlab
