#pragma once

// Uniform result container for the command-line surface.  A command
// fills in its parameters, a data payload, and a list of named checks;
// the report renders either as indented text or as JSON.  JSON output is
// byte-deterministic for identical inputs: keys are emitted in sorted
// order and nothing time- or host-dependent is included (wall time only
// ever appears in the text rendering).

#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hopfcrit/homology.hpp"

namespace hopfcrit {

struct Report {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json data = nlohmann::json::object();
  std::vector<CheckRecord> checks;
  bool pass = true;  // AND over checks

  void add_check(std::string name, bool ok, std::string detail = "") {
    checks.push_back(CheckRecord{std::move(name), ok, std::move(detail)});
    pass = pass && ok;
  }
};

inline nlohmann::json report_to_json(const Report& r) {
  nlohmann::json j;
  j["schema"] = "hopfcrit-report/1";
  j["command"] = r.command;
  j["params"] = r.params;
  j["data"] = r.data;
  nlohmann::json arr = nlohmann::json::array();
  for (const CheckRecord& c : r.checks)
    arr.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  j["checks"] = arr;
  j["pass"] = r.pass;
  return j;
}

namespace detail {

inline void render_json_lines(const nlohmann::json& j, const std::string& indent,
                              std::ostream& os) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.value().is_object() || it.value().is_array()) {
        const std::string compact = it.value().dump();
        if (compact.size() <= 72) {
          os << indent << it.key() << ": " << compact << "\n";
        } else {
          os << indent << it.key() << ":\n";
          render_json_lines(it.value(), indent + "  ", os);
        }
      } else {
        os << indent << it.key() << ": " << it.value().dump() << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& item : j) {
      const std::string compact = item.dump();
      if (item.is_object() || item.is_array()) {
        if (compact.size() <= 72) {
          os << indent << "- " << compact << "\n";
        } else {
          os << indent << "-\n";
          render_json_lines(item, indent + "  ", os);
        }
      } else {
        os << indent << "- " << compact << "\n";
      }
    }
  } else {
    os << indent << j.dump() << "\n";
  }
}

}  // namespace detail

/// Human-readable rendering; pass a nonnegative wall time to append it.
inline std::string render_text(const Report& r, double wall_seconds = -1.0) {
  std::ostringstream os;
  os << "== " << r.command << " ==\n";
  if (!r.params.empty()) {
    os << "parameters:\n";
    detail::render_json_lines(r.params, "  ", os);
  }
  if (!r.data.empty()) detail::render_json_lines(r.data, "", os);
  if (!r.checks.empty()) {
    os << "checks:\n";
    for (const CheckRecord& c : r.checks) {
      os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name;
      if (!c.detail.empty()) os << ": " << c.detail;
      os << "\n";
    }
  }
  os << "result: " << (r.pass ? "pass" : "FAIL");
  if (wall_seconds >= 0.0) {
    os << "  (" << wall_seconds << " s)";
  }
  os << "\n";
  return os.str();
}

}  // namespace hopfcrit
