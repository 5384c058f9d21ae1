#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gzk {

/// Raised when an experiment's inputs cannot support it; thrown before any
/// expensive work starts.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class VerdictStatus { pass, fail, report_only };

inline const char* to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return "pass";
    case VerdictStatus::fail: return "fail";
    case VerdictStatus::report_only: return "report-only";
  }
  return "?";
}

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
    out << "\n";
    char buf[64];
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        out << (i ? "," : "") << buf;
      }
      out << "\n";
    }
  }
};

/// Machine-readable outcome of one experiment: named numbers, named checks
/// and per-parameter tables. The status is fail if any check failed, pass if
/// all passed, report-only if the experiment asserts nothing.
struct ExperimentVerdict {
  std::string experiment;
  bool report_only = false;
  std::vector<std::pair<std::string, double>> numbers;
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::pair<std::string, std::string>> labels;
  std::vector<Table> tables;

  void add(const std::string& name, double v) { numbers.emplace_back(name, v); }
  void check(const std::string& name, bool ok) { checks.emplace_back(name, ok); }
  void label(const std::string& name, const std::string& v) { labels.emplace_back(name, v); }

  double number(const std::string& name) const {
    for (const auto& [k, v] : numbers) {
      if (k == name) return v;
    }
    throw std::out_of_range("verdict: no number " + name);
  }

  bool passed(const std::string& name) const {
    for (const auto& [k, v] : checks) {
      if (k == name) return v;
    }
    throw std::out_of_range("verdict: no check " + name);
  }

  VerdictStatus status() const {
    for (const auto& c : checks) {
      if (!c.second) return VerdictStatus::fail;
    }
    return report_only || checks.empty() ? VerdictStatus::report_only : VerdictStatus::pass;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["verdict"] = to_string(status());
    nlohmann::json nums = nlohmann::json::object();
    for (const auto& [k, v] : numbers) nums[k] = v;
    j["numbers"] = nums;
    nlohmann::json cs = nlohmann::json::object();
    for (const auto& [k, v] : checks) cs[k] = v ? "pass" : "fail";
    j["checks"] = cs;
    nlohmann::json ls = nlohmann::json::object();
    for (const auto& [k, v] : labels) ls[k] = v;
    j["labels"] = ls;
    return j;
  }

  /// verdict.json plus one CSV per table; returns the written paths.
  std::vector<std::string> write(const std::filesystem::path& dir) const {
    std::filesystem::create_directories(dir);
    std::vector<std::string> paths;
    const auto vpath = (dir / "verdict.json").string();
    std::ofstream out(vpath);
    if (!out) throw std::runtime_error("cannot open " + vpath);
    out << to_json().dump(2) << "\n";
    paths.push_back(vpath);
    for (const auto& t : tables) {
      const auto p = (dir / (t.name + ".csv")).string();
      t.write_csv(p);
      paths.push_back(p);
    }
    return paths;
  }
};

}  // namespace gzk
