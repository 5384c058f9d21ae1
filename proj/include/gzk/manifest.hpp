#pragma once

#include <chrono>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace gzk {

inline constexpr const char* version_string = "gzk 1.0.0";

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Record of one CLI run, written as manifest.json in the run directory.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  std::map<std::string, std::string> config;  // resolved values as text
  std::uint64_t seed = 0;
  std::string version = version_string;
  std::string started;
  std::string finished;
  std::vector<std::string> outputs;
  std::string verdict;

  nlohmann::json to_json() const {
    return {{"command", command}, {"argv", argv},       {"config", config},     {"seed", seed},
            {"version", version}, {"started", started}, {"finished", finished}, {"outputs", outputs},
            {"verdict", verdict}};
  }

  static RunManifest from_json(const nlohmann::json& j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.at("config").get<std::map<std::string, std::string>>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    m.started = j.at("started").get<std::string>();
    m.finished = j.at("finished").get<std::string>();
    m.outputs = j.at("outputs").get<std::vector<std::string>>();
    m.verdict = j.value("verdict", std::string{});
    return m;
  }

  void write(const std::filesystem::path& dir) const {
    std::ofstream out(dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << to_json().dump(2) << "\n";
  }

  static RunManifest read(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    return from_json(nlohmann::json::parse(in));
  }
};

}  // namespace gzk
