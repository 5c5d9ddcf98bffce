#pragma once

#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace covchan {

// Structured result of one CLI invocation. The JSON form round-trips;
// the human-readable rendering is produced by the CLI layer.
struct AnalysisReport {
  std::string command;
  std::string inputs_digest;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::object();
  nlohmann::ordered_json capacities = nlohmann::ordered_json::object();
  std::vector<std::string> diagnostics;

  bool operator==(const AnalysisReport&) const = default;
};

std::string serialize_report(const AnalysisReport& report);
AnalysisReport parse_report(const std::string& text);

// FNV-1a over the command's inputs (file contents and arguments).
std::string digest(std::span<const std::string> parts);

}  // namespace covchan
