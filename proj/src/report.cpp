#include "covchan/report.hpp"

#include <cstdint>

#include "covchan/rational.hpp"

namespace covchan {

std::string serialize_report(const AnalysisReport& report) {
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["inputs_digest"] = report.inputs_digest;
  j["verdicts"] = report.verdicts;
  j["witnesses"] = report.witnesses;
  j["capacities"] = report.capacities;
  j["diagnostics"] = report.diagnostics;
  return j.dump(2) + "\n";
}

AnalysisReport parse_report(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  AnalysisReport report;
  try {
    report.command = j.at("command").get<std::string>();
    report.inputs_digest = j.at("inputs_digest").get<std::string>();
    report.verdicts = j.at("verdicts");
    report.witnesses = j.at("witnesses");
    report.capacities = j.at("capacities");
    report.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return report;
}

std::string digest(std::span<const std::string> parts) {
  uint64_t hash = 1469598103934665603ull;
  auto mix = [&](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
    hash ^= 0xff;
    hash *= 1099511628211ull;
  };
  for (const auto& part : parts) mix(part);
  char buf[17];
  snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return std::string("fnv1a:") + buf;
}

}  // namespace covchan
