#include "partcat/report.hpp"

#include <fstream>
#include <iostream>

#include "partcat/errors.hpp"

namespace partcat {

ReportBuilder::ReportBuilder(std::string command, nlohmann::json config)
    : command_(std::move(command)),
      config_(std::move(config)),
      payload_(nlohmann::json::object()),
      start_(std::chrono::steady_clock::now()) {}

std::string ReportBuilder::render(const std::string& format) const {
  const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start_)
                           .count();
  if (format == "json") {
    nlohmann::json doc = payload_;
    doc["tool"] = kToolName;
    doc["version"] = kToolVersion;
    doc["command"] = command_;
    doc["config"] = config_;
    doc["duration_ms"] = elapsed;
    return doc.dump(2) + "\n";
  }
  if (format != "text") throw UnknownName("unknown report format: " + format);
  std::string out = std::string(kToolName) + " " + kToolVersion + "  command=" + command_ +
                    "  duration_ms=" + std::to_string(elapsed) + "\n" +
                    "config: " + config_.dump() + "\n";
  out += text_.empty() ? payload_.dump(2) + "\n" : text_;
  if (!out.empty() && out.back() != '\n') out += '\n';
  return out;
}

void deliver_report(const std::string& rendered, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << rendered;
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw Error("cannot write report file: " + out_path);
  file << rendered;
}

}  // namespace partcat
