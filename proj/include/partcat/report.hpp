#pragma once

#include <chrono>
#include <string>

#include "json.hpp"

namespace partcat {

inline constexpr const char* kToolName = "partcat";
inline constexpr const char* kToolVersion = "0.1.0";

// One report per invocation: the payload keys live at the top level next to
// the envelope (tool, version, command, config, duration_ms), so files like
// closure snapshots stay loadable by the module readers while still carrying
// the full configuration echo. Every field except duration_ms is a pure
// function of argv and seed.
class ReportBuilder {
 public:
  ReportBuilder(std::string command, nlohmann::json config);

  nlohmann::json& payload() { return payload_; }
  const nlohmann::json& payload() const { return payload_; }

  // preformatted body used instead of the payload dump when format is "text"
  void set_text(std::string rendered) { text_ = std::move(rendered); }

  std::string render(const std::string& format) const;  // "json" or "text"

 private:
  std::string command_;
  nlohmann::json config_;
  nlohmann::json payload_;
  std::string text_;
  std::chrono::steady_clock::time_point start_;
};

// empty path means stdout
void deliver_report(const std::string& rendered, const std::string& out_path);

}  // namespace partcat
