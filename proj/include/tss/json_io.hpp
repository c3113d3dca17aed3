#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "tss/core.hpp"
#include "tss/selection.hpp"
#include "tss/synthbench.hpp"
#include "tss/utility.hpp"

namespace tss {

inline constexpr const char* kToolName = "tss";
inline constexpr const char* kToolVersion = "1.0.0";

using ordered_json = nlohmann::ordered_json;

/// Resolved run configuration. Unknown JSON keys are errors, not warnings.
struct RunConfig {
  std::filesystem::path dataset;
  std::optional<std::filesystem::path> annotations;
  WindowSpec window{5, 10};
  std::vector<UtilityConfig> utilities;
  std::string method = "insights";  // insights | random
  SelectionConfig selection;
  GeneratorConfig generator;
  std::filesystem::path output = "out";
};

RunConfig load_run_config(const std::filesystem::path& path);
RunConfig parse_run_config(const ordered_json& j);

/// Full resolved config, used to stamp every output artifact.
ordered_json config_to_json(const RunConfig& cfg);

ordered_json summary_to_json(const Summary& s, const ordered_json& config_echo);
void save_summary_json(const Summary& s, const ordered_json& config_echo,
                       const std::filesystem::path& path);
Summary load_summary_json(const std::filesystem::path& path);

ordered_json report_to_json(const CaptureReport& r, const ordered_json& config_echo);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace tss
