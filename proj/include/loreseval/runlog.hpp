#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace loreseval::runlog {

inline constexpr const char* kLogDirEnv = "LORES_EVAL_LOG_DIR";

// $LORES_EVAL_LOG_DIR when set and non-empty, otherwise ./logs.
std::filesystem::path default_log_dir();

// Appends {"timestamp", "command", "report"} as one JSON line to
// <dir>/<command>.jsonl, creating the directory if needed. Each line goes out
// in a single write under an exclusive lock, so concurrent processes never
// interleave partial lines. Returns the log file path.
std::filesystem::path log_run(const std::filesystem::path& dir, const std::string& command,
                              const nlohmann::json& report);

}  // namespace loreseval::runlog
