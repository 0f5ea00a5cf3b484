#pragma once

#include <string>
#include <vector>

#include "deepwave/config.hpp"

namespace deepwave {

inline constexpr const char* kVersion = "0.3.0";

struct TaskStatus {
  std::string name;
  bool ok = true;
  std::string message;
  std::vector<std::string> files;
};

struct RunManifest {
  std::string config_echo;  // canonical JSON of the effective config
  std::string version = kVersion;
  std::string started;      // UTC, ISO 8601
  std::string finished;
  std::vector<TaskStatus> tasks;
  /// Every emitted file relative to the output directory, manifest.json last.
  std::vector<std::string> files;

  bool all_ok() const;
};

/// Run every task of the config, write outputs under config.output_dir, then
/// write manifest.json. Tasks run on config.threads workers; outputs other
/// than the manifest do not depend on the thread count or wall clock.
RunManifest run_command(const RunConfig& config);

}  // namespace deepwave
