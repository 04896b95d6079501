#pragma once

#include "symwave/io.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace symwave {

struct LiftingFileSpec {
  std::size_t p = 0;
  std::size_t i = 0;
  std::filesystem::path file;
};

struct LiftingConfig {
  std::vector<LiftingFileSpec> files;
  Rational scale = 1;
  bool automatic = false;
  std::optional<IVec> seed;
};

struct ProjectConfig {
  IMat M;
  std::optional<std::vector<IVec>> digits;
  std::vector<IMat> group;
  bool generators = false;
  RVec center;
  int n = 1;
  std::string backend = "exact";
  std::uint64_t seed = 0;
  int samples = 64;
  int support_budget = -1;
  std::filesystem::path m0_file;
  std::string dual_mode = "solve";  ///< one | file | solve
  std::filesystem::path dual_file;
  std::string pipeline = "framelike";  ///< framelike | lift | frame
  bool reduce = false;
  bool symmetrize = false;
  LiftingConfig lifting;
  std::string utility_mode = "reduced";  ///< file | reduced | auto
  std::filesystem::path utility_file;
  std::filesystem::path output = "out";
  std::vector<std::string> assumed;
};

/// Relative paths resolve against the config file's directory; throws ConfigError or ParseError.
ProjectConfig load_config(const std::filesystem::path& file);
ProjectConfig parse_config(const Json& j, const std::filesystem::path& base);

/// "p:i:file".
LiftingFileSpec parse_lifting_arg(const std::string& arg);

struct RunResult {
  int exit_code = 0;
  Json report;
};

extern const std::vector<std::string> kCommands;

/// Runs one CLI command, writes artifacts and report.json under cfg.output; never throws on stage errors.
RunResult run_command(const std::string& command, const ProjectConfig& cfg);

}  // namespace symwave
