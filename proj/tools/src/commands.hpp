#pragma once

#include <optional>
#include <string>

#include "config.hpp"
#include "thopf/error.hpp"

namespace thopf::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_config = 1,
  exit_condition = 2,
  exit_degenerate = 3,
  exit_runtime = 4,
};

int exit_code_for(ErrorKind kind) noexcept;

struct CommandOptions {
  RunConfig config;
  std::string out_dir;
  int jobs = 1;
  std::string format = "json";
  std::optional<double> alpha1;
  std::optional<double> alpha2;
};

int cmd_analyze(const CommandOptions& opts);
int cmd_normalform(const CommandOptions& opts);
int cmd_classify(const CommandOptions& opts);
int cmd_simulate(const CommandOptions& opts);
int cmd_sweep(const CommandOptions& opts);

} // namespace thopf::cli
