#pragma once

#include <iostream>

#include "dirac/config.hpp"

namespace dirac {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitIntegration = 2,
  kExitInvariant = 3,
};

struct CommandContext {
  bool quiet = false;
  std::ostream* out = &std::cout;  // summaries and tables
  std::ostream* log = &std::cerr;  // progress and errors
};

int cmd_spectrum(const RunConfig& cfg, const CommandContext& ctx = {});
int cmd_bounds(const RunConfig& cfg, const CommandContext& ctx = {});
int cmd_sweep(const RunConfig& cfg, const CommandContext& ctx = {});
int cmd_oracle(const RunConfig& cfg, const CommandContext& ctx = {});
int cmd_check(const RunConfig& cfg, const CommandContext& ctx = {});

}  // namespace dirac
