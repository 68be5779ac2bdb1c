#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dengue/config.hpp"

namespace dengue::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kDomainError = 1;
inline constexpr int kUsageError = 2;

struct CommandFlags {
    bool path_log = false;  // outbreak: also write the per-path outcome log
};

struct Command {
    std::string name;
    std::string description;
    std::function<void(const RunConfig&, const CommandFlags&)> run;
};

/// All subcommands in help order.
const std::vector<Command>& commands();

}  // namespace dengue::cli
