#pragma once

#include <memory>

#include <spdlog/spdlog.h>

namespace gsqg {

/// Library logger on stderr. Level from GSQG_LOG (trace, debug, info, warn,
/// error, off); warn when unset.
spdlog::logger& log();

}  // namespace gsqg
