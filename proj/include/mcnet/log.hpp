#pragma once

#include <string>

namespace mcnet {

// Logging goes to stderr. Verbosity comes from MCNET_LOG={error|info|debug}
// (default: error), read on first use.
void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace mcnet
