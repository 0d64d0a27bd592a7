#include "mcnet/log.hpp"

#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <memory>
#include <string_view>

namespace mcnet {

namespace {

spdlog::logger& logger() {
  static const std::shared_ptr<spdlog::logger> instance = [] {
    auto l = std::make_shared<spdlog::logger>("mcnet",
                                              std::make_shared<spdlog::sinks::stderr_sink_mt>());
    l->set_pattern("[mcnet] [%l] %v");
    const char* env = std::getenv("MCNET_LOG");
    const std::string_view level = env ? env : "error";
    if (level == "debug") {
      l->set_level(spdlog::level::debug);
    } else if (level == "info") {
      l->set_level(spdlog::level::info);
    } else {
      l->set_level(spdlog::level::err);
    }
    return l;
  }();
  return *instance;
}

}  // namespace

void log_error(const std::string& msg) { logger().error(msg); }
void log_warn(const std::string& msg) { logger().warn(msg); }
void log_info(const std::string& msg) { logger().info(msg); }
void log_debug(const std::string& msg) { logger().debug(msg); }

}  // namespace mcnet
