#pragma once

#include <string>

namespace zeno {

enum class LogLevel { debug = 0, info = 1, warn = 2, error = 3, off = 4 };

/// Threshold read once from ZENO_BENCH_LOG (debug|info|warn|error|off,
/// default warn). Messages go to stderr.
LogLevel log_threshold();
void set_log_threshold(LogLevel level);

void log_message(LogLevel level, const std::string& msg);
inline void log_debug(const std::string& msg) { log_message(LogLevel::debug, msg); }
inline void log_info(const std::string& msg) { log_message(LogLevel::info, msg); }
inline void log_warn(const std::string& msg) { log_message(LogLevel::warn, msg); }

}  // namespace zeno
