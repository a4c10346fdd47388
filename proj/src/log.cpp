#include "zeno/log.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <iostream>
#include <mutex>

namespace zeno {

namespace {

LogLevel parse_level(const char* text) {
  if (text == nullptr) return LogLevel::warn;
  if (std::strcmp(text, "debug") == 0) return LogLevel::debug;
  if (std::strcmp(text, "info") == 0) return LogLevel::info;
  if (std::strcmp(text, "error") == 0) return LogLevel::error;
  if (std::strcmp(text, "off") == 0) return LogLevel::off;
  return LogLevel::warn;
}

std::atomic<int>& threshold_storage() {
  static std::atomic<int> level{static_cast<int>(parse_level(std::getenv("ZENO_BENCH_LOG")))};
  return level;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::debug: return "debug";
    case LogLevel::info: return "info";
    case LogLevel::warn: return "warn";
    case LogLevel::error: return "error";
    case LogLevel::off: return "off";
  }
  return "?";
}

}  // namespace

LogLevel log_threshold() { return static_cast<LogLevel>(threshold_storage().load()); }

void set_log_threshold(LogLevel level) { threshold_storage().store(static_cast<int>(level)); }

void log_message(LogLevel level, const std::string& msg) {
  if (level == LogLevel::off || static_cast<int>(level) < threshold_storage().load()) return;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[zeno " << level_name(level) << "] " << msg << '\n';
}

}  // namespace zeno
