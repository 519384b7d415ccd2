#include "coref/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace coref::log {

namespace {

Level parse_level() {
  const char* env = std::getenv("COREF_LOG");
  if (!env) return Level::warn;
  std::string value(env);
  if (value == "error") return Level::error;
  if (value == "warn") return Level::warn;
  if (value == "info") return Level::info;
  if (value == "debug") return Level::debug;
  return Level::warn;
}

const char* label(Level level) {
  switch (level) {
    case Level::error: return "error";
    case Level::warn: return "warn";
    case Level::info: return "info";
    case Level::debug: return "debug";
  }
  return "info";
}

std::mutex g_mutex;

}  // namespace

Level threshold() {
  static Level level = parse_level();
  return level;
}

bool enabled(Level level) {
  return static_cast<int>(level) <= static_cast<int>(threshold());
}

void write(Level level, const std::string& message) {
  std::lock_guard<std::mutex> lock(g_mutex);
  std::cerr << "[" << label(level) << "] " << message << "\n";
}

}  // namespace coref::log
