#pragma once

#include <sstream>
#include <string>

namespace coref::log {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

// Threshold comes from the COREF_LOG environment variable
// (error|warn|info|debug), read once; default is warn.
Level threshold();
bool enabled(Level level);

void write(Level level, const std::string& message);

template <typename... Args>
void emit(Level level, const Args&... args) {
  if (!enabled(level)) return;
  std::ostringstream os;
  (os << ... << args);
  write(level, os.str());
}

template <typename... Args>
void error(const Args&... args) { emit(Level::error, args...); }
template <typename... Args>
void warn(const Args&... args) { emit(Level::warn, args...); }
template <typename... Args>
void info(const Args&... args) { emit(Level::info, args...); }
template <typename... Args>
void debug(const Args&... args) { emit(Level::debug, args...); }

}  // namespace coref::log
