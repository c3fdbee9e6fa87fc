#include "cosal/core.hpp"

#include <iostream>
#include <mutex>

namespace cosal {

namespace {

std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

WarningSink& sink() {
  static WarningSink s = [](std::string_view message) {
    std::cerr << "warning: " << message << '\n';
  };
  return s;
}

std::string format_parse_error(const std::string& source, std::size_t line,
                               const std::string& message) {
  if (line == 0) return source + ": " + message;
  return source + ":" + std::to_string(line) + ": " + message;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : Error(format_parse_error(source, line, message)), line_(line) {}

void set_warning_sink(WarningSink s) {
  std::lock_guard lock(sink_mutex());
  sink() = std::move(s);
}

void warn(std::string_view message) {
  std::lock_guard lock(sink_mutex());
  if (sink()) sink()(message);
}

}  // namespace cosal
