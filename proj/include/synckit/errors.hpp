#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace synckit {

struct ParseError : std::runtime_error {
  ParseError(std::string msg, std::size_t line, std::size_t column)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct KeystreamExhausted : std::runtime_error {
  KeystreamExhausted(std::size_t needed, std::size_t available)
      : std::runtime_error("keystream exhausted: need " +
                           std::to_string(needed) + " bits, have " +
                           std::to_string(available)),
        needed(needed),
        available(available) {}
  std::size_t needed;
  std::size_t available;
};

struct AllSamplesGuarded : std::runtime_error {
  AllSamplesGuarded()
      : std::runtime_error(
            "NMSE window is empty: every sample was skipped or guarded") {}
};

struct ExhaustedAttempts : std::runtime_error {
  explicit ExhaustedAttempts(std::size_t attempts)
      : std::runtime_error("no admissible configuration found in " +
                           std::to_string(attempts) + " attempts"),
        attempts(attempts) {}
  std::size_t attempts;
};

}  // namespace synckit
