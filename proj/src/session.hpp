#pragma once

#include <cstdint>
#include <string>

#include "action.hpp"

namespace sb {

struct SessionConfig {
  int n = 2;
  int genus = 1;
  uint64_t seed = 0;
  std::string format = "json";  // json | text
  PeripheralTable table = PeripheralTable::defaults(1);

  void load_table(const std::string& path) { table = PeripheralTable::load_file(path, genus); }
};

/// Dispatches one CLI command. Commands: parse, split, eta, nu, decode,
/// preimage, suite. Throws sb::Error on bad input; the caller renders it.
/// For `suite`, *suite_ok (when given) reports whether every check passed.
std::string run_command(const SessionConfig& config, const std::string& command,
                        const std::string& input, bool* suite_ok = nullptr);

/// Error rendering matching the configured format.
std::string render_error(const SessionConfig& config, const class Error& err);

}  // namespace sb
