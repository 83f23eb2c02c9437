#pragma once

#include <string>
#include <vector>

#include "session.hpp"

namespace sb {

struct SuiteResult {
  std::string name;
  int cases = 0;
  int passed = 0;
  std::vector<std::string> failures;  // capped witnesses
  std::string notes;
};

struct SuiteReport {
  std::vector<SuiteResult> suites;

  bool ok() const {
    for (const SuiteResult& s : suites)
      if (s.passed != s.cases) return false;
    return true;
  }
};

/// Seeded invariant suites for every module. Identical seeds give identical
/// reports; failing cases are enumerated as replayable witnesses.
SuiteReport run_suite(const SessionConfig& config);

}  // namespace sb
