#pragma once

// The property battery behind `verify-suite`: every module's invariants on
// seeded random inputs. The report contains no timings, so equal seeds give
// byte-identical output.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kinterp/json_io.hpp"

namespace kinterp {

struct PropertyResult {
  std::string module;
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest observed defect, in the property's own units
  std::string first_failure;
  bool pass() const { return cases > 0 && failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 42;
  // Replaces every relative comparison tolerance of the battery when set.
  std::optional<double> tolerance;
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<PropertyResult> properties;
  bool pass() const;
};

SuiteReport run_suite(const SuiteOptions& options);

Json to_json(const SuiteReport& report);

}  // namespace kinterp
