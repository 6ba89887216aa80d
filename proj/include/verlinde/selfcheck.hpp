#pragma once

#include <string>
#include <vector>

#include "verlinde/fixedpoint.hpp"

namespace vt {

// Grid selection for the aggregated property suite. The fast grid covers
// rank <= 2 at levels <= 4; the full grid widens to rank <= 3 and levels <= 8
// and appends the floating-point verification suite.
struct SelfCheckOptions {
  bool full = false;
  // Replaces the admissibility gate by the weaker divisibility test, which
  // admits borderline levels whose index sums can come out fractional. Used
  // to demonstrate the documented discrepancy between the two predicates;
  // the integrality item is expected to fail under this option.
  bool weak_admissibility = false;
  unsigned numeric_seed = 20260815;
};

struct SelfCheckItem {
  std::string name;
  long long cases = 0;
  bool passed = true;
  std::string detail;                // first failure, empty when passing
  std::vector<CheckRecord> records;  // per-proposition data of numeric items
};

struct SelfCheckReport {
  bool full = false;
  bool weak_admissibility = false;
  unsigned numeric_seed = 0;
  std::vector<SelfCheckItem> items;

  bool all_passed() const;
};

SelfCheckReport run_selfcheck(const SelfCheckOptions& opt = {});

// Renders the report as indented JSON with a fixed key order, so identical
// reports produce byte-identical text.
std::string report_json(const SelfCheckReport& r);

}  // namespace vt
