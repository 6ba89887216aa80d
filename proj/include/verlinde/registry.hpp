#pragma once

#include <string>
#include <vector>

#include "verlinde/center.hpp"

namespace vt {

// A compact connected group presented as its simply connected cover together
// with the central subgroup that gets quotiented out. `generators` index the
// center tables of `datum`, one entry per factor; an empty list means the
// group is the cover itself.
struct GroupSpec {
  ProductDatum datum;
  std::vector<CenterIdx> generators;
};

// Resolves a group name to a GroupSpec. Accepted forms, case sensitive:
//   - bare simple type labels: "A2", "D4", "E7" (simply connected);
//   - adjoint shorthand: a label followed by ' or U+2032, e.g. "E7'"
//     (quotient by the full center);
//   - classical names: SU(n), PSU(n) for n >= 2; Sp(n), PSp(n) for n >= 1;
//     Spin(n), SO(n) for n >= 3; PSO(n) for even n >= 4;
//   - products of the above joined by "x" or U+00D7, e.g. "SO(3)xSU(2)".
// Whitespace around factors is ignored. Throws std::invalid_argument for
// anything else.
GroupSpec parse_group_name(const std::string& name);

}  // namespace vt
