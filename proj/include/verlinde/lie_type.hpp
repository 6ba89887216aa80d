#pragma once

#include <string>

namespace vt {

// Label of a simple compact Lie type: family A..G plus rank.
struct LieType {
  char family = 'A';
  int rank = 1;

  bool operator==(const LieType&) const = default;
};

// Throws std::invalid_argument for ranks outside the simple range
// (A>=1, B>=2, C>=2, D>=3, E in {6,7,8}, F=4, G=2).
void validate_lie_type(const LieType& t);

// Parses labels like "A2", "D4", "E7".
LieType parse_lie_type(const std::string& s);

std::string to_string(const LieType& t);

}  // namespace vt
