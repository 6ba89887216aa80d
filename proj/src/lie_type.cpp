#include "verlinde/lie_type.hpp"

#include <cctype>
#include <stdexcept>

namespace vt {

void validate_lie_type(const LieType& t) {
  const int n = t.rank;
  bool ok = false;
  switch (t.family) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 2; break;
    case 'D': ok = n >= 3; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: ok = false;
  }
  if (!ok)
    throw std::invalid_argument("not a simple type: " + to_string(t) +
                                " (need A>=1, B>=2, C>=2, D>=3, E6..E8, F4, G2)");
}

LieType parse_lie_type(const std::string& s) {
  if (s.size() < 2 || !std::isalpha(static_cast<unsigned char>(s[0])))
    throw std::invalid_argument("bad type label: '" + s + "'");
  LieType t;
  t.family = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  for (size_t i = 1; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw std::invalid_argument("bad type label: '" + s + "'");
  try {
    t.rank = std::stoi(s.substr(1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad type label: '" + s + "'");
  }
  validate_lie_type(t);
  return t;
}

std::string to_string(const LieType& t) { return std::string(1, t.family) + std::to_string(t.rank); }

}  // namespace vt
