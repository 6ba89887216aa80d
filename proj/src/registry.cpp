#include "verlinde/registry.hpp"

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

namespace vt {

namespace {

[[noreturn]] void bad_name(const std::string& name, const std::string& why) {
  throw std::invalid_argument("cannot parse group '" + name + "': " + why);
}

std::string trimmed(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Splits on "x" and on the UTF-8 multiplication sign (0xC3 0x97).
std::vector<std::string> split_factors(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'x') {
      parts.push_back(cur);
      cur.clear();
    } else if (static_cast<unsigned char>(s[i]) == 0xC3 && i + 1 < s.size() &&
               static_cast<unsigned char>(s[i + 1]) == 0x97) {
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else {
      cur += s[i];
    }
  }
  parts.push_back(cur);
  return parts;
}

// One parsed factor: its simple types (Spin(4) and SO(4) split in two) and
// the quotient generators, indices local to this factor's types.
struct FactorSpec {
  std::vector<LieType> types;
  std::vector<std::vector<int>> generators;
};

// Generators of the full center of one simple type, as indices into the
// center tables of its RootDatum. Index 0 is the identity; the minuscule
// coweight classes follow in node order, so index 1 is a cyclic generator
// for every family with cyclic center, and for even D the classes at
// indices 1 and 2 span the Klein four-group. Odd D has cyclic center of
// order 4 generated by the first spinor class, which sits at index 2
// behind the order-2 vector class.
std::vector<int> full_center_generators(const LieType& t) {
  switch (t.family) {
    case 'A': return {1};
    case 'B': return {1};
    case 'C': return {1};
    case 'D': return t.rank % 2 == 0 ? std::vector<int>{1, 2} : std::vector<int>{2};
    case 'E':
      if (t.rank == 6 || t.rank == 7) return {1};
      return {};
    default: return {};  // F4, G2
  }
}

FactorSpec simply_connected(LieType t) { return {{t}, {}}; }

FactorSpec adjoint_of(LieType t) {
  FactorSpec f{{t}, {}};
  for (int g : full_center_generators(t)) f.generators.push_back({g});
  return f;
}

long long parse_size(const std::string& name, const std::string& head, const std::string& body) {
  if (body.size() < head.size() + 2 || body.compare(0, head.size(), head) != 0 ||
      body[head.size()] != '(' || body.back() != ')')
    bad_name(name, "malformed '" + head + "(...)'");
  std::string digits = body.substr(head.size() + 1, body.size() - head.size() - 2);
  if (digits.empty()) bad_name(name, "missing size in '" + head + "(...)'");
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      bad_name(name, "size in '" + head + "(...)' must be a positive integer");
  try {
    return std::stoll(digits);
  } catch (const std::exception&) {
    bad_name(name, "size in '" + head + "(...)' out of range");
  }
}

// Simple types underlying Spin(n)/SO(n): B/D by parity, small-rank special
// cases first. Spin(4) has two A1 factors.
std::vector<LieType> orthogonal_types(const std::string& name, long long n) {
  if (n < 3) bad_name(name, "orthogonal groups need dimension >= 3");
  if (n == 3) return {{'A', 1}};
  if (n == 4) return {{'A', 1}, {'A', 1}};
  if (n == 6) return {{'D', 3}};
  if (n % 2 == 1) return {{'B', static_cast<int>((n - 1) / 2)}};
  return {{'D', static_cast<int>(n / 2)}};
}

FactorSpec parse_factor(const std::string& name, std::string body) {
  if (body.empty()) bad_name(name, "empty factor");

  // Adjoint shorthand: trailing ASCII apostrophe or U+2032 (0xE2 0x80 0xB2).
  bool adjoint = false;
  if (body.back() == '\'') {
    adjoint = true;
    body.pop_back();
  } else if (body.size() >= 3 && static_cast<unsigned char>(body[body.size() - 3]) == 0xE2 &&
             static_cast<unsigned char>(body[body.size() - 2]) == 0x80 &&
             static_cast<unsigned char>(body[body.size() - 1]) == 0xB2) {
    adjoint = true;
    body.erase(body.size() - 3);
  }

  if (adjoint) {
    LieType t;
    try {
      t = parse_lie_type(body);
    } catch (const std::invalid_argument&) {
      bad_name(name, "the adjoint mark ' applies to simple type labels only");
    }
    return adjoint_of(t);
  }

  auto head_is = [&](const std::string& h) {
    return body.size() > h.size() && body.compare(0, h.size(), h) == 0 &&
           body[h.size()] == '(';
  };

  if (head_is("SU") || head_is("PSU")) {
    bool proj = body[0] == 'P';
    long long n = parse_size(name, proj ? "PSU" : "SU", body);
    if (n < 2) bad_name(name, "SU(n) needs n >= 2");
    LieType t{'A', static_cast<int>(n - 1)};
    return proj ? adjoint_of(t) : simply_connected(t);
  }

  if (head_is("Sp") || head_is("PSp")) {
    bool proj = body[0] == 'P';
    long long n = parse_size(name, proj ? "PSp" : "Sp", body);
    if (n < 1) bad_name(name, "Sp(n) needs n >= 1");
    LieType t = n == 1 ? LieType{'A', 1} : LieType{'C', static_cast<int>(n)};
    return proj ? adjoint_of(t) : simply_connected(t);
  }

  if (head_is("Spin")) {
    long long n = parse_size(name, "Spin", body);
    FactorSpec f;
    f.types = orthogonal_types(name, n);
    return f;
  }

  if (head_is("SO")) {
    long long n = parse_size(name, "SO", body);
    FactorSpec f;
    f.types = orthogonal_types(name, n);
    if (n == 4) {
      f.generators.push_back({1, 1});  // diagonal Z2 in Z2 x Z2
    } else if (n % 2 == 1) {
      f.generators.push_back({1});  // full spin-cover center
    } else {
      f.generators.push_back({1});  // vector class of the D center
    }
    return f;
  }

  if (head_is("PSO")) {
    long long n = parse_size(name, "PSO", body);
    if (n < 4 || n % 2 == 1)
      bad_name(name, "PSO(n) needs even n >= 4 (odd SO(n) is already adjoint)");
    FactorSpec f;
    f.types = orthogonal_types(name, n);
    if (n == 4) {
      f.generators.push_back({1, 0});
      f.generators.push_back({0, 1});
    } else {
      for (int g : full_center_generators(f.types[0])) f.generators.push_back({g});
    }
    return f;
  }

  LieType t;
  try {
    t = parse_lie_type(body);
  } catch (const std::invalid_argument&) {
    bad_name(name, "unknown factor '" + body + "'");
  }
  return simply_connected(t);
}

}  // namespace

GroupSpec parse_group_name(const std::string& name) {
  std::vector<FactorSpec> factors;
  for (const std::string& raw : split_factors(name))
    factors.push_back(parse_factor(name, trimmed(raw)));

  std::vector<LieType> types;
  std::vector<size_t> offset;  // first type slot of each factor
  for (const auto& f : factors) {
    offset.push_back(types.size());
    types.insert(types.end(), f.types.begin(), f.types.end());
  }

  GroupSpec g;
  g.datum = make_product(types);
  for (size_t i = 0; i < factors.size(); ++i)
    for (const auto& local : factors[i].generators) {
      CenterIdx padded(types.size(), 0);
      for (size_t j = 0; j < local.size(); ++j) padded[offset[i] + j] = local[j];
      g.generators.push_back(padded);
    }
  return g;
}

}  // namespace vt
