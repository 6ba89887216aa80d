#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace vt {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();  // mpq_class(num, den) keeps the raw fraction otherwise
  return q;
}

// gmpxx has no long long constructors; these are safe while long is 64-bit.
static_assert(sizeof(long) == sizeof(long long), "expected an LP64 platform");
inline Int int_ll(long long v) { return Int(static_cast<long>(v)); }
inline Rat rat_ll(long long v) { return Rat(static_cast<long>(v)); }

// floor of a rational as an integer
inline Int floor_rat(const Rat& q) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
  return f;
}

// fractional part in [0, 1)
inline Rat frac_part(const Rat& q) { return q - Rat(floor_rat(q)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline long long to_ll(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer too large: " + z.get_str());
  return z.get_si();
}

inline long long rat_to_ll(const Rat& q) {
  if (!is_integer(q)) throw std::domain_error("expected integer, got " + q.get_str());
  return to_ll(q.get_num());
}

inline Rat pow_rat(const Rat& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("0^negative");
    return pow_rat(1 / base, -e);
  }
  Rat r(1), b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Int pow_int(Int base, long long e) {
  Int r(1);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

using QVec = std::vector<Rat>;
using IVec = std::vector<long long>;

inline QVec qvec_of(const IVec& v) {
  QVec q(v.size());
  for (size_t i = 0; i < v.size(); ++i) q[i] = rat_ll(v[i]);
  return q;
}

}  // namespace vt
