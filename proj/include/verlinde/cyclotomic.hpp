#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "verlinde/rat.hpp"

namespace vt {

// Element of the cyclotomic field Q(zeta_N), written on the power basis
// 1, zeta, ..., zeta^{phi(N)-1} reduced modulo the N-th cyclotomic polynomial.
// Values are immutable and operations are pure. Mixed moduli lift to the lcm
// automatically; roots of unity are constructed at the smallest modulus that
// represents them, which keeps the ambient fields (and inversion cost) small.
// Equality compares values, not representations: both sides are lifted to a
// common field first.
struct CycloNumber {
  long long modulus = 1;
  QVec coeffs = QVec(1, Rat(0));  // length phi(modulus)
};

// Raised when a value expected to be rational (or integral) is not; carries a
// floating-point approximation of the offending value for diagnostics.
struct NotRationalError : std::domain_error {
  std::complex<double> approx;
  NotRationalError(const std::string& msg, std::complex<double> a)
      : std::domain_error(msg), approx(a) {}
};

long long euler_phi(long long n);

// Coefficients of the N-th cyclotomic polynomial, constant term first.
std::vector<Int> cyclotomic_polynomial(long long n);

CycloNumber cyclo_zero();
CycloNumber cyclo_rational(const Rat& q);
CycloNumber root_of_unity(long long n, long long a);  // zeta_n^a

bool is_zero(const CycloNumber& x);
bool cyclo_equal(const CycloNumber& x, const CycloNumber& y);
inline bool operator==(const CycloNumber& x, const CycloNumber& y) { return cyclo_equal(x, y); }
inline bool operator!=(const CycloNumber& x, const CycloNumber& y) { return !cyclo_equal(x, y); }

// Rewrites x in Q(zeta_m); requires x.modulus | m.
CycloNumber lift_to(const CycloNumber& x, long long m);

CycloNumber add(const CycloNumber& x, const CycloNumber& y);
CycloNumber sub(const CycloNumber& x, const CycloNumber& y);
CycloNumber mul(const CycloNumber& x, const CycloNumber& y);
CycloNumber neg(const CycloNumber& x);
CycloNumber conj(const CycloNumber& x);

// Exact field inverse; throws std::domain_error on zero.
CycloNumber invert(const CycloNumber& x);

// Substitution zeta -> zeta^a for a coprime to the modulus.
CycloNumber galois(const CycloNumber& x, long long a);

CycloNumber cyclo_pow(const CycloNumber& x, long long e);

// Sum over e of counts[e] * zeta_n^e (counts has length n). When every
// occurring exponent shares a divisor with n the result is built directly in
// the smaller field Q(zeta_{n/g}).
CycloNumber cyclo_from_exponent_counts(long long n, const std::vector<Int>& counts);

std::optional<Rat> try_as_rational(const CycloNumber& x);
Rat as_rational(const CycloNumber& x);  // NotRationalError if irrational
Int as_integer(const CycloNumber& x);   // NotRationalError if not an integer

std::complex<double> to_complex(const CycloNumber& x);

}  // namespace vt
