#pragma once

// Exact Verlinde-type index sums over the regular points of the fusion torus:
// closed and marked surfaces for the simply connected groups, and the
// twisted/untwisted index sums for quotients by a subgroup of the center.

#include <utility>
#include <vector>

#include "verlinde/center.hpp"
#include "verlinde/cyclotomic.hpp"
#include "verlinde/root_datum.hpp"

namespace vt {

// A level is rejected for a quotient when it fails the divisibility test that
// guarantees the prequantum line bundle descends.
struct InadmissibleLevelError : std::domain_error {
  using std::domain_error::domain_error;
};

struct VerlindeResult {
  Rat value;             // exact total; an integer whenever `integral` holds
  bool integral = true;  // false only when an unsafe query produced a fraction
  // One exact summand per weight (or per orbit for class sums), already
  // scaled so that the entries add up to `value`.
  std::vector<std::pair<PWeight, CycloNumber>> per_lambda;
  double shadow = 0.0;  // floating-point shadow of the total, for diagnostics

  Int integer() const;  // throws std::logic_error when the value is fractional
};

// Number of worker threads used for the summation loops (default 1). The
// reduction order is fixed, so results are identical for any thread count.
void set_thread_count(int n);
int thread_count();

// Index of the moduli space for a genus-h surface with r marked points, for
// the simply connected group described by `pd`. Requires h >= 1 or at least
// one marking; every marking must be a dominant weight of level at most k.
VerlindeResult verlinde_sc(const ProductDatum& pd, const PLevel& k, long long h,
                           const std::vector<PWeight>& markings);

// Closed surface of genus h >= 0 (no markings).
VerlindeResult verlinde_closed(const ProductDatum& pd, const PLevel& k, long long h);

// Two marked points on a sphere: evaluates to 1 when mu2 is the dual weight
// of mu1 and to 0 otherwise.
Int two_holed_sphere(const ProductDatum& pd, const PLevel& k, const PWeight& mu1,
                     const PWeight& mu2);

// Divisibility test for the level of a quotient by a center subgroup whose
// projection to this factor has the given order. `min_level` returns the
// smallest admissible level, gcd(2c, order^2) for dual Coxeter number c; the
// weak variants use gcd(c, order^2), which admits borderline levels whose
// index sums can come out fractional.
long long min_level(const RootDatum& d, long long subgroup_order);
bool admissible_level(const RootDatum& d, long long subgroup_order, long long k);
long long weak_min_level(const RootDatum& d, long long subgroup_order);
bool weak_admissible_level(const RootDatum& d, long long subgroup_order, long long k);

// Factorwise admissibility of a level vector for the quotient by G, using the
// projected subgroup order in each factor.
bool admissible_levels(const CenterSubgroup& G, const PLevel& k);

// Index of one component of the moduli space for the quotient group: genus
// h >= 1, one marking mu, and one flat twist character per handle generator
// (phi must have exactly 2h entries). Throws InadmissibleLevelError unless
// the level passes `admissible_levels`; pass unsafe=true to evaluate anyway,
// in which case the result may be flagged non-integral.
VerlindeResult verlinde_ns(const CenterSubgroup& G, const PLevel& k, long long h,
                           const PWeight& mu, const std::vector<CenterCharacter>& phi,
                           bool unsafe = false);

// Index of the full moduli space attached to the conjugacy class of exp(mu/k):
// the disjoint union of the components indexed by the center orbit of mu. The
// orbit-restricted formula and the component-by-component sum are both
// evaluated and must agree exactly.
VerlindeResult verlinde_conjclass(const CenterSubgroup& G, const PLevel& k, long long h,
                                  const PWeight& mu, const std::vector<CenterCharacter>& phi,
                                  bool unsafe = false);

// Contribution of the distinguished center-fixed weight (k/c)rho to the
// quotient sum: (1 + k/c)^{(h-1) rank} * eps(phi) * conj(chi_mu) at that
// point, cross-checked against the generic summand. Requires c | k in every
// factor.
CycloNumber exceptional_contribution(const CenterSubgroup& G, const PLevel& k, long long h,
                                     const PWeight& mu,
                                     const std::vector<CenterCharacter>& phi);

// Evaluates the quotient index for the full-center quotient of A_{p-1} twice:
// directly (lhs) and through the closed-surface reduction identity (rhs).
// Requires p prime, p | k, and k admissible; genus h >= 1, vacuum marking,
// trivial twist.
std::pair<Rat, Rat> psu_p_crosscheck(long long p, long long k, long long h);

}  // namespace vt
