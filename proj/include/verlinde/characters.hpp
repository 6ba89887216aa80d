#pragma once

#include <utility>

#include "verlinde/cyclotomic.hpp"
#include "verlinde/root_datum.hpp"

namespace vt {

// Character quotient requested at a point where the Weyl denominator vanishes.
struct SingularPointError : std::domain_error {
  using std::domain_error::domain_error;
};

// Multiplicity enumeration requested for a representation above the size cap.
struct DimensionCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The distinguished weight (k/h^vee) * rho exists only when h^vee divides k.
struct ExceptionalWeightAbsentError : std::domain_error {
  using std::domain_error::domain_error;
};

// The torus point attached to a level-k weight: exp of (lam + rho)/(k + h^vee).
// xi holds ambient coordinates, xi_w the same point in weight coordinates.
// The point always lies in the open fundamental alcove, hence is regular.
struct SpecialPoint {
  const RootDatum* datum = nullptr;
  long long k = 0;
  IVec lam;
  QVec xi;
  QVec xi_w;
};

SpecialPoint make_special_point(const RootDatum& d, long long k, const IVec& lam);

// True when no root pairs integrally with xi.
bool is_regular(const RootDatum& d, const QVec& xi_w);

// Dimension of the irreducible with highest weight mu (Weyl product formula).
Int weyl_dimension(const RootDatum& d, const IVec& mu);

// Alternating orbit sum: sum over w of det(w) zeta^{<w(mu+rho), xi>}.
CycloNumber weyl_numerator(const RootDatum& d, const IVec& mu, const QVec& xi_w);

// Character of the irreducible with highest weight mu at exp(xi), as the
// quotient of alternating sums. Throws SingularPointError off the regular set.
CycloNumber eval_character_weyl(const RootDatum& d, const IVec& mu, const QVec& xi_w);

// Dominant weights of the irreducible and their multiplicities (Freudenthal
// recursion), ordered from the highest weight downwards.
std::vector<std::pair<IVec, Int>> dominant_weight_multiplicities(
    const RootDatum& d, const IVec& mu, long long dim_cap = 1'000'000);

// Division-free character evaluation through weight multiplicities; also valid
// at singular points.
CycloNumber eval_character_freudenthal(const RootDatum& d, const IVec& mu, const QVec& xi_w,
                                       long long dim_cap = 1'000'000);

// Dispatcher: Weyl quotient when the Weyl group is enumerable, multiplicity
// sum otherwise.
CycloNumber eval_character(const RootDatum& d, const IVec& mu, const QVec& xi_w);

// |J(exp xi)|^2 = product over positive roots of (2 - zeta^{<alpha,xi>} -
// zeta^{-<alpha,xi>}); zero exactly at singular points.
CycloNumber weyl_denominator_sq(const RootDatum& d, const QVec& xi_w);

// Number of special torus points at scale l: l^rank times the center order
// times the index of the long-root lattice.
Int t_count(const RootDatum& d, long long l);

// Character value at the principal point exp(rho / h^vee) as a sign: +/-1 when
// some w maps mu+rho into rho + h^vee * (coroot lattice), 0 otherwise.
// Requires h^vee | k so that the distinguished level-k weight exists.
int kostant_character(const RootDatum& d, const IVec& mu, long long k);

}  // namespace vt
