#pragma once

#include <vector>

#include "verlinde/cyclotomic.hpp"
#include "verlinde/root_datum.hpp"

namespace vt {

// A central element of a single simple factor, indexed against the tables in
// its RootDatum. The coweight representative generates the translation part
// of the element's affine action on the alcove.
struct CenterElement {
  const RootDatum* datum = nullptr;
  int index = 0;

  const QVec& coweight_rep() const { return datum->center_coweight_reps[index]; }
  const QVec& coweight_rep_w() const { return datum->center_coweight_reps_w[index]; }
};

CenterElement center_element(const RootDatum& d, int index);  // bounds-checked
CenterElement compose(const CenterElement& a, const CenterElement& b);
CenterElement inverse_of(const CenterElement& g);
long long element_order(const CenterElement& g);

// The unique Weyl element w with gamma * exp(alcove) = w(exp(alcove)): the
// linear part of the affine self-map of the alcove induced by gamma. This is
// an injective group homomorphism from the center into the Weyl group.
WeylElement center_to_weyl(const CenterElement& g);

// Level-preserving action on level-k weights: k * reduce(lam/k + xi_gamma).
IVec act_on_level_weight(const CenterElement& g, const IVec& lam, long long k);

// The pairing <lam, xi_gamma> mod 1, and the root of unity e^{2 pi i <.,.>}.
Rat pairing_exponent(const CenterElement& g, const IVec& lam);
CycloNumber gamma_pairing(const CenterElement& g, const IVec& lam);

// ---------------------------------------------------------------------------
// Products of simple factors. Weights, levels and central elements of a
// product carry one entry per factor.

struct ProductDatum {
  std::vector<RootDatum> factors;

  long long center_order() const;
};

ProductDatum make_product(const std::vector<LieType>& types);

using CenterIdx = std::vector<int>;     // center element, one index per factor
using PWeight = std::vector<IVec>;      // dominant weight per factor
using PLevel = std::vector<long long>;  // level per factor

CenterIdx center_identity(const ProductDatum& pd);
CenterIdx center_compose(const ProductDatum& pd, const CenterIdx& a, const CenterIdx& b);
CenterIdx center_inverse(const ProductDatum& pd, const CenterIdx& a);
std::vector<CenterIdx> all_center_elements(const ProductDatum& pd);

// A subgroup of the product center, not necessarily a product of per-factor
// subgroups. Elements are kept sorted, so the identity comes first.
struct CenterSubgroup {
  const ProductDatum* datum = nullptr;
  std::vector<CenterIdx> elements;

  long long order() const { return static_cast<long long>(elements.size()); }
  int position(const CenterIdx& g) const;  // -1 when absent
};

CenterSubgroup center_subgroup(const ProductDatum& pd, const std::vector<CenterIdx>& generators);
CenterSubgroup full_center(const ProductDatum& pd);
CenterSubgroup trivial_subgroup(const ProductDatum& pd);

// Size of the image of the subgroup under projection to one factor.
long long projected_order(const CenterSubgroup& G, int factor);

PWeight act_on_level_weight(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam,
                            const PLevel& k);
Rat pairing_exponent(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam);
CycloNumber gamma_pairing(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam);

CenterSubgroup stabilizer(const CenterSubgroup& G, const PWeight& lam, const PLevel& k);

// A character of a subgroup, stored as exponents q(g) in [0,1) aligned with
// the subgroup's element order; the value at g is e^{2 pi i q(g)}.
struct CenterCharacter {
  QVec exponents;
};

// All characters of G (exactly #G of them), sorted with the trivial one first.
std::vector<CenterCharacter> enumerate_characters(const CenterSubgroup& G);
Rat character_exponent(const CenterSubgroup& G, const CenterCharacter& chi, const CenterIdx& g);
CycloNumber character_value(const CenterSubgroup& G, const CenterCharacter& chi,
                            const CenterIdx& g);
bool is_trivial_character(const CenterCharacter& chi);

// 1 when every slot character restricts trivially to the subgroup `stab` of
// G, 0 otherwise.
int epsilon(const CenterSubgroup& G, const std::vector<CenterCharacter>& phi,
            const CenterSubgroup& stab);

// Dominant weights of the product with per-factor level bounds, ascending.
std::vector<PWeight> product_level_weights(const ProductDatum& pd, const PLevel& k);

// The level weights that pair trivially with every element of G: the weights
// of the torus of the quotient group. Closed under the G-action (asserted).
std::vector<PWeight> restricted_level_weights(const ProductDatum& pd, const CenterSubgroup& G,
                                              const PLevel& k);

struct CenterOrbit {
  PWeight rep;  // lexicographically least member
  long long size = 0;
};

// One entry per G-orbit on the restricted level weights.
std::vector<CenterOrbit> orbit_representatives(const CenterSubgroup& G, const PLevel& k);

}  // namespace vt
