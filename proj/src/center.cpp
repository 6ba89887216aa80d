#include "verlinde/center.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace vt {

namespace {

void check_index(const RootDatum& d, int index) {
  if (index < 0 || index >= static_cast<int>(d.center_order))
    throw std::out_of_range("center element index out of range for " + to_string(d.type));
}

void check_slots(const ProductDatum& pd, size_t n, const char* what) {
  if (n != pd.factors.size())
    throw std::invalid_argument(std::string(what) + ": expected one entry per factor");
}

// Interior base point rho/c of the alcove; its translates identify the linear
// part of a central element's affine action without wall ambiguities.
QVec alcove_base_point(const RootDatum& d) {
  return QVec(d.rank, rat(1, static_cast<long>(d.dual_coxeter)));
}

}  // namespace

CenterElement center_element(const RootDatum& d, int index) {
  check_index(d, index);
  return CenterElement{&d, index};
}

CenterElement compose(const CenterElement& a, const CenterElement& b) {
  if (a.datum != b.datum)
    throw std::invalid_argument("cannot compose center elements of different groups");
  return CenterElement{a.datum, a.datum->center_mult[a.index][b.index]};
}

CenterElement inverse_of(const CenterElement& g) {
  return CenterElement{g.datum, g.datum->center_inv[g.index]};
}

long long element_order(const CenterElement& g) {
  // Recomputed by iteration rather than read from the datum tables, so the
  // two can be checked against each other.
  long long order = 1;
  CenterElement p = g;
  while (p.index != 0) {
    p = compose(p, g);
    ++order;
    if (order > g.datum->center_order) throw std::logic_error("center element order overflow");
  }
  return order;
}

WeylElement center_to_weyl(const CenterElement& g) {
  const RootDatum& d = *g.datum;
  QVec base = alcove_base_point(d);
  QVec shifted = base;
  const QVec& rep = g.coweight_rep_w();
  for (int i = 0; i < d.rank; ++i) shifted[i] += rep[i];
  AffineReduction r = affine_reduce(d, shifted);
  if (r.xi != base)
    throw std::logic_error("central translation failed to preserve the alcove base point");
  return r.w;
}

IVec act_on_level_weight(const CenterElement& g, const IVec& lam, long long k) {
  const RootDatum& d = *g.datum;
  if (static_cast<int>(lam.size()) != d.rank)
    throw std::invalid_argument("weight has the wrong rank");
  if (k < 0 || weight_level(d, lam) > k)
    throw std::invalid_argument("weight does not have level <= k");
  if (k == 0) return lam;  // the zero weight is the whole grid
  QVec x(d.rank);
  const QVec& rep = g.coweight_rep_w();
  for (int i = 0; i < d.rank; ++i) x[i] = rat_ll(lam[i]) / rat_ll(k) + rep[i];
  AffineReduction r = affine_reduce(d, x);
  IVec out(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    Rat q = rat_ll(k) * r.xi[i];
    if (!is_integer(q)) throw std::logic_error("center action produced a non-integral weight");
    out[i] = rat_to_ll(q);
  }
  return out;
}

Rat pairing_exponent(const CenterElement& g, const IVec& lam) {
  return frac_part(g.datum->inner_w(qvec_of(lam), g.coweight_rep_w()));
}

CycloNumber gamma_pairing(const CenterElement& g, const IVec& lam) {
  Rat q = pairing_exponent(g, lam);
  return root_of_unity(to_ll(Int(q.get_den())), to_ll(Int(q.get_num())));
}

long long ProductDatum::center_order() const {
  long long n = 1;
  for (const auto& d : factors) n *= d.center_order;
  return n;
}

ProductDatum make_product(const std::vector<LieType>& types) {
  if (types.empty()) throw std::invalid_argument("a product needs at least one factor");
  ProductDatum pd;
  for (const auto& t : types) pd.factors.push_back(build_root_datum(t));
  return pd;
}

CenterIdx center_identity(const ProductDatum& pd) {
  return CenterIdx(pd.factors.size(), 0);
}

CenterIdx center_compose(const ProductDatum& pd, const CenterIdx& a, const CenterIdx& b) {
  check_slots(pd, a.size(), "center element");
  check_slots(pd, b.size(), "center element");
  CenterIdx out(a.size());
  for (size_t j = 0; j < a.size(); ++j) {
    check_index(pd.factors[j], a[j]);
    check_index(pd.factors[j], b[j]);
    out[j] = pd.factors[j].center_mult[a[j]][b[j]];
  }
  return out;
}

CenterIdx center_inverse(const ProductDatum& pd, const CenterIdx& a) {
  check_slots(pd, a.size(), "center element");
  CenterIdx out(a.size());
  for (size_t j = 0; j < a.size(); ++j) {
    check_index(pd.factors[j], a[j]);
    out[j] = pd.factors[j].center_inv[a[j]];
  }
  return out;
}

std::vector<CenterIdx> all_center_elements(const ProductDatum& pd) {
  std::vector<CenterIdx> out;
  CenterIdx cur(pd.factors.size(), 0);
  while (true) {
    out.push_back(cur);
    int j = static_cast<int>(pd.factors.size()) - 1;
    while (j >= 0) {
      if (++cur[j] < static_cast<int>(pd.factors[j].center_order)) break;
      cur[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

int CenterSubgroup::position(const CenterIdx& g) const {
  auto it = std::lower_bound(elements.begin(), elements.end(), g);
  if (it == elements.end() || *it != g) return -1;
  return static_cast<int>(it - elements.begin());
}

CenterSubgroup center_subgroup(const ProductDatum& pd, const std::vector<CenterIdx>& generators) {
  std::set<CenterIdx> elems;
  CenterIdx id = center_identity(pd);
  elems.insert(id);
  std::vector<CenterIdx> frontier = {id};
  while (!frontier.empty()) {
    std::vector<CenterIdx> next;
    for (const auto& f : frontier)
      for (const auto& g : generators) {
        CenterIdx p = center_compose(pd, f, g);
        if (elems.insert(p).second) next.push_back(p);
      }
    frontier = std::move(next);
  }
  CenterSubgroup out;
  out.datum = &pd;
  out.elements.assign(elems.begin(), elems.end());
  for (const auto& a : out.elements) {
    if (out.position(center_inverse(pd, a)) < 0)
      throw std::logic_error("generated center subgroup is missing an inverse");
    for (const auto& b : out.elements)
      if (out.position(center_compose(pd, a, b)) < 0)
        throw std::logic_error("generated center subgroup is not closed");
  }
  return out;
}

CenterSubgroup full_center(const ProductDatum& pd) {
  CenterSubgroup out;
  out.datum = &pd;
  out.elements = all_center_elements(pd);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

CenterSubgroup trivial_subgroup(const ProductDatum& pd) {
  CenterSubgroup out;
  out.datum = &pd;
  out.elements = {center_identity(pd)};
  return out;
}

long long projected_order(const CenterSubgroup& G, int factor) {
  if (factor < 0 || factor >= static_cast<int>(G.datum->factors.size()))
    throw std::out_of_range("factor index out of range");
  std::set<int> image;
  for (const auto& g : G.elements) image.insert(g[factor]);
  return static_cast<long long>(image.size());
}

PWeight act_on_level_weight(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam,
                            const PLevel& k) {
  check_slots(pd, g.size(), "center element");
  check_slots(pd, lam.size(), "weight");
  check_slots(pd, k.size(), "level");
  PWeight out(lam.size());
  for (size_t j = 0; j < lam.size(); ++j)
    out[j] = act_on_level_weight(center_element(pd.factors[j], g[j]), lam[j], k[j]);
  return out;
}

Rat pairing_exponent(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam) {
  check_slots(pd, g.size(), "center element");
  check_slots(pd, lam.size(), "weight");
  Rat sum(0);
  for (size_t j = 0; j < lam.size(); ++j)
    sum += pairing_exponent(center_element(pd.factors[j], g[j]), lam[j]);
  return frac_part(sum);
}

CycloNumber gamma_pairing(const ProductDatum& pd, const CenterIdx& g, const PWeight& lam) {
  Rat q = pairing_exponent(pd, g, lam);
  return root_of_unity(to_ll(Int(q.get_den())), to_ll(Int(q.get_num())));
}

CenterSubgroup stabilizer(const CenterSubgroup& G, const PWeight& lam, const PLevel& k) {
  CenterSubgroup out;
  out.datum = G.datum;
  for (const auto& g : G.elements)
    if (act_on_level_weight(*G.datum, g, lam, k) == lam) out.elements.push_back(g);
  return out;
}

std::vector<CenterCharacter> enumerate_characters(const CenterSubgroup& G) {
  const ProductDatum& pd = *G.datum;
  const size_t n = G.elements.size();
  // Pairings against fundamental weights generate the full character group of
  // the product center, hence all characters of G by restriction.
  std::vector<QVec> gens;
  for (size_t j = 0; j < pd.factors.size(); ++j) {
    const RootDatum& d = pd.factors[j];
    for (int i = 0; i < d.rank; ++i) {
      IVec omega(d.rank, 0);
      omega[i] = 1;
      QVec v(n);
      for (size_t e = 0; e < n; ++e)
        v[e] = pairing_exponent(center_element(d, G.elements[e][j]), omega);
      gens.push_back(std::move(v));
    }
  }
  std::set<QVec> seen;
  QVec zero(n, Rat(0));
  seen.insert(zero);
  std::vector<QVec> frontier = {zero};
  while (!frontier.empty()) {
    std::vector<QVec> next;
    for (const auto& f : frontier)
      for (const auto& g : gens) {
        QVec sum(n);
        for (size_t e = 0; e < n; ++e) sum[e] = frac_part(f[e] + g[e]);
        if (seen.insert(sum).second) next.push_back(std::move(sum));
      }
    frontier = std::move(next);
  }
  if (seen.size() != n)
    throw std::logic_error("character count differs from the subgroup order");
  std::vector<CenterCharacter> out;
  out.reserve(n);
  for (const auto& v : seen) out.push_back(CenterCharacter{v});
  return out;
}

Rat character_exponent(const CenterSubgroup& G, const CenterCharacter& chi, const CenterIdx& g) {
  int pos = G.position(g);
  if (pos < 0) throw std::invalid_argument("element does not belong to the subgroup");
  return chi.exponents[pos];
}

CycloNumber character_value(const CenterSubgroup& G, const CenterCharacter& chi,
                            const CenterIdx& g) {
  Rat q = character_exponent(G, chi, g);
  return root_of_unity(to_ll(Int(q.get_den())), to_ll(Int(q.get_num())));
}

bool is_trivial_character(const CenterCharacter& chi) {
  return std::all_of(chi.exponents.begin(), chi.exponents.end(),
                     [](const Rat& q) { return q == 0; });
}

int epsilon(const CenterSubgroup& G, const std::vector<CenterCharacter>& phi,
            const CenterSubgroup& stab) {
  for (const auto& chi : phi)
    for (const auto& s : stab.elements)
      if (character_exponent(G, chi, s) != 0) return 0;
  return 1;
}

std::vector<PWeight> product_level_weights(const ProductDatum& pd, const PLevel& k) {
  check_slots(pd, k.size(), "level");
  std::vector<std::vector<IVec>> per_factor(pd.factors.size());
  for (size_t j = 0; j < pd.factors.size(); ++j) {
    if (k[j] < 0) throw std::invalid_argument("levels must be nonnegative");
    per_factor[j] = level_weights(pd.factors[j], k[j]);
  }
  std::vector<PWeight> out;
  PWeight cur(pd.factors.size());
  std::vector<size_t> pos(pd.factors.size(), 0);
  while (true) {
    for (size_t j = 0; j < pd.factors.size(); ++j) cur[j] = per_factor[j][pos[j]];
    out.push_back(cur);
    int j = static_cast<int>(pd.factors.size()) - 1;
    while (j >= 0) {
      if (++pos[j] < per_factor[j].size()) break;
      pos[j] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return out;
}

std::vector<PWeight> restricted_level_weights(const ProductDatum& pd, const CenterSubgroup& G,
                                              const PLevel& k) {
  std::vector<PWeight> out;
  for (const auto& lam : product_level_weights(pd, k)) {
    bool keep = true;
    for (const auto& g : G.elements)
      if (pairing_exponent(pd, g, lam) != 0) {
        keep = false;
        break;
      }
    if (keep) out.push_back(lam);
  }
  // The quotient-torus weights are permuted by the center action whenever the
  // level pairs the subgroup's coweights integrally; otherwise the restricted
  // set is not a meaningful orbit domain and the query is rejected.
  std::set<PWeight> member(out.begin(), out.end());
  for (const auto& lam : out)
    for (const auto& g : G.elements)
      if (!member.count(act_on_level_weight(pd, g, lam, k)))
        throw std::domain_error(
            "restricted weight set is not closed under the center action at this level");
  return out;
}

std::vector<CenterOrbit> orbit_representatives(const CenterSubgroup& G, const PLevel& k) {
  const ProductDatum& pd = *G.datum;
  std::vector<PWeight> restricted = restricted_level_weights(pd, G, k);
  std::set<PWeight> remaining(restricted.begin(), restricted.end());
  std::vector<CenterOrbit> out;
  for (const auto& lam : restricted) {
    if (!remaining.count(lam)) continue;
    std::set<PWeight> orbit;
    for (const auto& g : G.elements) orbit.insert(act_on_level_weight(pd, g, lam, k));
    for (const auto& p : orbit) remaining.erase(p);
    CenterOrbit o;
    o.rep = *orbit.begin();
    o.size = static_cast<long long>(orbit.size());
    if (G.order() % o.size != 0)
      throw std::logic_error("orbit size does not divide the subgroup order");
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace vt
