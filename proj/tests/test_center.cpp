#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "verlinde/center.hpp"
#include "verlinde/characters.hpp"
#include "verlinde/root_datum.hpp"

using namespace vt;

namespace {

const RootDatum& datum(char family, int rank) {
  static std::map<std::pair<char, int>, RootDatum> cache;
  auto key = std::make_pair(family, rank);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_root_datum(LieType{family, rank})).first;
  return it->second;
}

// Center element of a single-factor datum identified by its ambient coweight.
int center_index_by_ambient(const RootDatum& d, const QVec& ambient) {
  for (int i = 0; i < static_cast<int>(d.center_coweight_reps.size()); ++i)
    if (d.center_coweight_reps[i] == ambient) return i;
  FAIL("no center element with the requested coweight representative");
  return -1;
}

ProductDatum single(char family, int rank) { return make_product({LieType{family, rank}}); }

}  // namespace

TEST_CASE("center subgroups: construction, closure, abstract structure") {
  struct Expect {
    char family;
    int rank;
    long long order;
    bool cyclic;
  };
  // Center orders and cyclic/Klein structure per family.
  const std::vector<Expect> table = {
      {'A', 1, 2, true},  {'A', 2, 3, true},  {'A', 3, 4, true},  {'A', 4, 5, true},
      {'B', 2, 2, true},  {'B', 3, 2, true},  {'C', 3, 2, true},  {'C', 4, 2, true},
      {'D', 4, 4, false}, {'D', 5, 4, true},  {'D', 6, 4, false}, {'G', 2, 1, true},
      {'F', 4, 1, true},  {'E', 6, 3, true},  {'E', 7, 2, true},  {'E', 8, 1, true},
  };
  for (const auto& e : table) {
    const RootDatum& d = datum(e.family, e.rank);
    CAPTURE(std::string(to_string(d.type)));
    CHECK(d.center_order == e.order);
    long long max_order = 0;
    for (int i = 0; i < d.center_order; ++i) {
      CenterElement g = center_element(d, i);
      long long o = element_order(g);
      CHECK(d.center_elt_order[i] == o);
      max_order = std::max(max_order, o);
    }
    if (e.cyclic)
      CHECK(max_order == e.order);  // some element generates
    else
      CHECK(max_order == 2);  // Klein four-group
  }

  const RootDatum& a3 = datum('A', 3);
  CenterElement gen = center_element(a3, 1);
  CHECK(element_order(gen) == 4);
  CenterElement sq = compose(gen, gen);
  CHECK(element_order(sq) == 2);
  CHECK(compose(sq, sq).index == 0);
  CHECK(compose(gen, inverse_of(gen)).index == 0);
  CHECK_THROWS_AS((void)center_element(a3, 4), std::out_of_range);
  CHECK_THROWS_AS((void)compose(center_element(a3, 1), center_element(datum('A', 1), 1)),
                  std::invalid_argument);

  // Subgroups of a single factor.
  ProductDatum pa3 = single('A', 3);
  CHECK(pa3.center_order() == 4);
  CenterSubgroup full = full_center(pa3);
  CHECK(full.order() == 4);
  CHECK(full.elements.front() == CenterIdx{0});
  CenterSubgroup half = center_subgroup(pa3, {CenterIdx{sq.index}});
  CHECK(half.order() == 2);
  CHECK(trivial_subgroup(pa3).order() == 1);
  for (const auto& a : half.elements)
    for (const auto& b : half.elements) {
      CHECK(half.position(center_compose(pa3, a, b)) >= 0);
      CHECK(half.position(center_inverse(pa3, a)) >= 0);
    }

  // Subgroups of a product, including ones that are not products of subgroups.
  ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 1}});
  CHECK(aa.center_order() == 4);
  CHECK(full_center(aa).order() == 4);
  CenterSubgroup diag = center_subgroup(aa, {CenterIdx{1, 1}});
  CHECK(diag.order() == 2);
  CHECK(projected_order(diag, 0) == 2);
  CHECK(projected_order(diag, 1) == 2);
  CenterSubgroup right = center_subgroup(aa, {CenterIdx{0, 1}});
  CHECK(right.order() == 2);
  CHECK(projected_order(right, 0) == 1);
  CHECK(projected_order(right, 1) == 2);

  // Z_3 x Z_2 is cyclic of order six, so one mixed generator gives the full center.
  ProductDatum a2a1 = make_product({LieType{'A', 2}, LieType{'A', 1}});
  CenterSubgroup six = center_subgroup(a2a1, {CenterIdx{1, 1}});
  CHECK(six.order() == 6);
  CHECK(projected_order(six, 0) == 3);
  CHECK(projected_order(six, 1) == 2);
}

TEST_CASE("center embedding into the Weyl group") {
  // Identity goes to the identity.
  for (char f : {'A', 'D'}) {
    const RootDatum& d = datum(f, 4);
    WeylElement w = center_to_weyl(center_element(d, 0));
    CHECK(w.word.empty());
    CHECK(w.wmat == IMat::identity(d.rank));
  }

  // A_1: the nontrivial central element maps to the simple reflection.
  {
    const RootDatum& d = datum('A', 1);
    WeylElement w = center_to_weyl(center_element(d, 1));
    CHECK(w.word == std::vector<int>{0});
    CHECK(w.wmat(0, 0) == -1);
    CHECK(w.matrix(0, 1) == 1);  // swaps the two ambient coordinates
    CHECK(w.matrix(1, 0) == 1);
  }

  // D_N closed forms. The coweight (1,0,...,0) flips the first and last
  // ambient coordinates; for even N the coweight (1,...,1)/2 reverses the
  // coordinates and negates them all.
  for (int n : {4, 5, 6}) {
    const RootDatum& d = datum('D', n);
    CAPTURE(n);
    QVec vec(n, Rat(0));
    vec[0] = Rat(1);
    WeylElement w1 = center_to_weyl(center_element(d, center_index_by_ambient(d, vec)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rat expect = (i == j) ? ((i == 0 || i == n - 1) ? Rat(-1) : Rat(1)) : Rat(0);
        CHECK(w1.matrix(i, j) == expect);
      }
    if (n % 2 == 0) {
      QVec spin(n, rat(1, 2));
      WeylElement w2 = center_to_weyl(center_element(d, center_index_by_ambient(d, spin)));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(w2.matrix(i, j) == (j == n - 1 - i ? Rat(-1) : Rat(0)));
    }
  }

  // Injective homomorphism across all types with nontrivial center.
  for (auto t : {LieType{'A', 2}, LieType{'A', 3}, LieType{'A', 4}, LieType{'B', 3},
                 LieType{'C', 3}, LieType{'D', 4}, LieType{'D', 5}, LieType{'E', 6},
                 LieType{'E', 7}}) {
    const RootDatum& d = datum(t.family, t.rank);
    CAPTURE(std::string(to_string(t)));
    std::vector<WeylElement> img;
    for (int i = 0; i < d.center_order; ++i) img.push_back(center_to_weyl(center_element(d, i)));
    for (int i = 0; i < d.center_order; ++i) {
      CHECK((img[i].wmat == IMat::identity(d.rank)) == (i == 0));
      for (int j = 0; j < i; ++j) CHECK_FALSE(img[i].wmat == img[j].wmat);
      for (int j = 0; j < d.center_order; ++j) {
        int ij = d.center_mult[i][j];
        CHECK(img[ij].wmat == imat_mul(img[i].wmat, img[j].wmat));
      }
    }
  }
}

TEST_CASE("center action on level weights") {
  // A_1 at level 4: m omega -> (4-m) omega; 2 omega is the fixed midpoint.
  {
    const RootDatum& d = datum('A', 1);
    CenterElement g = center_element(d, 1);
    for (long long m = 0; m <= 4; ++m) {
      CHECK(act_on_level_weight(g, IVec{m}, 4) == IVec{4 - m});
      CHECK(act_on_level_weight(center_element(d, 0), IVec{m}, 4) == IVec{m});
    }
    CHECK(act_on_level_weight(g, IVec{2}, 4) == IVec{2});
  }

  // Group action, bijectivity, and preservation of the level grid.
  for (auto t : {LieType{'A', 2}, LieType{'A', 3}, LieType{'D', 4}}) {
    const RootDatum& d = datum(t.family, t.rank);
    CAPTURE(std::string(to_string(t)));
    long long k = (t.family == 'A' && t.rank == 2) ? 3 : 2;
    auto grid = level_weights(d, k);
    for (int i = 0; i < d.center_order; ++i) {
      CenterElement gi = center_element(d, i);
      std::set<IVec> image;
      for (const auto& lam : grid) image.insert(act_on_level_weight(gi, lam, k));
      CHECK(image.size() == grid.size());  // permutation of the grid
      CHECK(std::set<IVec>(grid.begin(), grid.end()) == image);
      for (int j = 0; j < d.center_order; ++j) {
        CenterElement gj = center_element(d, j);
        CenterElement gij = compose(gi, gj);
        for (const auto& lam : grid)
          CHECK(act_on_level_weight(gi, act_on_level_weight(gj, lam, k), k) ==
                act_on_level_weight(gij, lam, k));
      }
    }
  }

  // Product action works slotwise with independent levels.
  {
    ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 2}});
    PWeight lam = {{3}, {1, 0}};
    PLevel k = {4, 3};
    PWeight moved = act_on_level_weight(aa, CenterIdx{1, 1}, lam, k);
    CHECK(moved[0] == IVec{1});
    CHECK(moved[1] == act_on_level_weight(center_element(aa.factors[1], 1), IVec{1, 0}, 3));
    CHECK_THROWS_AS((void)act_on_level_weight(aa, CenterIdx{1}, lam, k), std::invalid_argument);
  }
}

TEST_CASE("center stabilizers of level weights") {
  {
    ProductDatum pa1 = single('A', 1);
    CenterSubgroup full = full_center(pa1);
    CHECK(stabilizer(full, PWeight{{1}}, PLevel{4}).order() == 1);
    CHECK(stabilizer(full, PWeight{{2}}, PLevel{4}).order() == 2);
    CHECK(stabilizer(full, PWeight{{3}}, PLevel{4}).order() == 1);
  }

  // The weight (k/c) rho is fixed by the whole center whenever c divides k.
  struct Case {
    char family;
    int rank;
    long long k;
  };
  for (auto c : {Case{'A', 1, 2}, Case{'A', 1, 4}, Case{'A', 2, 3}, Case{'A', 2, 6},
                 Case{'A', 3, 4}, Case{'A', 4, 5}, Case{'D', 4, 6}}) {
    ProductDatum pd = single(c.family, c.rank);
    const RootDatum& d = pd.factors[0];
    CAPTURE(std::string(to_string(d.type)));
    REQUIRE(c.k % d.dual_coxeter == 0);
    IVec lam0(d.rank, c.k / d.dual_coxeter);
    CenterSubgroup stab = stabilizer(full_center(pd), PWeight{lam0}, PLevel{c.k});
    CHECK(stab.order() == d.center_order);
  }

  // Lagrange: stabilizer orders divide the group order.
  {
    ProductDatum pd = single('A', 3);
    CenterSubgroup full = full_center(pd);
    for (const auto& lam : level_weights(pd.factors[0], 3)) {
      long long s = stabilizer(full, PWeight{lam}, PLevel{3}).order();
      CHECK(4 % s == 0);
    }
  }

  // Diagonal subgroup of a square: both slots must be fixed simultaneously.
  {
    ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 1}});
    CenterSubgroup diag = center_subgroup(aa, {CenterIdx{1, 1}});
    CHECK(stabilizer(diag, PWeight{{2}, {2}}, PLevel{4, 4}).order() == 2);
    CHECK(stabilizer(diag, PWeight{{2}, {1}}, PLevel{4, 4}).order() == 1);
    CHECK(stabilizer(full_center(aa), PWeight{{2}, {1}}, PLevel{4, 4}).order() == 2);
  }
}

TEST_CASE("center pairing with weights") {
  // A_1: the nontrivial element pairs to (-1)^m on m omega.
  {
    const RootDatum& d = datum('A', 1);
    CenterElement g = center_element(d, 1);
    CHECK(gamma_pairing(g, IVec{0}) == cyclo_rational(Rat(1)));
    CHECK(gamma_pairing(g, IVec{1}) == cyclo_rational(Rat(-1)));
    CHECK(gamma_pairing(g, IVec{2}) == cyclo_rational(Rat(1)));
    CHECK(gamma_pairing(center_element(d, 0), IVec{7}) == cyclo_rational(Rat(1)));
    CHECK(pairing_exponent(g, IVec{1}) == rat(1, 2));
  }

  // A_3: explicit fourth roots of unity from the weight Gram matrix.
  {
    const RootDatum& d = datum('A', 3);
    QVec omega1 = d.fundamental_weights[0];
    CenterElement g = center_element(d, center_index_by_ambient(d, omega1));
    CHECK(gamma_pairing(g, IVec{1, 0, 0}) == root_of_unity(4, 3));
    CHECK(gamma_pairing(g, IVec{0, 0, 1}) == root_of_unity(4, 1));
    CHECK(gamma_pairing(g, IVec{0, 1, 0}) == root_of_unity(2, 1));
  }

  // Bimultiplicativity and order dividing the center order.
  for (auto t : {LieType{'A', 2}, LieType{'A', 3}, LieType{'D', 4}, LieType{'D', 5}}) {
    const RootDatum& d = datum(t.family, t.rank);
    CAPTURE(std::string(to_string(t)));
    auto grid = level_weights(d, 2);
    for (int i = 0; i < d.center_order; ++i) {
      CenterElement gi = center_element(d, i);
      for (const auto& lam : grid)
        CHECK(cyclo_pow(gamma_pairing(gi, lam), d.center_order) == cyclo_rational(Rat(1)));
      for (int j = 0; j < d.center_order; ++j) {
        CenterElement gj = center_element(d, j);
        for (const auto& lam : grid)
          CHECK(gamma_pairing(compose(gi, gj), lam) ==
                mul(gamma_pairing(gi, lam), gamma_pairing(gj, lam)));
      }
      for (const auto& lam : grid)
        for (const auto& nu : grid) {
          IVec sum(lam.size());
          for (size_t a = 0; a < lam.size(); ++a) sum[a] = lam[a] + nu[a];
          CHECK(gamma_pairing(gi, sum) == mul(gamma_pairing(gi, lam), gamma_pairing(gi, nu)));
        }
    }
  }

  // Product pairing multiplies the slot pairings.
  {
    ProductDatum pd = make_product({LieType{'A', 1}, LieType{'A', 2}});
    PWeight lam = {{1}, {1, 0}};
    CycloNumber lhs = gamma_pairing(pd, CenterIdx{1, 1}, lam);
    CycloNumber rhs = mul(gamma_pairing(center_element(pd.factors[0], 1), IVec{1}),
                          gamma_pairing(center_element(pd.factors[1], 1), IVec{1, 0}));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("characters transform by the pairing under the center action") {
  struct Case {
    char family;
    int rank;
    long long k;
  };
  for (auto c : {Case{'A', 1, 4}, Case{'A', 2, 3}, Case{'A', 3, 2}}) {
    const RootDatum& d = datum(c.family, c.rank);
    CAPTURE(std::string(to_string(d.type)));
    auto grid = level_weights(d, c.k);
    for (int i = 0; i < d.center_order; ++i) {
      CenterElement g = center_element(d, i);
      for (const auto& lam : grid) {
        SpecialPoint t = make_special_point(d, c.k, lam);
        CycloNumber pairing = gamma_pairing(g, lam);
        for (const auto& mu : grid) {
          IVec gmu = act_on_level_weight(g, mu, c.k);
          CHECK(eval_character(d, gmu, t.xi_w) == mul(pairing, eval_character(d, mu, t.xi_w)));
        }
      }
    }
  }
}

TEST_CASE("pairing sums detect weights of the quotient torus") {
  struct Case {
    ProductDatum pd;
    CenterSubgroup sub;
    PLevel k;
  };
  std::vector<Case> cases;
  {
    ProductDatum p = single('A', 1);
    CenterSubgroup s = full_center(p);
    cases.push_back({std::move(p), std::move(s), PLevel{4}});
  }
  {
    ProductDatum p = single('A', 2);
    CenterSubgroup s = full_center(p);
    cases.push_back({std::move(p), std::move(s), PLevel{3}});
  }
  {
    ProductDatum p = single('A', 3);
    CenterSubgroup s = center_subgroup(p, {CenterIdx{2}});  // index-two subgroup
    cases.push_back({std::move(p), std::move(s), PLevel{2}});
  }
  for (auto& c : cases) {
    c.sub.datum = &c.pd;  // rebind after the vector moves
    CAPTURE(std::string(to_string(c.pd.factors[0].type)));
    auto all = product_level_weights(c.pd, c.k);
    auto restricted = restricted_level_weights(c.pd, c.sub, c.k);
    std::set<PWeight> member(restricted.begin(), restricted.end());
    for (const auto& lam : all) {
      CycloNumber sum = cyclo_zero();
      for (const auto& g : c.sub.elements) sum = add(sum, gamma_pairing(c.pd, g, lam));
      Rat expect = member.count(lam) ? Rat(static_cast<long>(c.sub.order())) : Rat(0);
      CHECK(sum == cyclo_rational(expect));
    }
  }
}

TEST_CASE("restricted level weight sets") {
  // Trivial subgroup keeps everything.
  {
    ProductDatum pd = single('B', 2);
    CHECK(restricted_level_weights(pd, trivial_subgroup(pd), PLevel{3}) ==
          product_level_weights(pd, PLevel{3}));
  }

  // A_1 mod Z_2 at level 4: even weights only.
  {
    ProductDatum pd = single('A', 1);
    auto r = restricted_level_weights(pd, full_center(pd), PLevel{4});
    CHECK(r == std::vector<PWeight>{{{0}}, {{2}}, {{4}}});
  }

  // A_2 mod Z_3 at level 3: coordinates congruent mod three (the root lattice).
  {
    ProductDatum pd = single('A', 2);
    auto r = restricted_level_weights(pd, full_center(pd), PLevel{3});
    CHECK(r == std::vector<PWeight>{{{0, 0}}, {{0, 3}}, {{1, 1}}, {{3, 0}}});
    for (const auto& lam : r) CHECK((lam[0][0] - lam[0][1]) % 3 == 0);
  }

  // A_3 under the full Z_4 (level 4) and under its Z_2 subgroup (level 2).
  {
    ProductDatum pd = single('A', 3);
    auto r4 = restricted_level_weights(pd, full_center(pd), PLevel{4});
    std::vector<PWeight> expect4 = {{{0, 0, 0}}, {{0, 0, 4}}, {{0, 1, 2}}, {{0, 2, 0}},
                                    {{0, 4, 0}}, {{1, 0, 1}}, {{1, 2, 1}}, {{2, 0, 2}},
                                    {{2, 1, 0}}, {{4, 0, 0}}};
    CHECK(r4 == expect4);
    for (const auto& lam : r4) CHECK((3 * lam[0][0] + 2 * lam[0][1] + lam[0][2]) % 4 == 0);
    auto r2 = restricted_level_weights(pd, center_subgroup(pd, {CenterIdx{2}}), PLevel{2});
    CHECK(r2.size() == 6);
    for (const auto& lam : r2) CHECK((lam[0][0] + lam[0][2]) % 2 == 0);
    // At level 2 the full Z_4 does not permute its restricted set (the level
    // fails to pair the generating coweight integrally with itself), so the
    // query is rejected.
    CHECK_THROWS_AS((void)restricted_level_weights(pd, full_center(pd), PLevel{2}),
                    std::domain_error);
  }

  // Diagonal subgroup of A_1 x A_1: the condition couples the slots.
  {
    ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 1}});
    CenterSubgroup diag = center_subgroup(aa, {CenterIdx{1, 1}});
    auto r = restricted_level_weights(aa, diag, PLevel{2, 2});
    CHECK(r.size() == 5);  // parity-correlated pairs, not a 2x2 product
    CHECK(std::count(r.begin(), r.end(), PWeight{{1}, {1}}) == 1);
    CHECK(std::count(r.begin(), r.end(), PWeight{{1}, {0}}) == 0);
  }
}

TEST_CASE("center orbits on restricted weights") {
  // Trivial subgroup: every weight is its own orbit.
  {
    ProductDatum pd = single('A', 2);
    auto orbits = orbit_representatives(trivial_subgroup(pd), PLevel{2});
    CHECK(orbits.size() == product_level_weights(pd, PLevel{2}).size());
    for (const auto& o : orbits) CHECK(o.size == 1);
  }

  // A_1 mod Z_2 at level 4: orbits {0, 4w} and {2w}.
  {
    ProductDatum pd = single('A', 1);
    auto orbits = orbit_representatives(full_center(pd), PLevel{4});
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].rep == PWeight{{0}});
    CHECK(orbits[0].size == 2);
    CHECK(orbits[1].rep == PWeight{{2}});
    CHECK(orbits[1].size == 1);
  }

  // A_2 mod Z_3 at level 3: the vacuum orbit has size three, rho is fixed.
  {
    ProductDatum pd = single('A', 2);
    CenterSubgroup full = full_center(pd);
    auto orbits = orbit_representatives(full, PLevel{3});
    REQUIRE(orbits.size() == 2);
    CHECK(orbits[0].rep == PWeight{{0, 0}});
    CHECK(orbits[0].size == 3);
    CHECK(orbits[1].rep == PWeight{{1, 1}});
    CHECK(orbits[1].size == 1);
    long long total = 0;
    for (const auto& o : orbits) {
      total += o.size;
      CHECK(o.size * stabilizer(full, o.rep, PLevel{3}).order() == full.order());
    }
    CHECK(total == 4);  // the whole restricted set
  }
}

TEST_CASE("characters of a center subgroup") {
  // Counts: one character per group element; the first is trivial.
  struct Case {
    ProductDatum pd;
    CenterSubgroup sub;
  };
  std::vector<Case> cases;
  {
    ProductDatum p = single('A', 1);
    CenterSubgroup s = full_center(p);
    cases.push_back({std::move(p), std::move(s)});
  }
  {
    ProductDatum p = single('A', 2);
    CenterSubgroup s = full_center(p);
    cases.push_back({std::move(p), std::move(s)});
  }
  {
    ProductDatum p = single('D', 4);
    CenterSubgroup s = full_center(p);
    cases.push_back({std::move(p), std::move(s)});
  }
  {
    ProductDatum p = make_product({LieType{'A', 1}, LieType{'A', 1}});
    CenterSubgroup s = center_subgroup(p, {CenterIdx{1, 1}});
    cases.push_back({std::move(p), std::move(s)});
  }
  for (auto& c : cases) {
    c.sub.datum = &c.pd;
    CAPTURE(c.pd.factors.size());
    CAPTURE(std::string(to_string(c.pd.factors[0].type)));
    auto chars = enumerate_characters(c.sub);
    REQUIRE(static_cast<long long>(chars.size()) == c.sub.order());
    CHECK(is_trivial_character(chars[0]));
    for (size_t a = 1; a < chars.size(); ++a) CHECK_FALSE(is_trivial_character(chars[a]));
    for (const auto& chi : chars) {
      // Multiplicative, valued in #Gamma-th roots of unity.
      for (const auto& q : chi.exponents) CHECK(c.sub.order() % rat_to_ll(Rat(q.get_den())) == 0);
      for (const auto& g : c.sub.elements)
        for (const auto& h : c.sub.elements) {
          Rat lhs = character_exponent(c.sub, chi, center_compose(c.pd, g, h));
          Rat rhs = frac_part(character_exponent(c.sub, chi, g) +
                              character_exponent(c.sub, chi, h));
          CHECK(lhs == rhs);
        }
      // Orthogonality: the sum over the group detects the trivial character.
      CycloNumber sum = cyclo_zero();
      for (const auto& g : c.sub.elements) sum = add(sum, character_value(c.sub, chi, g));
      Rat expect = is_trivial_character(chi) ? Rat(static_cast<long>(c.sub.order())) : Rat(0);
      CHECK(sum == cyclo_rational(expect));
    }
    // Distinct characters.
    for (size_t a = 0; a < chars.size(); ++a)
      for (size_t b = 0; b < a; ++b) CHECK_FALSE(chars[a].exponents == chars[b].exponents);
  }
}

TEST_CASE("epsilon factor of a character tuple") {
  ProductDatum pd = single('A', 1);
  CenterSubgroup full = full_center(pd);
  auto chars = enumerate_characters(full);
  REQUIRE(chars.size() == 2);
  const CenterCharacter& triv = chars[0];
  const CenterCharacter& sgn = chars[1];

  CenterSubgroup stab_fixed = stabilizer(full, PWeight{{2}}, PLevel{4});  // all of Z_2
  CenterSubgroup stab_free = stabilizer(full, PWeight{{1}}, PLevel{4});   // just {e}
  REQUIRE(stab_fixed.order() == 2);
  REQUIRE(stab_free.order() == 1);

  CHECK(epsilon(full, {triv, triv}, stab_fixed) == 1);
  CHECK(epsilon(full, {triv, triv}, stab_free) == 1);
  CHECK(epsilon(full, {sgn, triv}, stab_fixed) == 0);
  CHECK(epsilon(full, {triv, sgn}, stab_fixed) == 0);
  CHECK(epsilon(full, {sgn, sgn}, stab_free) == 1);

  // Constant along orbits: evaluate on every member of each orbit.
  for (auto c : {LieType{'A', 1}, LieType{'A', 2}}) {
    ProductDatum p = single(c.family, c.rank);
    CenterSubgroup g = full_center(p);
    PLevel k{c.rank == 1 ? 4 : 3};
    auto cs = enumerate_characters(g);
    for (const auto& lam : restricted_level_weights(p, g, k))
      for (const auto& c1 : cs)
        for (const auto& c2 : cs) {
          int base = epsilon(g, {c1, c2}, stabilizer(g, lam, k));
          for (const auto& el : g.elements) {
            PWeight moved = act_on_level_weight(p, el, lam, k);
            CHECK(epsilon(g, {c1, c2}, stabilizer(g, moved, k)) == base);
          }
        }
  }

  // Product group: a slot character that is nontrivial on the diagonal
  // stabilizer kills the contribution.
  {
    ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 1}});
    CenterSubgroup diag = center_subgroup(aa, {CenterIdx{1, 1}});
    auto cs = enumerate_characters(diag);
    REQUIRE(cs.size() == 2);
    CenterSubgroup stab = stabilizer(diag, PWeight{{2}, {2}}, PLevel{4, 4});
    REQUIRE(stab.order() == 2);
    CHECK(epsilon(diag, {cs[0], cs[0]}, stab) == 1);
    CHECK(epsilon(diag, {cs[1], cs[0]}, stab) == 0);
  }
}

TEST_CASE("the exceptional alcove point is fixed by the whole center") {
  for (auto t : {LieType{'A', 1}, LieType{'A', 2}, LieType{'A', 3}, LieType{'A', 4},
                 LieType{'B', 2}, LieType{'B', 3}, LieType{'C', 3}, LieType{'D', 4},
                 LieType{'D', 5}, LieType{'G', 2}, LieType{'F', 4}, LieType{'E', 6},
                 LieType{'E', 7}}) {
    const RootDatum& d = datum(t.family, t.rank);
    CAPTURE(std::string(to_string(t)));
    QVec xi0(d.rank, rat(1, d.dual_coxeter));
    for (int i = 0; i < d.center_order; ++i) {
      QVec shifted = xi0;
      const QVec& rep = center_element(d, i).coweight_rep_w();
      for (int a = 0; a < d.rank; ++a) shifted[a] += rep[a];
      CHECK(affine_reduce(d, shifted).xi == xi0);
    }
  }
}

TEST_CASE("product level weight enumeration") {
  ProductDatum aa = make_product({LieType{'A', 1}, LieType{'A', 1}});
  auto grid = product_level_weights(aa, PLevel{1, 1});
  std::vector<PWeight> expect = {{{0}, {0}}, {{0}, {1}}, {{1}, {0}}, {{1}, {1}}};
  CHECK(grid == expect);
  CHECK_THROWS_AS((void)product_level_weights(aa, PLevel{1}), std::invalid_argument);

  ProductDatum mixed = make_product({LieType{'A', 2}, LieType{'A', 1}});
  auto g2 = product_level_weights(mixed, PLevel{1, 2});
  CHECK(g2.size() == 9);  // 3 level-1 weights of A_2 times 3 level-2 weights of A_1
  CHECK(std::is_sorted(g2.begin(), g2.end()));
}
