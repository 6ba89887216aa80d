#include "verlinde/verlinde_sums.hpp"

#include <algorithm>
#include <atomic>
#include <complex>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "verlinde/characters.hpp"

namespace vt {

namespace {

std::atomic<int> g_threads{1};

// Shared per-(type, level) tables: the weight list, the attached regular
// torus points, the squared Jacobians (with inverses filled on first use) and
// character value rows. One coarse mutex guards the cache; the summation
// workers only ever read fully built tables.
struct FactorTable {
  std::vector<IVec> lams;
  std::map<IVec, int> index;
  std::vector<QVec> xi;
  std::vector<CycloNumber> jsq;
  std::vector<CycloNumber> jsq_inv;
  std::map<IVec, std::vector<CycloNumber>> rows;
  // |J|^{2-2h} rows keyed by genus (h >= 2), and ready-made summand rows
  // conj(char) * |J|^{2-2h} keyed by (weight, genus).  The product rows are
  // pinned by shared pointers so a FIFO eviction never invalidates a row a
  // running summation still holds.
  std::map<long long, std::vector<CycloNumber>> pw_rows;
  std::map<std::pair<IVec, long long>, std::shared_ptr<const std::vector<CycloNumber>>>
      prod_rows;
  std::deque<std::pair<IVec, long long>> prod_order;
};

std::mutex g_cache_mutex;
std::map<std::tuple<char, int, long long>, std::shared_ptr<FactorTable>> g_cache;

std::shared_ptr<FactorTable> factor_table(const RootDatum& d, long long k) {
  const std::tuple<char, int, long long> key{d.type.family, d.type.rank, k};
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_cache.find(key);
  if (it != g_cache.end()) return it->second;
  auto t = std::make_shared<FactorTable>();
  t->lams = level_weights(d, k);
  t->xi.reserve(t->lams.size());
  t->jsq.reserve(t->lams.size());
  for (size_t i = 0; i < t->lams.size(); ++i) {
    t->index.emplace(t->lams[i], static_cast<int>(i));
    SpecialPoint sp = make_special_point(d, k, t->lams[i]);
    t->xi.push_back(sp.xi_w);
    t->jsq.push_back(weyl_denominator_sq(d, sp.xi_w));
  }
  g_cache.emplace(key, t);
  return t;
}

const std::vector<CycloNumber>& jsq_inverses(FactorTable& t) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  if (t.jsq_inv.size() != t.jsq.size()) {
    t.jsq_inv.clear();
    t.jsq_inv.reserve(t.jsq.size());
    for (const auto& j : t.jsq) t.jsq_inv.push_back(invert(j));
  }
  return t.jsq_inv;
}

const std::vector<CycloNumber>& char_row(FactorTable& t, const RootDatum& d, const IVec& mu) {
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = t.rows.find(mu);
  if (it != t.rows.end()) return it->second;
  std::vector<CycloNumber> row;
  row.reserve(t.xi.size());
  for (const auto& xi : t.xi) row.push_back(eval_character(d, mu, xi));
  return t.rows.emplace(mu, std::move(row)).first->second;
}

bool zero_weight(const IVec& v) {
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

void validate_levels(const ProductDatum& pd, const PLevel& k) {
  if (k.size() != pd.factors.size())
    throw std::invalid_argument("level vector length does not match the number of factors");
  for (long long kj : k)
    if (kj < 0) throw std::invalid_argument("levels must be nonnegative");
}

void require_weight(const ProductDatum& pd, const PLevel& k, const PWeight& mu,
                    const char* what) {
  if (mu.size() != pd.factors.size())
    throw std::invalid_argument(std::string(what) + " has the wrong number of factors");
  for (size_t j = 0; j < pd.factors.size(); ++j) {
    const RootDatum& d = pd.factors[j];
    if (static_cast<int>(mu[j].size()) != d.rank)
      throw std::invalid_argument(std::string(what) + " has the wrong rank");
    for (long long x : mu[j])
      if (x < 0) throw std::invalid_argument(std::string(what) + " is not dominant");
    if (weight_level(d, mu[j]) > k[j])
      throw std::invalid_argument(std::string(what) + " lies outside the level alcove");
  }
}

// Assembled summation context over the product weight grid; the flattened
// order (rightmost factor fastest) matches product_level_weights.
struct ProdCtx {
  const ProductDatum* pd = nullptr;
  PLevel k;
  std::vector<std::shared_ptr<FactorTable>> ft;
  std::vector<size_t> sizes;
  size_t total = 1;

  size_t factors() const { return sizes.size(); }

  PWeight weight_at(size_t li) const {
    PWeight out(factors());
    for (size_t j = factors(); j-- > 0;) {
      out[j] = ft[j]->lams[li % sizes[j]];
      li /= sizes[j];
    }
    return out;
  }

  size_t flat_index(const PWeight& lam) const {
    size_t li = 0;
    for (size_t j = 0; j < factors(); ++j) {
      auto it = ft[j]->index.find(lam[j]);
      if (it == ft[j]->index.end()) throw std::logic_error("weight missing from the level grid");
      li = li * sizes[j] + static_cast<size_t>(it->second);
    }
    return li;
  }
};

ProdCtx make_ctx(const ProductDatum& pd, const PLevel& k) {
  validate_levels(pd, k);
  ProdCtx c;
  c.pd = &pd;
  c.k = k;
  for (size_t j = 0; j < pd.factors.size(); ++j) {
    c.ft.push_back(factor_table(pd.factors[j], k[j]));
    c.sizes.push_back(c.ft[j]->lams.size());
    c.total *= c.sizes.back();
  }
  return c;
}

// Per-factor conjugated products of the character rows of the markings; an
// empty row stands for the constant 1 (all markings trivial on that factor).
std::vector<std::vector<CycloNumber>> marking_rows(ProdCtx& c,
                                                   const std::vector<PWeight>& markings) {
  std::vector<std::vector<CycloNumber>> combo(c.factors());
  for (const auto& mu : markings)
    for (size_t j = 0; j < c.factors(); ++j) {
      if (zero_weight(mu[j])) continue;
      const auto& row = char_row(*c.ft[j], c.pd->factors[j], mu[j]);
      if (combo[j].empty()) {
        combo[j].reserve(row.size());
        for (const auto& v : row) combo[j].push_back(conj(v));
      } else {
        for (size_t i = 0; i < row.size(); ++i) combo[j][i] = mul(combo[j][i], conj(row[i]));
      }
    }
  return combo;
}

// Multiplies every coefficient by a rational scalar: the cheap form of
// mul(cyclo_rational(r), x).
CycloNumber scale_by_rational(CycloNumber x, const Rat& r) {
  for (auto& cf : x.coeffs) cf *= r;
  return x;
}

// Row of |J(t_lam)|^{2-2h} values for one factor; h != 1.  Power rows are
// computed once per (factor, level, genus) and reused across calls.
const std::vector<CycloNumber>* power_row(FactorTable& t, long long h) {
  if (h == 0) return &t.jsq;
  const auto& inv = jsq_inverses(t);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = t.pw_rows.find(h);
  if (it == t.pw_rows.end()) {
    std::vector<CycloNumber> row;
    row.reserve(inv.size());
    for (const auto& v : inv) row.push_back(cyclo_pow(v, h - 1));
    it = t.pw_rows.emplace(h, std::move(row)).first;
  }
  return &it->second;
}

// Per-factor rows implementing |J(t_lam)|^{2-2h}; null rows mean 1 (h = 1).
std::vector<const std::vector<CycloNumber>*> jsq_power_rows(ProdCtx& c, long long h) {
  std::vector<const std::vector<CycloNumber>*> rows(c.factors(), nullptr);
  if (h == 1) return rows;
  for (size_t j = 0; j < c.factors(); ++j) rows[j] = power_row(*c.ft[j], h);
  return rows;
}

// Per-factor summand rows conj(char_mu) * |J|^{2-2h} for the quotient sums;
// null rows mean the constant 1.  Rows live in a small FIFO cache on the
// factor table, pinned by the keep list for the duration of the call.
struct QuotientRows {
  std::vector<const std::vector<CycloNumber>*> row;
  std::vector<std::shared_ptr<const std::vector<CycloNumber>>> keep;
};

QuotientRows quotient_product_rows(ProdCtx& c, const PWeight& mu, long long h) {
  constexpr size_t kProductRowCap = 16;
  QuotientRows qr;
  qr.row.assign(c.factors(), nullptr);
  for (size_t j = 0; j < c.factors(); ++j) {
    FactorTable& t = *c.ft[j];
    if (zero_weight(mu[j])) {
      if (h != 1) qr.row[j] = power_row(t, h);
      continue;
    }
    const auto key = std::make_pair(mu[j], h);
    {
      std::lock_guard<std::mutex> lock(g_cache_mutex);
      auto it = t.prod_rows.find(key);
      if (it != t.prod_rows.end()) {
        qr.keep.push_back(it->second);
        qr.row[j] = qr.keep.back().get();
        continue;
      }
    }
    const auto& row = char_row(t, c.pd->factors[j], mu[j]);
    const std::vector<CycloNumber>* pw = (h == 1) ? nullptr : power_row(t, h);
    auto built = std::make_shared<std::vector<CycloNumber>>();
    built->reserve(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
      CycloNumber v = conj(row[i]);
      if (pw != nullptr) v = mul(v, (*pw)[i]);
      built->push_back(std::move(v));
    }
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = t.prod_rows.emplace(key, std::move(built));
    if (inserted) {
      t.prod_order.push_back(key);
      if (t.prod_order.size() > kProductRowCap) {
        t.prod_rows.erase(t.prod_order.front());
        t.prod_order.pop_front();
      }
    }
    qr.keep.push_back(it->second);
    qr.row[j] = qr.keep.back().get();
  }
  return qr;
}

std::vector<CycloNumber> map_terms(size_t n, const std::function<CycloNumber(size_t)>& f) {
  std::vector<CycloNumber> out(n, cyclo_zero());
  const int threads = g_threads.load();
  if (threads <= 1 || n < 64) {
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t)
    workers.emplace_back([&, t] {
      for (size_t i = static_cast<size_t>(t); i < n; i += static_cast<size_t>(threads))
        out[i] = f(i);
    });
  for (auto& w : workers) w.join();
  return out;
}

VerlindeResult assemble(std::vector<PWeight> labels, std::vector<CycloNumber> scaled,
                        bool unsafe) {
  VerlindeResult r;
  CycloNumber sum = cyclo_zero();
  std::complex<double> shadow(0.0, 0.0);
  for (const auto& term : scaled) {
    sum = add(sum, term);
    shadow += to_complex(term);
  }
  auto q = try_as_rational(sum);
  if (!q) {
    if (unsafe) throw std::domain_error("the sum is irrational at this inadmissible level");
    throw std::logic_error("index sum failed to reduce to a rational number");
  }
  r.value = *q;
  r.integral = is_integer(r.value);
  r.shadow = shadow.real();
  r.per_lambda.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i)
    r.per_lambda.emplace_back(std::move(labels[i]), std::move(scaled[i]));
  return r;
}

Rat torus_prefactor(const ProductDatum& pd, const PLevel& k, long long h) {
  Rat pref(1);
  for (size_t j = 0; j < pd.factors.size(); ++j)
    pref *= pow_rat(Rat(t_count(pd.factors[j], k[j] + pd.factors[j].dual_coxeter)), h - 1);
  return pref;
}

VerlindeResult sc_core(const ProductDatum& pd, const PLevel& k, long long h,
                       const std::vector<PWeight>& markings, bool allow_closed_sphere) {
  if (h < 0) throw std::invalid_argument("genus must be nonnegative");
  if (h == 0 && markings.empty() && !allow_closed_sphere)
    throw std::invalid_argument("a sphere needs at least one marking");
  ProdCtx c = make_ctx(pd, k);
  for (const auto& mu : markings) require_weight(pd, k, mu, "marking");
  auto combo = marking_rows(c, markings);
  auto pw = jsq_power_rows(c, h);
  const Rat pref = torus_prefactor(pd, k, h);

  auto term = [&](size_t li) {
    CycloNumber t;
    bool have = false;
    for (size_t j = c.factors(); j-- > 0;) {
      size_t i = li % c.sizes[j];
      li /= c.sizes[j];
      if (!combo[j].empty()) {
        t = have ? mul(t, combo[j][i]) : combo[j][i];
        have = true;
      }
      if (pw[j] != nullptr) {
        t = have ? mul(t, (*pw[j])[i]) : (*pw[j])[i];
        have = true;
      }
    }
    if (!have) return cyclo_rational(pref);
    return scale_by_rational(std::move(t), pref);
  };
  auto terms = map_terms(c.total, term);
  std::vector<PWeight> labels;
  labels.reserve(c.total);
  for (size_t li = 0; li < c.total; ++li) labels.push_back(c.weight_at(li));
  return assemble(std::move(labels), std::move(terms), false);
}

// Action of the subgroup on the flattened grid plus the stabilizer positions.
struct CenterData {
  std::vector<std::vector<int>> act;       // [element position][flat index]
  std::vector<std::vector<int>> stab_pos;  // positions in G fixing each weight
};

CenterData center_data(const ProdCtx& c, const CenterSubgroup& G) {
  const size_t nf = c.factors();
  // Per factor, the permutation induced by each center coordinate in use.
  std::vector<std::map<int, std::vector<int>>> perms(nf);
  for (size_t j = 0; j < nf; ++j) {
    const RootDatum& d = c.pd->factors[j];
    for (const auto& g : G.elements) {
      if (perms[j].count(g[j])) continue;
      CenterElement el = center_element(d, g[j]);
      std::vector<int> perm(c.sizes[j]);
      for (size_t i = 0; i < c.sizes[j]; ++i) {
        IVec image = act_on_level_weight(el, c.ft[j]->lams[i], c.k[j]);
        perm[i] = c.ft[j]->index.at(image);
      }
      perms[j].emplace(g[j], std::move(perm));
    }
  }
  CenterData cd;
  cd.act.assign(G.elements.size(), std::vector<int>(c.total));
  cd.stab_pos.assign(c.total, {});
  std::vector<size_t> digits(nf);
  for (size_t e = 0; e < G.elements.size(); ++e) {
    const CenterIdx& g = G.elements[e];
    for (size_t li = 0; li < c.total; ++li) {
      size_t rem = li;
      for (size_t j = nf; j-- > 0;) {
        digits[j] = rem % c.sizes[j];
        rem /= c.sizes[j];
      }
      size_t image = 0;
      for (size_t j = 0; j < nf; ++j)
        image = image * c.sizes[j] + static_cast<size_t>(perms[j].at(g[j])[digits[j]]);
      cd.act[e][li] = static_cast<int>(image);
      if (image == li) cd.stab_pos[li].push_back(static_cast<int>(e));
    }
  }
  return cd;
}

// Cache key identifying the weight grid together with the subgroup elements.
std::string subgroup_key(const ProdCtx& c, const CenterSubgroup& G) {
  std::string s;
  for (size_t j = 0; j < c.factors(); ++j) {
    const LieType& t = c.pd->factors[j].type;
    s += t.family;
    s += std::to_string(t.rank);
    s += ':';
    s += std::to_string(c.k[j]);
    s += '|';
  }
  for (const auto& g : G.elements) {
    for (long long x : g) {
      s += std::to_string(x);
      s += ',';
    }
    s += ';';
  }
  return s;
}

std::map<std::string, std::shared_ptr<const CenterData>> g_center_cache;

std::shared_ptr<const CenterData> center_data_cached(const ProdCtx& c, const CenterSubgroup& G) {
  const std::string key = subgroup_key(c, G);
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  auto it = g_center_cache.find(key);
  if (it != g_center_cache.end()) return it->second;
  auto cd = std::make_shared<const CenterData>(center_data(c, G));
  g_center_cache.emplace(key, cd);
  return cd;
}

// Conjugacy-class bookkeeping: the quotient-side weight list as flat indices,
// each entry's orbit slot, and the representative labels in slot order.
struct OrbitData {
  std::vector<size_t> restricted;
  std::vector<size_t> slot;
  std::vector<PWeight> reps;
};

std::map<std::string, std::shared_ptr<const OrbitData>> g_orbit_cache;

std::shared_ptr<const OrbitData> orbit_data_cached(const ProdCtx& c, const CenterSubgroup& G) {
  const std::string key = subgroup_key(c, G);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_orbit_cache.find(key);
    if (it != g_orbit_cache.end()) return it->second;
  }
  auto od = std::make_shared<OrbitData>();
  auto restricted = restricted_level_weights(*c.pd, G, c.k);
  auto orbits = orbit_representatives(G, c.k);
  std::map<PWeight, size_t> orbit_slot;
  for (size_t oi = 0; oi < orbits.size(); ++oi)
    for (const auto& g : G.elements)
      orbit_slot.emplace(act_on_level_weight(*c.pd, g, orbits[oi].rep, c.k), oi);
  od->reps.reserve(orbits.size());
  for (const auto& o : orbits) od->reps.push_back(o.rep);
  od->restricted.reserve(restricted.size());
  od->slot.reserve(restricted.size());
  for (const auto& lam : restricted) {
    od->restricted.push_back(c.flat_index(lam));
    od->slot.push_back(orbit_slot.at(lam));
  }
  std::lock_guard<std::mutex> lock(g_cache_mutex);
  return g_orbit_cache.emplace(key, std::move(od)).first->second;
}

void validate_quotient_query(const CenterSubgroup& G, const PLevel& k, long long h,
                             const PWeight& mu, const std::vector<CenterCharacter>& phi,
                             bool unsafe) {
  if (G.datum == nullptr) throw std::invalid_argument("subgroup is not attached to a group");
  validate_levels(*G.datum, k);
  if (h < 1) throw std::invalid_argument("the quotient sums need genus at least one");
  require_weight(*G.datum, k, mu, "marking");
  if (static_cast<long long>(phi.size()) != 2 * h)
    throw std::invalid_argument("need one twist character per handle generator (2h)");
  for (const auto& chi : phi)
    if (static_cast<long long>(chi.exponents.size()) != G.order())
      throw std::invalid_argument("twist character does not match the subgroup");
  if (!unsafe && !admissible_levels(G, k))
    throw InadmissibleLevelError("level is not admissible for this quotient");
}

// 1 unless some slot character is nontrivial on the stabilizer positions.
int epsilon_at(const std::vector<CenterCharacter>& phi, const std::vector<int>& stab) {
  for (const auto& chi : phi)
    for (int e : stab)
      if (chi.exponents[static_cast<size_t>(e)] != 0) return 0;
  return 1;
}

bool is_prime_ll(long long p) {
  if (p < 2) return false;
  for (long long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

}  // namespace

Int VerlindeResult::integer() const {
  if (!integral) throw std::logic_error("index value is not an integer");
  return Int(value.get_num());
}

void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }

int thread_count() { return g_threads.load(); }

VerlindeResult verlinde_sc(const ProductDatum& pd, const PLevel& k, long long h,
                           const std::vector<PWeight>& markings) {
  return sc_core(pd, k, h, markings, false);
}

VerlindeResult verlinde_closed(const ProductDatum& pd, const PLevel& k, long long h) {
  return sc_core(pd, k, h, {}, true);
}

Int two_holed_sphere(const ProductDatum& pd, const PLevel& k, const PWeight& mu1,
                     const PWeight& mu2) {
  return sc_core(pd, k, 0, {mu1, mu2}, false).integer();
}

long long min_level(const RootDatum& d, long long subgroup_order) {
  if (subgroup_order < 1) throw std::invalid_argument("subgroup order must be positive");
  return std::gcd(2 * d.dual_coxeter, subgroup_order * subgroup_order);
}

bool admissible_level(const RootDatum& d, long long subgroup_order, long long k) {
  return k % min_level(d, subgroup_order) == 0;
}

long long weak_min_level(const RootDatum& d, long long subgroup_order) {
  if (subgroup_order < 1) throw std::invalid_argument("subgroup order must be positive");
  return std::gcd(d.dual_coxeter, subgroup_order * subgroup_order);
}

bool weak_admissible_level(const RootDatum& d, long long subgroup_order, long long k) {
  return k % weak_min_level(d, subgroup_order) == 0;
}

bool admissible_levels(const CenterSubgroup& G, const PLevel& k) {
  if (G.datum == nullptr) throw std::invalid_argument("subgroup is not attached to a group");
  validate_levels(*G.datum, k);
  for (size_t j = 0; j < G.datum->factors.size(); ++j)
    if (!admissible_level(G.datum->factors[j], projected_order(G, static_cast<int>(j)), k[j]))
      return false;
  return true;
}

VerlindeResult verlinde_ns(const CenterSubgroup& G, const PLevel& k, long long h,
                           const PWeight& mu, const std::vector<CenterCharacter>& phi,
                           bool unsafe) {
  validate_quotient_query(G, k, h, mu, phi, unsafe);
  const ProductDatum& pd = *G.datum;
  ProdCtx c = make_ctx(pd, k);
  auto cd = center_data_cached(c, G);
  QuotientRows qr = quotient_product_rows(c, mu, h);
  const Rat pref =
      torus_prefactor(pd, k, h) / pow_rat(rat_ll(G.order()), 2 * h);

  auto term = [&](size_t li) {
    if (epsilon_at(phi, cd->stab_pos[li]) == 0) return cyclo_zero();
    const long long stab = static_cast<long long>(cd->stab_pos[li].size());
    const Rat r = pref * pow_rat(rat_ll(stab), 2 * h);
    CycloNumber t;
    bool have = false;
    size_t rem = li;
    for (size_t j = c.factors(); j-- > 0;) {
      size_t i = rem % c.sizes[j];
      rem /= c.sizes[j];
      if (qr.row[j] == nullptr) continue;
      t = have ? mul(t, (*qr.row[j])[i]) : (*qr.row[j])[i];
      have = true;
    }
    if (!have) return cyclo_rational(r);
    return scale_by_rational(std::move(t), r);
  };
  auto terms = map_terms(c.total, term);
  std::vector<PWeight> labels;
  labels.reserve(c.total);
  for (size_t li = 0; li < c.total; ++li) labels.push_back(c.weight_at(li));
  return assemble(std::move(labels), std::move(terms), unsafe);
}

VerlindeResult verlinde_conjclass(const CenterSubgroup& G, const PLevel& k, long long h,
                                  const PWeight& mu, const std::vector<CenterCharacter>& phi,
                                  bool unsafe) {
  validate_quotient_query(G, k, h, mu, phi, unsafe);
  const ProductDatum& pd = *G.datum;
  ProdCtx c = make_ctx(pd, k);
  auto cd = center_data_cached(c, G);
  // Group the quotient-side weights by orbit; sum the full summand over each
  // orbit so the result does not depend on the choice of representatives.
  auto od = orbit_data_cached(c, G);
  QuotientRows qr = quotient_product_rows(c, mu, h);

  CenterSubgroup stab_mu = stabilizer(G, mu, k);
  std::set<PWeight> orbit_mu;
  for (const auto& g : G.elements) orbit_mu.insert(act_on_level_weight(pd, g, mu, k));

  const Rat pref = torus_prefactor(pd, k, h) /
                   (rat_ll(stab_mu.order()) * pow_rat(rat_ll(G.order()), 2 * h - 1));

  std::vector<CycloNumber> scaled(od->reps.size(), cyclo_zero());
  for (size_t ri = 0; ri < od->restricted.size(); ++ri) {
    const size_t li = od->restricted[ri];
    CycloNumber t = cyclo_zero();
    if (epsilon_at(phi, cd->stab_pos[li]) != 0) {
      const long long stab = static_cast<long long>(cd->stab_pos[li].size());
      const Rat r = pref * pow_rat(rat_ll(stab), 2 * h);
      bool have = false;
      size_t rem = li;
      for (size_t j = c.factors(); j-- > 0;) {
        size_t i = rem % c.sizes[j];
        rem /= c.sizes[j];
        if (qr.row[j] == nullptr) continue;
        t = have ? mul(t, (*qr.row[j])[i]) : (*qr.row[j])[i];
        have = true;
      }
      t = have ? scale_by_rational(std::move(t), r) : cyclo_rational(r);
    }
    scaled[od->slot[ri]] = add(scaled[od->slot[ri]], t);
  }
  std::vector<PWeight> labels = od->reps;
  VerlindeResult r = assemble(std::move(labels), std::move(scaled), unsafe);

  // The same index as a sum over the components indexed by the orbit of mu.
  Rat component_sum(0);
  for (const auto& nu : orbit_mu) component_sum += verlinde_ns(G, k, h, nu, phi, unsafe).value;
  if (r.value != component_sum)
    throw std::logic_error("class sum disagrees with the component-by-component sum");
  return r;
}

CycloNumber exceptional_contribution(const CenterSubgroup& G, const PLevel& k, long long h,
                                     const PWeight& mu,
                                     const std::vector<CenterCharacter>& phi) {
  if (G.datum == nullptr) throw std::invalid_argument("subgroup is not attached to a group");
  const ProductDatum& pd = *G.datum;
  validate_levels(pd, k);
  if (h < 1) throw std::invalid_argument("the quotient sums need genus at least one");
  require_weight(pd, k, mu, "marking");
  for (const auto& chi : phi)
    if (static_cast<long long>(chi.exponents.size()) != G.order())
      throw std::invalid_argument("twist character does not match the subgroup");

  int kost = 1;
  for (size_t j = 0; j < pd.factors.size(); ++j)
    kost *= kostant_character(pd.factors[j], mu[j], k[j]);

  PWeight lam0(pd.factors.size());
  for (size_t j = 0; j < pd.factors.size(); ++j)
    lam0[j] = IVec(pd.factors[j].rank, k[j] / pd.factors[j].dual_coxeter);
  CenterSubgroup st = stabilizer(G, lam0, k);
  if (st.order() != G.order())
    throw std::logic_error("distinguished weight is not fixed by the whole subgroup");
  const int eps = epsilon(G, phi, st);

  Rat e1 = Rat(eps) * Rat(kost);
  for (size_t j = 0; j < pd.factors.size(); ++j)
    e1 *= pow_rat(Rat(1) + rat_ll(k[j]) / rat_ll(pd.factors[j].dual_coxeter),
                  (h - 1) * pd.factors[j].rank);

  // The same term along the generic path: prefactor times the full stabilizer
  // power over the Jacobian power, evaluated with the character machinery.
  CycloNumber e2 = cyclo_rational(torus_prefactor(pd, k, h) /
                                  pow_rat(rat_ll(G.order()), 2 * h) *
                                  pow_rat(rat_ll(G.order()), 2 * h) * Rat(eps));
  for (size_t j = 0; j < pd.factors.size(); ++j) {
    const RootDatum& d = pd.factors[j];
    SpecialPoint sp = make_special_point(d, k[j], lam0[j]);
    e2 = mul(e2, conj(eval_character(d, mu[j], sp.xi_w)));
    if (h >= 2) e2 = mul(e2, cyclo_pow(invert(weyl_denominator_sq(d, sp.xi_w)), h - 1));
  }
  if (!(cyclo_rational(e1) == e2))
    throw std::logic_error("exceptional term disagrees with the generic summand");
  return cyclo_rational(e1);
}

std::pair<Rat, Rat> psu_p_crosscheck(long long p, long long k, long long h) {
  if (!is_prime_ll(p)) throw std::invalid_argument("p must be prime");
  if (h < 1) throw std::invalid_argument("genus must be at least one");
  if (k < 1 || k % p != 0)
    throw std::invalid_argument("level must be a positive multiple of p");
  ProductDatum pd = make_product({LieType{'A', static_cast<int>(p - 1)}});
  const RootDatum& d = pd.factors[0];
  if (!admissible_level(d, p, k))
    throw InadmissibleLevelError("level is not admissible for the full quotient");
  CenterSubgroup G = full_center(pd);
  std::vector<CenterCharacter> phi(
      static_cast<size_t>(2 * h),
      CenterCharacter{QVec(static_cast<size_t>(G.order()), Rat(0))});
  const PWeight vacuum{IVec(d.rank, 0)};

  const Rat lhs = verlinde_ns(G, PLevel{k}, h, vacuum, phi).value;

  const Rat closed = verlinde_closed(pd, PLevel{k}, h).value;
  const int kost = kostant_character(d, IVec(d.rank, 0), k);
  const Rat pinv = pow_rat(rat(1, p), 2 * h);
  const Rat rhs = pinv * closed +
                  (Rat(1) - pinv) *
                      pow_rat(Rat(1) + rat_ll(k) / rat_ll(p), (p - 1) * (h - 1)) * Rat(kost);
  return {lhs, rhs};
}

}  // namespace vt
