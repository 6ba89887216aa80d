#include "verlinde/characters.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace vt {

namespace {

IVec rho_w(const RootDatum& d) { return IVec(d.rank, 1); }

IVec add_iv(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

void require_dominant(const IVec& mu, const char* who) {
  for (long long c : mu)
    if (c < 0) throw std::invalid_argument(std::string(who) + ": weight must be dominant");
}

// Exponent bookkeeping for sums of zeta^{<p, xi>}: the linear form g = G * xi
// turns weight-coordinate points into rational exponents p . g, all with a
// common denominator. Sums are accumulated as integer counts per exponent
// residue, relative to a base exponent factored out in front.
struct ExponentAccumulator {
  long long modulus = 1;
  QVec form;  // g
  long long base = 0;
  bool has_base = false;
  std::vector<Int> counts;

  explicit ExponentAccumulator(const RootDatum& d, const QVec& xi_w) {
    form = mat_vec(d.gram_weights, xi_w);
    Int den(1);
    for (const Rat& c : form)
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    modulus = to_ll(den);
    counts.assign(modulus, Int(0));
  }

  long long exponent(const IVec& p) const {
    Rat e(0);
    for (size_t i = 0; i < p.size(); ++i)
      if (p[i]) e += rat_ll(p[i]) * form[i];
    e *= rat_ll(modulus);
    return rat_to_ll(e);
  }

  void accumulate(const IVec& p, const Int& weight) {
    long long e = exponent(p);
    if (!has_base) {
      base = e;
      has_base = true;
    }
    long long r = (e - base) % modulus;
    if (r < 0) r += modulus;
    counts[r] += weight;
  }

  CycloNumber value() const {
    CycloNumber body = cyclo_from_exponent_counts(modulus, counts);
    if (!has_base || base % modulus == 0) return body;
    return mul(root_of_unity(modulus, base), body);
  }
};

constexpr long long kWeylPathCap = 10'000'000;

}  // namespace

SpecialPoint make_special_point(const RootDatum& d, long long k, const IVec& lam) {
  if (k < 1) throw std::invalid_argument("make_special_point: level must be positive");
  if (static_cast<int>(lam.size()) != d.rank)
    throw std::invalid_argument("make_special_point: weight has wrong rank");
  require_dominant(lam, "make_special_point");
  if (weight_level(d, lam) > k)
    throw std::invalid_argument("make_special_point: weight level exceeds k");
  SpecialPoint p;
  p.datum = &d;
  p.k = k;
  p.lam = lam;
  p.xi_w.resize(d.rank);
  for (int i = 0; i < d.rank; ++i) p.xi_w[i] = rat_ll(lam[i] + 1) / rat_ll(k + d.dual_coxeter);
  p.xi = to_ambient(d, p.xi_w);
  return p;
}

bool is_regular(const RootDatum& d, const QVec& xi_w) {
  for (const QVec& pairing : d.positive_root_pairing)
    if (is_integer(dot(pairing, xi_w))) return false;
  return true;
}

Int weyl_dimension(const RootDatum& d, const IVec& mu) {
  require_dominant(mu, "weyl_dimension");
  QVec top = qvec_of(add_iv(mu, rho_w(d)));
  QVec bottom = qvec_of(rho_w(d));
  Rat prod(1);
  for (const QVec& pairing : d.positive_root_pairing)
    prod *= dot(pairing, top) / dot(pairing, bottom);
  if (!is_integer(prod)) throw std::logic_error("weyl_dimension: non-integral result");
  return prod.get_num();
}

CycloNumber weyl_numerator(const RootDatum& d, const IVec& mu, const QVec& xi_w) {
  require_dominant(mu, "weyl_numerator");
  ExponentAccumulator acc(d, xi_w);
  weyl_orbit_signed(d, add_iv(mu, rho_w(d)),
                    [&](const IVec& p, int sign) { acc.accumulate(p, Int(sign)); });
  return acc.value();
}

CycloNumber eval_character_weyl(const RootDatum& d, const IVec& mu, const QVec& xi_w) {
  if (!is_regular(d, xi_w))
    throw SingularPointError("character quotient at a singular point of " + to_string(d.type));
  CycloNumber num = weyl_numerator(d, mu, xi_w);
  CycloNumber den = weyl_numerator(d, IVec(d.rank, 0), xi_w);
  return mul(num, invert(den));
}

std::vector<std::pair<IVec, Int>> dominant_weight_multiplicities(const RootDatum& d,
                                                                 const IVec& mu,
                                                                 long long dim_cap) {
  require_dominant(mu, "dominant_weight_multiplicities");
  if (weyl_dimension(d, mu) > int_ll(dim_cap))
    throw DimensionCapError("representation dimension exceeds the cap");

  // root-basis coordinates of mu - x, to test membership below mu
  auto defect = [&](const IVec& x) {
    QVec diff(d.rank);
    for (int i = 0; i < d.rank; ++i) diff[i] = rat_ll(mu[i] - x[i]);
    return mat_vec(d.cartan_inv, diff);
  };
  auto occurs = [&](const IVec& x) {
    for (const Rat& c : defect(dominantize(d, x)))
      if (!is_integer(c) || c < 0) return false;
    return true;
  };
  auto depth = [&](const IVec& x) {
    Rat h(0);
    for (const Rat& c : defect(x)) h += c;
    return rat_to_ll(h);
  };

  // walk the full weight diagram downwards by simple-root steps
  std::set<IVec> seen{mu};
  std::vector<IVec> queue{mu};
  std::vector<IVec> dominants;
  for (size_t head = 0; head < queue.size(); ++head) {
    IVec p = queue[head];
    if (is_dominant(p)) dominants.push_back(p);
    for (int i = 0; i < d.rank; ++i) {
      IVec q = p;
      for (int j = 0; j < d.rank; ++j) q[j] -= d.cartan[j][i];
      if (seen.count(q) || !occurs(q)) continue;
      seen.insert(q);
      queue.push_back(q);
    }
  }
  std::stable_sort(dominants.begin(), dominants.end(),
                   [&](const IVec& a, const IVec& b) { return depth(a) < depth(b); });

  const IVec rho = rho_w(d);
  const Rat top_norm = d.inner_w(qvec_of(add_iv(mu, rho)), qvec_of(add_iv(mu, rho)));
  std::map<IVec, Int> mult;
  std::vector<std::pair<IVec, Int>> out;
  for (const IVec& nu : dominants) {
    if (nu == mu) {
      mult[nu] = 1;
      out.emplace_back(nu, Int(1));
      continue;
    }
    Rat sum(0);
    for (size_t a = 0; a < d.positive_roots_w.size(); ++a) {
      const IVec& alpha = d.positive_roots_w[a];
      const QVec& pairing = d.positive_root_pairing[a];
      for (long long t = 1;; ++t) {
        IVec p = nu;
        for (int i = 0; i < d.rank; ++i) p[i] += t * alpha[i];
        auto it = mult.find(dominantize(d, p));
        if (it == mult.end()) break;  // root strings are intervals
        sum += Rat(it->second) * dot(pairing, qvec_of(p));
      }
    }
    QVec shifted = qvec_of(add_iv(nu, rho));
    Rat denom = top_norm - d.inner_w(shifted, shifted);
    Rat m = 2 * sum / denom;
    if (!is_integer(m) || m <= 0)
      throw std::logic_error("Freudenthal recursion produced a non-positive multiplicity");
    mult[nu] = m.get_num();
    out.emplace_back(nu, m.get_num());
  }
  return out;
}

CycloNumber eval_character_freudenthal(const RootDatum& d, const IVec& mu, const QVec& xi_w,
                                       long long dim_cap) {
  ExponentAccumulator acc(d, xi_w);
  for (const auto& [nu, m] : dominant_weight_multiplicities(d, mu, dim_cap))
    weyl_orbit(d, nu, [&](const IVec& p) { acc.accumulate(p, m); });
  return acc.value();
}

CycloNumber eval_character(const RootDatum& d, const IVec& mu, const QVec& xi_w) {
  if (d.weyl_order <= int_ll(kWeylPathCap)) return eval_character_weyl(d, mu, xi_w);
  return eval_character_freudenthal(d, mu, xi_w);
}

CycloNumber weyl_denominator_sq(const RootDatum& d, const QVec& xi_w) {
  CycloNumber prod = cyclo_rational(Rat(1));
  for (const QVec& pairing : d.positive_root_pairing) {
    Rat q = dot(pairing, xi_w);
    if (is_integer(q)) return cyclo_zero();
    const long long den = to_ll(q.get_den());
    const long long num = to_ll(q.get_num() % q.get_den());
    CycloNumber z = root_of_unity(den, num);
    prod = mul(prod, sub(cyclo_rational(Rat(2)), add(z, conj(z))));
  }
  return prod;
}

Int t_count(const RootDatum& d, long long l) {
  if (l < 1) throw std::invalid_argument("t_count: scale must be positive");
  return pow_int(int_ll(l), d.rank) * int_ll(d.center_order) * int_ll(d.long_index);
}

int kostant_character(const RootDatum& d, const IVec& mu, long long k) {
  require_dominant(mu, "kostant_character");
  const long long c = d.dual_coxeter;
  if (k % c != 0)
    throw ExceptionalWeightAbsentError("the distinguished weight needs " + to_string(d.type) +
                                       " level divisible by " + std::to_string(c));
  const IVec rho = rho_w(d);
  int found = 0;
  bool any = false;
  weyl_orbit_signed(d, add_iv(mu, rho), [&](const IVec& p, int sign) {
    QVec v(d.rank);
    for (int i = 0; i < d.rank; ++i) v[i] = rat_ll(p[i] - rho[i]) / rat_ll(c);
    if (!in_coroot_lattice(d, v)) return;
    if (any && found != sign)
      throw std::logic_error("kostant_character: conflicting orbit matches");
    any = true;
    found = sign;
  });
  return any ? found : 0;
}

}  // namespace vt
