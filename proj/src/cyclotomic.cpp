#include "verlinde/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>

namespace vt {

namespace {

// polynomial helpers; vectors are coefficient lists, constant term first

std::vector<Int> poly_trim(std::vector<Int> p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  return p;
}

// exact division of integer polynomials (remainder must vanish)
std::vector<Int> poly_divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  num = poly_trim(num);
  const long long dn = static_cast<long long>(den.size()) - 1;
  const long long nn = static_cast<long long>(num.size()) - 1;
  if (nn < dn) throw std::logic_error("cyclotomic: bad polynomial division");
  std::vector<Int> q(nn - dn + 1, Int(0));
  for (long long i = nn; i >= dn; --i) {
    Int c = num[i];
    if (c == 0) continue;
    if (!mpz_divisible_p(c.get_mpz_t(), den[dn].get_mpz_t()))
      throw std::logic_error("cyclotomic: inexact polynomial division");
    Int f = c / den[dn];
    q[i - dn] = f;
    for (long long j = 0; j <= dn; ++j) num[i - dn + j] -= f * den[j];
  }
  for (const Int& c : num)
    if (c != 0) throw std::logic_error("cyclotomic: nonzero remainder");
  return q;
}

struct CycloContext {
  long long n = 1;
  long long phi = 1;
  std::vector<Int> poly;                // cyclotomic polynomial, degree phi
  std::vector<std::vector<Int>> rows;   // rows[j] = x^j reduced, j in [0, n)
};

std::vector<Int> cyclotomic_polynomial_uncached(long long n,
                                                const std::function<std::vector<Int>(long long)>& get) {
  // x^n - 1 divided by the cyclotomic polynomials of the proper divisors
  std::vector<Int> num(n + 1, Int(0));
  num[0] = -1;
  num[n] = 1;
  std::vector<Int> q = num;
  for (long long d = 1; d < n; ++d)
    if (n % d == 0) q = poly_divide_exact(q, get(d));
  return q;
}

class ContextCache {
 public:
  std::shared_ptr<const CycloContext> get(long long n) {
    std::lock_guard<std::mutex> lock(mutex_);
    return get_locked(n);
  }

 private:
  std::shared_ptr<const CycloContext> get_locked(long long n) {
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
    auto ctx = std::make_shared<CycloContext>();
    ctx->n = n;
    ctx->poly = cyclotomic_polynomial_uncached(
        n, [this](long long d) { return get_locked(d)->poly; });
    ctx->phi = static_cast<long long>(ctx->poly.size()) - 1;
    // power table: x^j mod poly for j in [0, n)
    ctx->rows.reserve(n);
    std::vector<Int> cur(ctx->phi, Int(0));
    cur[0] = 1;
    for (long long j = 0; j < n; ++j) {
      ctx->rows.push_back(cur);
      // multiply by x
      Int top = cur.back();
      for (long long i = ctx->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
      cur[0] = 0;
      if (top != 0)
        for (long long i = 0; i < ctx->phi; ++i) cur[i] -= top * ctx->poly[i];
    }
    cache_.emplace(n, ctx);
    return ctx;
  }

  std::mutex mutex_;
  std::map<long long, std::shared_ptr<const CycloContext>> cache_;
};

ContextCache& contexts() {
  static ContextCache cache;
  return cache;
}

long long normalize_exponent(long long a, long long n) {
  a %= n;
  if (a < 0) a += n;
  return a;
}

CycloNumber make_at(long long n, QVec coeffs) {
  CycloNumber x;
  x.modulus = n;
  x.coeffs = std::move(coeffs);
  return x;
}

// accumulate c * x^e (e already in [0, n)) into rational coefficients
void add_power(QVec& acc, const std::shared_ptr<const CycloContext>& ctx, long long e,
               const Rat& c) {
  const auto& row = ctx->rows[e];
  for (long long i = 0; i < ctx->phi; ++i)
    if (row[i] != 0) acc[i] += c * Rat(row[i]);
}

}  // namespace

long long euler_phi(long long n) {
  if (n <= 0) throw std::invalid_argument("euler_phi: positive argument required");
  long long result = n;
  long long m = n;
  for (long long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<Int> cyclotomic_polynomial(long long n) {
  if (n <= 0) throw std::invalid_argument("cyclotomic_polynomial: positive index required");
  return contexts().get(n)->poly;
}

CycloNumber cyclo_zero() { return CycloNumber{}; }

CycloNumber cyclo_rational(const Rat& q) { return make_at(1, QVec{q}); }

CycloNumber root_of_unity(long long n, long long a) {
  if (n <= 0) throw std::invalid_argument("root_of_unity: positive order required");
  a = normalize_exponent(a, n);
  const long long g = std::gcd(a, n);
  const long long n2 = g ? n / g : 1;
  const long long a2 = g ? a / g : 0;
  auto ctx = contexts().get(n2);
  QVec coeffs(ctx->phi, Rat(0));
  add_power(coeffs, ctx, a2, Rat(1));
  return make_at(n2, std::move(coeffs));
}

bool is_zero(const CycloNumber& x) {
  for (const Rat& c : x.coeffs)
    if (c != 0) return false;
  return true;
}

CycloNumber lift_to(const CycloNumber& x, long long m) {
  if (m % x.modulus != 0) throw std::invalid_argument("lift_to: modulus must divide target");
  if (m == x.modulus) return x;
  const long long f = m / x.modulus;
  auto ctx = contexts().get(m);
  QVec coeffs(ctx->phi, Rat(0));
  for (size_t j = 0; j < x.coeffs.size(); ++j)
    if (x.coeffs[j] != 0) add_power(coeffs, ctx, (static_cast<long long>(j) * f) % m, x.coeffs[j]);
  return make_at(m, std::move(coeffs));
}

bool cyclo_equal(const CycloNumber& x, const CycloNumber& y) {
  const long long m = std::lcm(x.modulus, y.modulus);
  return lift_to(x, m).coeffs == lift_to(y, m).coeffs;
}

CycloNumber add(const CycloNumber& x, const CycloNumber& y) {
  const long long m = std::lcm(x.modulus, y.modulus);
  CycloNumber a = lift_to(x, m), b = lift_to(y, m);
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] += b.coeffs[i];
  return a;
}

CycloNumber neg(const CycloNumber& x) {
  CycloNumber r = x;
  for (Rat& c : r.coeffs) c = -c;
  return r;
}

CycloNumber sub(const CycloNumber& x, const CycloNumber& y) { return add(x, neg(y)); }

CycloNumber mul(const CycloNumber& x, const CycloNumber& y) {
  const long long m = std::lcm(x.modulus, y.modulus);
  CycloNumber a = lift_to(x, m), b = lift_to(y, m);
  auto ctx = contexts().get(m);
  const long long phi = ctx->phi;
  // sparse path: few nonzero coefficients on one side
  int nza = 0, nzb = 0;
  for (const Rat& c : a.coeffs) nza += (c != 0);
  for (const Rat& c : b.coeffs) nzb += (c != 0);
  if (nzb < nza) std::swap(a, b), std::swap(nza, nzb);
  QVec out(phi, Rat(0));
  if (nza <= 2) {
    for (long long i = 0; i < phi; ++i) {
      if (a.coeffs[i] == 0) continue;
      for (long long j = 0; j < phi; ++j) {
        if (b.coeffs[j] == 0) continue;
        add_power(out, ctx, (i + j) % m, a.coeffs[i] * b.coeffs[j]);
      }
    }
    return make_at(m, std::move(out));
  }
  // dense convolution folded through the power table
  QVec conv(2 * phi - 1, Rat(0));
  for (long long i = 0; i < phi; ++i) {
    if (a.coeffs[i] == 0) continue;
    for (long long j = 0; j < phi; ++j) {
      if (b.coeffs[j] == 0) continue;
      conv[i + j] += a.coeffs[i] * b.coeffs[j];
    }
  }
  for (long long e = 0; e < phi; ++e) out[e] = conv[e];
  for (long long e = phi; e < 2 * phi - 1; ++e)
    if (conv[e] != 0) add_power(out, ctx, e % m, conv[e]);
  return make_at(m, std::move(out));
}

CycloNumber conj(const CycloNumber& x) {
  return x.modulus == 1 ? x : galois(x, x.modulus - 1);
}

CycloNumber galois(const CycloNumber& x, long long a) {
  const long long m = x.modulus;
  a = normalize_exponent(a, m);
  if (std::gcd(a, m) != 1) throw std::invalid_argument("galois: exponent not coprime to modulus");
  auto ctx = contexts().get(m);
  QVec out(ctx->phi, Rat(0));
  for (size_t j = 0; j < x.coeffs.size(); ++j)
    if (x.coeffs[j] != 0) add_power(out, ctx, (static_cast<long long>(j) * a) % m, x.coeffs[j]);
  return make_at(m, std::move(out));
}

CycloNumber invert(const CycloNumber& x) {
  if (is_zero(x)) throw std::domain_error("cyclotomic division by zero");
  auto ctx = contexts().get(x.modulus);
  // extended Euclid over Q[t] against the cyclotomic polynomial: since the
  // latter is irreducible the gcd is a nonzero constant c, and the Bezout
  // coefficient of x divided by c is the inverse.
  using Poly = QVec;
  auto deg = [](const Poly& p) {
    for (long long i = static_cast<long long>(p.size()) - 1; i >= 0; --i)
      if (p[i] != 0) return i;
    return static_cast<long long>(-1);
  };
  Poly r0(ctx->poly.size());
  for (size_t i = 0; i < ctx->poly.size(); ++i) r0[i] = Rat(ctx->poly[i]);
  Poly r1 = x.coeffs;
  Poly s0{Rat(0)}, s1{Rat(1)};
  while (true) {
    long long d1 = deg(r1);
    if (d1 <= 0) break;
    long long d0 = deg(r0);
    // divide r0 by r1
    Poly q(d0 - d1 + 1, Rat(0));
    Poly rem = r0;
    for (long long i = d0; i >= d1; --i) {
      if (rem[i] == 0) continue;
      Rat f = rem[i] / r1[d1];
      q[i - d1] = f;
      for (long long j = 0; j <= d1; ++j) rem[i - d1 + j] -= f * r1[j];
    }
    // s2 = s0 - q * s1
    Poly s2(std::max(s0.size(), q.size() + s1.size()), Rat(0));
    for (size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
    for (size_t i = 0; i < q.size(); ++i) {
      if (q[i] == 0) continue;
      for (size_t j = 0; j < s1.size(); ++j)
        if (s1[j] != 0) s2[i + j] -= q[i] * s1[j];
    }
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (deg(r1) != 0) throw std::logic_error("cyclotomic inversion: unexpected gcd");
  const Rat c = r1[deg(r1)];
  QVec out(ctx->phi, Rat(0));
  for (size_t i = 0; i < s1.size() && i < out.size(); ++i) out[i] = s1[i] / c;
  // degrees beyond phi-1 cannot appear: deg s1 < deg poly - deg gcd
  for (size_t i = out.size(); i < s1.size(); ++i)
    if (s1[i] != 0) throw std::logic_error("cyclotomic inversion: degree overflow");
  return make_at(x.modulus, std::move(out));
}

CycloNumber cyclo_pow(const CycloNumber& x, long long e) {
  if (e < 0) return cyclo_pow(invert(x), -e);
  CycloNumber r = cyclo_rational(Rat(1));
  CycloNumber b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    if (e >>= 1) b = mul(b, b);
  }
  return r;
}

CycloNumber cyclo_from_exponent_counts(long long n, const std::vector<Int>& counts) {
  if (static_cast<long long>(counts.size()) != n)
    throw std::invalid_argument("cyclo_from_exponent_counts: counts must have length n");
  long long g = n;
  for (long long e = 0; e < n; ++e)
    if (counts[e] != 0) g = std::gcd(g, e);
  if (g == 0) g = n;  // all counts zero
  const long long n2 = n / g;
  auto ctx = contexts().get(n2);
  QVec out(ctx->phi, Rat(0));
  for (long long e = 0; e < n; ++e)
    if (counts[e] != 0) add_power(out, ctx, e / g, Rat(counts[e]));
  return make_at(n2, std::move(out));
}

std::optional<Rat> try_as_rational(const CycloNumber& x) {
  for (size_t i = 1; i < x.coeffs.size(); ++i)
    if (x.coeffs[i] != 0) return std::nullopt;
  return x.coeffs[0];
}

Rat as_rational(const CycloNumber& x) {
  auto q = try_as_rational(x);
  if (!q) throw NotRationalError("value is not rational", to_complex(x));
  return *q;
}

Int as_integer(const CycloNumber& x) {
  auto q = try_as_rational(x);
  if (!q || !is_integer(*q))
    throw NotRationalError("value is not an integer", to_complex(x));
  return q->get_num();
}

std::complex<double> to_complex(const CycloNumber& x) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  std::complex<double> s(0.0, 0.0);
  for (size_t j = 0; j < x.coeffs.size(); ++j)
    if (x.coeffs[j] != 0)
      s += x.coeffs[j].get_d() *
           std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(x.modulus));
  return s;
}

}  // namespace vt
