#include "verlinde/root_datum.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

namespace vt {

namespace {

// Internal consistency check during construction; failures indicate a bug in
// the tables below, not bad user input.
void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("root datum construction: ") + what);
}

struct AmbientModel {
  int dim;
  Rat scale;
  std::vector<QVec> simple_roots;
};

QVec eps(int dim, int i, const Rat& v) {
  QVec x(dim, Rat(0));
  x[i] = v;
  return x;
}

AmbientModel ambient_model(LieType t) {
  const int n = t.rank;
  AmbientModel m;
  switch (t.family) {
    case 'A': {
      m.dim = n + 1;
      m.scale = 1;
      for (int i = 0; i < n; ++i) {
        QVec a(m.dim, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        m.simple_roots.push_back(a);
      }
      break;
    }
    case 'B': {
      m.dim = n;
      m.scale = 1;
      for (int i = 0; i + 1 < n; ++i) {
        QVec a(m.dim, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        m.simple_roots.push_back(a);
      }
      m.simple_roots.push_back(eps(m.dim, n - 1, 1));
      break;
    }
    case 'C': {
      m.dim = n;
      m.scale = Rat(1, 2);
      for (int i = 0; i + 1 < n; ++i) {
        QVec a(m.dim, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        m.simple_roots.push_back(a);
      }
      m.simple_roots.push_back(eps(m.dim, n - 1, 2));
      break;
    }
    case 'D': {
      m.dim = n;
      m.scale = 1;
      for (int i = 0; i + 1 < n; ++i) {
        QVec a(m.dim, Rat(0));
        a[i] = 1;
        a[i + 1] = -1;
        m.simple_roots.push_back(a);
      }
      QVec a(m.dim, Rat(0));
      a[n - 2] = 1;
      a[n - 1] = 1;
      m.simple_roots.push_back(a);
      break;
    }
    case 'E': {
      m.dim = 8;
      m.scale = 1;
      QVec a1(8, Rat(-1, 2));
      a1[0] = Rat(1, 2);
      a1[7] = Rat(1, 2);
      QVec a2(8, Rat(0));
      a2[0] = 1;
      a2[1] = 1;
      m.simple_roots.push_back(a1);
      m.simple_roots.push_back(a2);
      for (int i = 0; i + 3 < t.rank + 1; ++i) {
        QVec a(8, Rat(0));
        a[i] = -1;
        a[i + 1] = 1;
        m.simple_roots.push_back(a);
      }
      break;
    }
    case 'F': {
      m.dim = 4;
      m.scale = 1;
      m.simple_roots = {
          QVec{Rat(0), Rat(1), Rat(-1), Rat(0)},
          QVec{Rat(0), Rat(0), Rat(1), Rat(-1)},
          QVec{Rat(0), Rat(0), Rat(0), Rat(1)},
          QVec{Rat(1, 2), Rat(-1, 2), Rat(-1, 2), Rat(-1, 2)},
      };
      break;
    }
    case 'G': {
      m.dim = 3;
      m.scale = Rat(1, 3);
      m.simple_roots = {
          QVec{Rat(1), Rat(-1), Rat(0)},
          QVec{Rat(-2), Rat(1), Rat(1)},
      };
      break;
    }
    default:
      throw std::invalid_argument("unknown family");
  }
  check(static_cast<int>(m.simple_roots.size()) == n, "simple root count");
  return m;
}

Int classical_weyl_order(LieType t) {
  const int n = t.rank;
  auto fact = [](int m) {
    Int f(1);
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  switch (t.family) {
    case 'A': return fact(n + 1);
    case 'B':
    case 'C': return fact(n) * pow_int(Int(2), n);
    case 'D': return fact(n) * pow_int(Int(2), n - 1);
    case 'E': return n == 6 ? Int(51840) : n == 7 ? Int(2903040) : Int(696729600);
    case 'F': return Int(1152);
    case 'G': return Int(12);
  }
  return Int(0);
}

long long pairing_with_simple_coroot(const RootDatum& d, const IVec& root_coords, int i) {
  long long p = 0;
  for (int j = 0; j < d.rank; ++j) p += root_coords[j] * d.cartan[i][j];
  return p;
}

IMat simple_reflection_wmat(const RootDatum& d, int i) {
  IMat p = IMat::identity(d.rank);
  for (int j = 0; j < d.rank; ++j) p(j, i) -= d.cartan[j][i];
  return p;
}

// Number of positive roots sent to negative roots.
int weyl_length(const RootDatum& d, const IMat& m) {
  int len = 0;
  for (const auto& aw : d.positive_roots_w) {
    IVec img = imat_vec(m, aw);
    QVec rc = mat_vec(d.cartan_inv, qvec_of(img));
    for (int j = 0; j < d.rank; ++j) {
      if (rc[j] == 0) continue;
      if (rc[j] < 0) ++len;
      break;
    }
  }
  return len;
}

}  // namespace

IMat IMat::identity(int n) {
  IMat m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IMat imat_mul(const IMat& x, const IMat& y) {
  assert(x.n == y.n);
  IMat r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      const long long v = x(i, k);
      if (!v) continue;
      for (int j = 0; j < x.n; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}

IVec imat_vec(const IMat& m, const IVec& v) {
  IVec r(m.n, 0);
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) r[i] += m(i, j) * v[j];
  return r;
}

QVec imat_vec(const IMat& m, const QVec& v) {
  QVec r(m.n, Rat(0));
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j)
      if (m(i, j)) r[i] += rat_ll(m(i, j)) * v[j];
  return r;
}

Rat inner(const RootDatum& d, const QVec& x, const QVec& y) {
  if (static_cast<int>(x.size()) != d.ambient_dim || static_cast<int>(y.size()) != d.ambient_dim)
    throw std::invalid_argument("inner: ambient dimension mismatch");
  return d.metric_scale * dot(x, y);
}

Rat RootDatum::inner_w(const QVec& x_w, const QVec& y_w) const {
  Rat r(0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j)
      if (x_w[i] != 0 && y_w[j] != 0) r += x_w[i] * gram_weights(i, j) * y_w[j];
  return r;
}

QVec to_weight_coords(const RootDatum& d, const QVec& ambient) {
  return mat_vec(d.weight_from_ambient, ambient);
}

QVec to_ambient(const RootDatum& d, const QVec& weight_coords) {
  return mat_vec(d.ambient_from_weight, weight_coords);
}

bool is_dominant(const IVec& w) {
  for (long long x : w)
    if (x < 0) return false;
  return true;
}

long long weight_level(const RootDatum& d, const IVec& w) {
  long long l = 0;
  for (int i = 0; i < d.rank; ++i) l += d.comarks[i] * w[i];
  return l;
}

Rat weight_level_rat(const RootDatum& d, const QVec& xi_w) {
  Rat l(0);
  for (int i = 0; i < d.rank; ++i) l += rat_ll(d.comarks[i]) * xi_w[i];
  return l;
}

RootDatum build_root_datum(LieType t) {
  validate_lie_type(t);
  RootDatum d;
  d.type = t;
  d.rank = t.rank;

  AmbientModel model = ambient_model(t);
  d.ambient_dim = model.dim;
  d.metric_scale = model.scale;
  d.simple_roots = model.simple_roots;

  d.simple_norm2.resize(d.rank);
  for (int i = 0; i < d.rank; ++i) {
    d.simple_norm2[i] = d.metric_scale * dot(d.simple_roots[i], d.simple_roots[i]);
    check(d.simple_norm2[i] > 0, "root norms");
  }

  d.cartan.assign(d.rank, IVec(d.rank, 0));
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) {
      Rat c = 2 * d.metric_scale * dot(d.simple_roots[i], d.simple_roots[j]) / d.simple_norm2[i];
      check(is_integer(c), "Cartan integrality");
      d.cartan[i][j] = rat_to_ll(c);
      if (i == j) check(d.cartan[i][j] == 2, "Cartan diagonal");
    }

  {
    QMat c(d.rank, d.rank);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) c(i, j) = rat_ll(d.cartan[i][j]);
    auto inv = inverse(c);
    check(inv.has_value(), "Cartan invertible");
    d.cartan_inv = *inv;
    Rat dc = det(c);
    check(is_integer(dc) && dc > 0, "Cartan determinant");
    d.center_order = rat_to_ll(dc);
  }

  for (int i = 0; i < d.rank; ++i) {
    d.simple_coroots.push_back(vec_scale(2 / d.simple_norm2[i], d.simple_roots[i]));
    QVec w(d.ambient_dim, Rat(0));
    for (int l = 0; l < d.rank; ++l)
      w = vec_add(w, vec_scale(d.cartan_inv(l, i), d.simple_roots[l]));
    d.fundamental_weights.push_back(w);
  }

  // Close the simple roots under simple reflections (coordinates in the
  // simple-root basis stay integral); keep the positive half.
  {
    std::set<IVec> all;
    std::vector<IVec> frontier;
    for (int i = 0; i < d.rank; ++i) {
      IVec e(d.rank, 0);
      e[i] = 1;
      all.insert(e);
      frontier.push_back(e);
    }
    while (!frontier.empty()) {
      std::vector<IVec> next;
      for (const auto& b : frontier)
        for (int i = 0; i < d.rank; ++i) {
          IVec s = b;
          s[i] -= pairing_with_simple_coroot(d, b, i);
          if (all.insert(s).second) next.push_back(s);
        }
      frontier = std::move(next);
    }
    std::vector<std::pair<long long, IVec>> pos;
    for (const auto& r : all) {
      bool nonneg = true;
      long long ht = 0;
      for (long long x : r) {
        if (x < 0) nonneg = false;
        ht += x;
      }
      if (nonneg) pos.emplace_back(ht, r);
    }
    std::sort(pos.begin(), pos.end());
    check(2 * pos.size() == all.size(), "roots come in opposite pairs");
    for (auto& [ht, r] : pos) {
      d.positive_roots_r.push_back(r);
      QVec amb(d.ambient_dim, Rat(0));
      IVec w(d.rank, 0);
      QVec pairing(d.rank, Rat(0));
      for (int j = 0; j < d.rank; ++j) {
        if (!r[j]) continue;
        amb = vec_add(amb, vec_scale(rat_ll(r[j]), d.simple_roots[j]));
        pairing[j] = rat_ll(r[j]) * d.simple_norm2[j] / 2;
      }
      for (int i = 0; i < d.rank; ++i) w[i] = pairing_with_simple_coroot(d, r, i);
      Rat n2 = inner(d, amb, amb);
      check(n2 == Rat(2) || n2 < 2, "basic normalization");
      d.positive_roots.push_back(amb);
      d.positive_roots_w.push_back(w);
      d.positive_root_pairing.push_back(pairing);
      d.positive_root_long.push_back(n2 == Rat(2) ? 1 : 0);
    }
    check(d.positive_root_long.back() == 1, "highest root is long");
    d.highest_root = d.positive_roots.back();
    d.highest_root_w = d.positive_roots_w.back();
    d.marks = d.positive_roots_r.back();
    // unique root of maximal height
    if (d.positive_roots_r.size() >= 2) {
      long long top = 0, second = 0;
      for (long long x : d.marks) top += x;
      for (long long x : d.positive_roots_r[d.positive_roots_r.size() - 2]) second += x;
      check(second < top, "highest root unique");
    }
  }

  d.comarks.resize(d.rank);
  long long comark_sum = 0;
  for (int i = 0; i < d.rank; ++i) {
    Rat lv = inner(d, d.fundamental_weights[i], d.highest_root);
    check(is_integer(lv) && lv > 0, "comark integrality");
    d.comarks[i] = rat_to_ll(lv);
    comark_sum += d.comarks[i];
  }
  d.dual_coxeter = 1 + comark_sum;

  d.weyl_order = classical_weyl_order(t);

  d.gram_weights = QMat(d.rank, d.rank);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) {
      d.gram_weights(i, j) = inner(d, d.fundamental_weights[i], d.fundamental_weights[j]);
      check(d.gram_weights(i, j) == d.cartan_inv(j, i) * d.simple_norm2[j] / 2,
            "gram consistency");
    }

  d.ambient_from_weight = QMat(d.ambient_dim, d.rank);
  for (int j = 0; j < d.rank; ++j)
    for (int i = 0; i < d.ambient_dim; ++i) d.ambient_from_weight(i, j) = d.fundamental_weights[j][i];
  d.weight_from_ambient = QMat(d.rank, d.ambient_dim);
  for (int i = 0; i < d.rank; ++i) {
    const Rat f = 2 * d.metric_scale / d.simple_norm2[i];
    for (int j = 0; j < d.ambient_dim; ++j) d.weight_from_ambient(i, j) = f * d.simple_roots[i][j];
  }

  d.covee_w = QMat(d.rank, d.rank);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) d.covee_w(j, i) = rat_ll(2 * d.cartan[j][i]) / d.simple_norm2[i];
  {
    auto inv = inverse(d.covee_w);
    check(inv.has_value(), "coroot basis invertible");
    d.covee_w_inv = *inv;
  }

  // index of the lattice generated by the long roots inside the root lattice
  {
    std::vector<std::vector<Int>> sup, sub;
    for (int i = 0; i < d.rank; ++i) {
      std::vector<Int> e(d.rank, Int(0));
      e[i] = 1;
      sup.push_back(e);
    }
    for (size_t a = 0; a < d.positive_roots_r.size(); ++a) {
      if (!d.positive_root_long[a]) continue;
      std::vector<Int> r(d.rank);
      for (int j = 0; j < d.rank; ++j) r[j] = int_ll(d.positive_roots_r[a][j]);
      sub.push_back(r);
    }
    d.long_index = to_ll(lattice_index(sup, sub));
  }

  // center representatives: origin plus the minuscule alcove vertices
  {
    d.center_coweight_reps.push_back(QVec(d.ambient_dim, Rat(0)));
    d.center_coweight_reps_w.push_back(QVec(d.rank, Rat(0)));
    for (int i = 0; i < d.rank; ++i) {
      if (d.marks[i] != 1) continue;
      check(d.simple_norm2[i] == Rat(2), "minuscule node is long");
      d.center_coweight_reps.push_back(d.fundamental_weights[i]);
      QVec w(d.rank, Rat(0));
      w[i] = 1;
      d.center_coweight_reps_w.push_back(w);
    }
    check(static_cast<long long>(d.center_coweight_reps.size()) == d.center_order,
          "center order equals minuscule count + 1");
    const int z = static_cast<int>(d.center_order);
    d.center_mult.assign(z, std::vector<int>(z, -1));
    for (int i = 0; i < z; ++i)
      for (int j = 0; j < z; ++j) {
        QVec sum = vec_add(d.center_coweight_reps_w[i], d.center_coweight_reps_w[j]);
        for (int m = 0; m < z; ++m)
          if (in_coroot_lattice(d, vec_sub(sum, d.center_coweight_reps_w[m]))) {
            check(d.center_mult[i][j] == -1, "center product unique");
            d.center_mult[i][j] = m;
          }
        check(d.center_mult[i][j] >= 0, "center closed under addition");
      }
    d.center_inv.assign(z, -1);
    d.center_elt_order.assign(z, 0);
    for (int i = 0; i < z; ++i) {
      for (int j = 0; j < z; ++j)
        if (d.center_mult[i][j] == 0) d.center_inv[i] = j;
      check(d.center_inv[i] >= 0, "center inverses");
      int cur = i;
      long long ord = 1;
      while (cur != 0) {
        cur = d.center_mult[cur][i];
        ++ord;
        check(ord <= d.center_order, "center element order");
      }
      d.center_elt_order[i] = ord;
    }
  }

  return d;
}

std::vector<IVec> level_weights(const RootDatum& d, long long k) {
  if (k < 0) throw std::invalid_argument("level_weights: negative level");
  std::vector<IVec> out;
  IVec cur(d.rank, 0);
  std::function<void(int, long long)> rec = [&](int pos, long long budget) {
    if (pos == d.rank) {
      out.push_back(cur);
      return;
    }
    for (long long m = 0; m * d.comarks[pos] <= budget; ++m) {
      cur[pos] = m;
      rec(pos + 1, budget - m * d.comarks[pos]);
    }
    cur[pos] = 0;
  };
  rec(0, k);
  return out;
}

QVec coroot_coords(const RootDatum& d, const QVec& xi_w) {
  return mat_vec(d.covee_w_inv, xi_w);
}

bool in_coroot_lattice(const RootDatum& d, const QVec& xi_w) {
  for (const Rat& c : coroot_coords(d, xi_w))
    if (!is_integer(c)) return false;
  return true;
}

QVec apply_weyl(const RootDatum& d, const WeylElement& w, const QVec& xi_w) {
  (void)d;
  return imat_vec(w.wmat, xi_w);
}

std::vector<int> reduced_word(const RootDatum& d, const IMat& m) {
  std::vector<int> word;
  IMat cur = m;
  const IMat id = IMat::identity(d.rank);
  while (!(cur == id)) {
    // find a simple root sent negative; multiplying by its reflection shortens
    int pick = -1;
    for (int i = 0; i < d.rank && pick < 0; ++i) {
      IVec alpha_w(d.rank);
      for (int j = 0; j < d.rank; ++j) alpha_w[j] = d.cartan[j][i];
      IVec img = imat_vec(cur, alpha_w);
      QVec rc = mat_vec(d.cartan_inv, qvec_of(img));
      for (int j = 0; j < d.rank; ++j) {
        if (rc[j] == 0) continue;
        if (rc[j] < 0) pick = i;
        break;
      }
    }
    check(pick >= 0, "reduced word extraction");
    cur = imat_mul(cur, simple_reflection_wmat(d, pick));
    word.push_back(pick);
    check(word.size() <= d.positive_roots.size(), "reduced word length bound");
  }
  std::reverse(word.begin(), word.end());
  return word;
}

WeylElement weyl_from_wmat(const RootDatum& d, const IMat& m) {
  WeylElement w;
  w.wmat = m;
  w.word = reduced_word(d, m);
  w.sign = (w.word.size() % 2) ? -1 : 1;
  // ambient action: conjugate the chart action back, identity off the root span
  QMat mid(d.rank, d.rank);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) mid(i, j) = rat_ll(m(i, j));
  QMat span_part = mat_mul(d.ambient_from_weight, mat_mul(mid, d.weight_from_ambient));
  QMat proj = mat_mul(d.ambient_from_weight, d.weight_from_ambient);
  w.matrix = QMat::identity(d.ambient_dim);
  for (int i = 0; i < d.ambient_dim; ++i)
    for (int j = 0; j < d.ambient_dim; ++j) w.matrix(i, j) += span_part(i, j) - proj(i, j);
  return w;
}

AffineReduction affine_reduce(const RootDatum& d, const QVec& xi_w) {
  if (static_cast<int>(xi_w.size()) != d.rank)
    throw std::invalid_argument("affine_reduce: expected weight coordinates");
  QVec theta_w(d.rank);
  for (int i = 0; i < d.rank; ++i) theta_w[i] = rat_ll(d.highest_root_w[i]);

  QVec cur = xi_w;
  IMat acc = IMat::identity(d.rank);
  IVec acc_b(d.rank, 0);
  auto apply_linear = [&](const IMat& p) {
    cur = imat_vec(p, cur);
    acc = imat_mul(p, acc);
    acc_b = imat_vec(p, acc_b);
  };
  long safety = 0;
  while (true) {
    if (++safety > 2000000) throw std::logic_error("affine_reduce: no convergence");
    int neg = -1;
    for (int i = 0; i < d.rank; ++i)
      if (cur[i] < 0) {
        neg = i;
        break;
      }
    if (neg >= 0) {
      apply_linear(simple_reflection_wmat(d, neg));
      continue;
    }
    if (weight_level_rat(d, cur) > 1) {
      // reflect in the wall {level = 1}: x -> x - (level(x) - 1) * theta
      IMat s_theta = IMat::identity(d.rank);
      for (int i = 0; i < d.rank; ++i)
        for (int j = 0; j < d.rank; ++j) s_theta(i, j) -= d.highest_root_w[i] * d.comarks[j];
      apply_linear(s_theta);
      for (int i = 0; i < d.rank; ++i) {
        cur[i] += theta_w[i];
        acc_b[i] += d.highest_root_w[i];
      }
      continue;
    }
    break;
  }

  // xi_red = acc * xi + acc_b, so w = acc^{-1} and tau = -w(acc_b).
  QMat accq(d.rank, d.rank);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) accq(i, j) = rat_ll(acc(i, j));
  auto invq = inverse(accq);
  check(invq.has_value(), "accumulated Weyl part invertible");
  IMat w(d.rank);
  for (int i = 0; i < d.rank; ++i)
    for (int j = 0; j < d.rank; ++j) w(i, j) = rat_to_ll((*invq)(i, j));
  QVec tau(d.rank);
  {
    IVec wb = imat_vec(w, acc_b);
    for (int i = 0; i < d.rank; ++i) tau[i] = rat_ll(-wb[i]);
  }

  // On walls several (w, tau) reproduce xi; pick the shortest Weyl part by
  // greedy descent over the reflections fixing xi_red.
  std::vector<std::pair<IMat, IVec>> stab;  // linear part and translation
  for (int i = 0; i < d.rank; ++i)
    if (cur[i] == 0) stab.emplace_back(simple_reflection_wmat(d, i), IVec(d.rank, 0));
  if (weight_level_rat(d, cur) == 1) {
    IMat s_theta = IMat::identity(d.rank);
    for (int i = 0; i < d.rank; ++i)
      for (int j = 0; j < d.rank; ++j) s_theta(i, j) -= d.highest_root_w[i] * d.comarks[j];
    stab.emplace_back(s_theta, d.highest_root_w);
  }
  if (!stab.empty()) {
    int len = weyl_length(d, w);
    bool improved = true;
    while (improved && len > 0) {
      improved = false;
      for (const auto& [p, q] : stab) {
        IMat cand = imat_mul(w, p);
        int cand_len = weyl_length(d, cand);
        if (cand_len < len) {
          QVec wq(d.rank);
          IVec wqv = imat_vec(w, q);
          for (int i = 0; i < d.rank; ++i) wq[i] = rat_ll(wqv[i]);
          tau = vec_add(tau, wq);
          w = cand;
          len = cand_len;
          improved = true;
          break;
        }
      }
    }
  }

  AffineReduction r;
  r.xi = cur;
  r.w = weyl_from_wmat(d, w);
  r.tau = tau;
  return r;
}

namespace {

struct OrbitKey {
  size_t operator()(const IVec& v) const {
    size_t h = 1469598103934665603ull;
    for (long long x : v) {
      h ^= static_cast<size_t>(x);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

void for_each_weyl_element(const RootDatum& d,
                           const std::function<void(const WeylElement&)>& fn,
                           long long cap) {
  if (d.weyl_order > int_ll(cap))
    throw WeylGroupTooLarge("Weyl group of " + to_string(d.type) + " has " +
                            d.weyl_order.get_str() + " elements, above the cap " +
                            std::to_string(cap) + "; use the multiplicity-based character path");
  std::vector<IMat> gens;
  for (int i = 0; i < d.rank; ++i) gens.push_back(simple_reflection_wmat(d, i));

  std::vector<IVec> points;
  std::vector<std::pair<int, int>> parent;  // (parent index, generator)
  std::unordered_map<IVec, int, OrbitKey> seen;
  IVec rho(d.rank, 1);
  points.push_back(rho);
  parent.emplace_back(-1, -1);
  seen.emplace(rho, 0);
  for (size_t head = 0; head < points.size(); ++head) {
    // re-derive the word and matrix for this node
    std::vector<int> word;
    for (int at = static_cast<int>(head); parent[at].first >= 0; at = parent[at].first)
      word.push_back(parent[at].second);
    WeylElement w;
    w.wmat = IMat::identity(d.rank);
    for (int g : word) w.wmat = imat_mul(w.wmat, gens[g]);
    WeylElement full = weyl_from_wmat(d, w.wmat);
    // keep the breadth-first word (already reduced: depth equals length)
    full.word = word;
    full.sign = (word.size() % 2) ? -1 : 1;
    fn(full);

    IVec p = points[head];
    for (int i = 0; i < d.rank; ++i) {
      IVec q = p;
      long long c = p[i];
      for (int j = 0; j < d.rank; ++j) q[j] -= c * d.cartan[j][i];
      if (seen.emplace(q, static_cast<int>(points.size())).second) {
        points.push_back(q);
        parent.emplace_back(static_cast<int>(head), i);
      }
    }
  }
}

void weyl_orbit_signed(const RootDatum& d, const IVec& strictly_dominant,
                       const std::function<void(const IVec&, int)>& fn) {
  for (long long c : strictly_dominant)
    if (c <= 0) throw std::invalid_argument("weyl_orbit_signed: point must be strictly dominant");
  std::unordered_map<IVec, char, OrbitKey> seen;
  std::vector<std::pair<IVec, char>> queue;
  queue.emplace_back(strictly_dominant, 1);
  seen.emplace(strictly_dominant, 1);
  for (size_t head = 0; head < queue.size(); ++head) {
    auto [p, sign] = queue[head];
    fn(p, sign);
    for (int i = 0; i < d.rank; ++i) {
      IVec q = p;
      long long c = p[i];
      if (c == 0) continue;
      for (int j = 0; j < d.rank; ++j) q[j] -= c * d.cartan[j][i];
      if (seen.emplace(q, static_cast<char>(-sign)).second) queue.emplace_back(q, -sign);
    }
  }
}

void weyl_orbit(const RootDatum& d, const IVec& dominant,
                const std::function<void(const IVec&)>& fn) {
  std::unordered_map<IVec, char, OrbitKey> seen;
  std::vector<IVec> queue{dominant};
  seen.emplace(dominant, 1);
  for (size_t head = 0; head < queue.size(); ++head) {
    IVec p = queue[head];
    fn(p);
    for (int i = 0; i < d.rank; ++i) {
      IVec q = p;
      long long c = p[i];
      if (c == 0) continue;
      for (int j = 0; j < d.rank; ++j) q[j] -= c * d.cartan[j][i];
      if (seen.emplace(q, 1).second) queue.push_back(q);
    }
  }
}

IVec dominantize(const RootDatum& d, IVec w) {
  long safety = 0;
  while (true) {
    if (++safety > 1000000) throw std::logic_error("dominantize: no convergence");
    int neg = -1;
    for (int i = 0; i < d.rank; ++i)
      if (w[i] < 0) {
        neg = i;
        break;
      }
    if (neg < 0) return w;
    long long c = w[neg];
    for (int j = 0; j < d.rank; ++j) w[j] -= c * d.cartan[j][neg];
  }
}

IVec star_weight(const RootDatum& d, const IVec& mu) {
  IVec neg(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) neg[i] = -mu[i];
  return dominantize(d, neg);
}

}  // namespace vt
