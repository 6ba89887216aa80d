#include "verlinde/linalg.hpp"

#include <cassert>
#include <stdexcept>

namespace vt {

QMat QMat::identity(int n) {
  QMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMat mat_mul(const QMat& x, const QMat& y) {
  assert(x.cols == y.rows);
  QMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xv = x(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += xv * y(k, j);
    }
  return r;
}

QVec mat_vec(const QMat& m, const QVec& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  QVec r(m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) r[i] += m(i, j) * v[j];
  return r;
}

QMat transpose(const QMat& m) {
  QMat r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r(j, i) = m(i, j);
  return r;
}

Rat det(QMat m) {
  assert(m.rows == m.cols);
  const int n = m.rows;
  Rat d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) return Rat(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    const Rat inv_p = 1 / m(c, c);
    for (int r = c + 1; r < n; ++r) {
      if (m(r, c) == 0) continue;
      const Rat f = m(r, c) * inv_p;
      for (int j = c; j < n; ++j) m(r, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<QMat> inverse(QMat m) {
  assert(m.rows == m.cols);
  const int n = m.rows;
  QMat inv = QMat::identity(n);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int r = c; r < n; ++r)
      if (m(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;
    if (p != c)
      for (int j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rat piv = 1 / m(c, c);
    for (int j = 0; j < n; ++j) {
      m(c, j) *= piv;
      inv(c, j) *= piv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || m(r, c) == 0) continue;
      const Rat f = m(r, c);
      for (int j = 0; j < n; ++j) {
        m(r, j) -= f * m(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::optional<QVec> solve(const QMat& m, const QVec& b) {
  assert(static_cast<int>(b.size()) == m.rows);
  // Gaussian elimination on the augmented system; requires a unique solution.
  QMat w(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) w(i, j) = m(i, j);
    w(i, m.cols) = b[i];
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < m.cols && row < m.rows; ++c) {
    int p = -1;
    for (int r = row; r < m.rows; ++r)
      if (w(r, c) != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    if (p != row)
      for (int j = 0; j <= m.cols; ++j) std::swap(w(p, j), w(row, j));
    const Rat piv = 1 / w(row, c);
    for (int j = c; j <= m.cols; ++j) w(row, j) *= piv;
    for (int r = 0; r < m.rows; ++r) {
      if (r == row || w(r, c) == 0) continue;
      const Rat f = w(r, c);
      for (int j = c; j <= m.cols; ++j) w(r, j) -= f * w(row, j);
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (static_cast<int>(pivot_col.size()) != m.cols) return std::nullopt;  // not full column rank
  for (int r = row; r < m.rows; ++r)
    if (w(r, m.cols) != 0) return std::nullopt;  // inconsistent
  QVec x(m.cols);
  for (int i = 0; i < m.cols; ++i) x[pivot_col[i]] = w(i, m.cols);
  return x;
}

QVec vec_add(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] + y[i];
  return r;
}

QVec vec_sub(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = x[i] - y[i];
  return r;
}

QVec vec_scale(const Rat& c, const QVec& x) {
  QVec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

Rat dot(const QVec& x, const QVec& y) {
  assert(x.size() == y.size());
  Rat r(0);
  for (size_t i = 0; i < x.size(); ++i) r += x[i] * y[i];
  return r;
}

std::vector<std::vector<Int>> hnf_basis(std::vector<std::vector<Int>> rows) {
  if (rows.empty()) return rows;
  const size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    // Euclid on column c below row r.
    while (true) {
      size_t p = rows.size();
      for (size_t i = r; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (p == rows.size() || abs(rows[i][c]) < abs(rows[p][c]))) p = i;
      if (p == rows.size()) break;  // column is zero below r
      std::swap(rows[r], rows[p]);
      bool reduced = true;
      for (size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
        for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
        if (rows[i][c] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (rows[r][c] == 0) continue;
    if (rows[r][c] < 0)
      for (size_t j = 0; j < cols; ++j) rows[r][j] = -rows[r][j];
    // Reduce the rows above to obtain the canonical form.
    for (size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[r][c].get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < cols; ++j) rows[i][j] -= q * rows[r][j];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

Int lattice_index(const std::vector<std::vector<Int>>& sup,
                  const std::vector<std::vector<Int>>& sub) {
  auto basis_sup = hnf_basis(sup);
  auto basis_sub = hnf_basis(sub);
  if (basis_sup.size() != basis_sub.size())
    throw std::domain_error("lattice_index: ranks differ");
  const int r = static_cast<int>(basis_sup.size());
  if (r == 0) return Int(1);
  const size_t cols = basis_sup[0].size();
  // Express each sub basis row in the sup basis: X * sup = sub.
  QMat a(static_cast<int>(cols), r);
  for (int i = 0; i < r; ++i)
    for (size_t j = 0; j < cols; ++j) a(static_cast<int>(j), i) = Rat(basis_sup[i][j]);
  QMat x(r, r);
  for (int i = 0; i < r; ++i) {
    QVec b(cols);
    for (size_t j = 0; j < cols; ++j) b[j] = Rat(basis_sub[i][j]);
    auto sol = solve(a, b);
    if (!sol) throw std::domain_error("lattice_index: sublattice not contained in span");
    for (int j = 0; j < r; ++j) {
      if (!is_integer((*sol)[j]))
        throw std::domain_error("lattice_index: sublattice not contained in lattice");
      x(i, j) = (*sol)[j];
    }
  }
  Rat d = det(x);
  Int n = d.get_num();
  return n < 0 ? Int(-n) : n;
}

}  // namespace vt
