#pragma once

#include <optional>
#include <vector>

#include "verlinde/rat.hpp"

namespace vt {

// Dense rational matrix, row major.
struct QMat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  QMat() = default;
  QMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  Rat& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static QMat identity(int n);
  bool operator==(const QMat&) const = default;
};

QMat mat_mul(const QMat& x, const QMat& y);
QVec mat_vec(const QMat& m, const QVec& v);
QMat transpose(const QMat& m);
Rat det(QMat m);                       // Gaussian elimination, exact
std::optional<QMat> inverse(QMat m);   // nullopt if singular

// Solves m x = b; nullopt if inconsistent or underdetermined solution is not unique
// in the column span sense (m must have full column rank).
std::optional<QVec> solve(const QMat& m, const QVec& b);

QVec vec_add(const QVec& x, const QVec& y);
QVec vec_sub(const QVec& x, const QVec& y);
QVec vec_scale(const Rat& c, const QVec& x);
Rat dot(const QVec& x, const QVec& y);

// Row Hermite normal form of an integer matrix; returns the nonzero rows
// (a canonical basis of the row lattice).
std::vector<std::vector<Int>> hnf_basis(std::vector<std::vector<Int>> rows);

// Index of the lattice spanned by `sub` inside the lattice spanned by `sup`
// (rows are integer coordinate vectors in a common basis). Requires equal rank;
// throws if `sub` is not contained in the span of `sup` over Q.
Int lattice_index(const std::vector<std::vector<Int>>& sup,
                  const std::vector<std::vector<Int>>& sub);

}  // namespace vt
