#include "verlinde/fixedpoint.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace vt {

namespace {

using Cplx = std::complex<double>;

constexpr double kPi = 3.14159265358979323846;

// Clustering threshold for snapping adjoint eigenvalues to +-1, and the
// caution band above it where classification would be a guess.
constexpr double kClusterTol = 1e-8;
constexpr double kClusterBand = 1e-7;

void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void ensure(bool ok, const char* msg) {
  if (!ok) throw std::logic_error(msg);
}

// ---------------------------------------------------------------------------
// Lie algebra bases

// Orthonormal basis for the negative trace form <X,Y> = -tr(XY); real
// coefficients, anti-Hermitian matrices.
std::vector<Eigen::MatrixXcd> algebra_basis(MatrixGroup group, int n) {
  std::vector<Eigen::MatrixXcd> basis;
  const double r = 1.0 / std::sqrt(2.0);
  if (group == MatrixGroup::special_unitary) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
        x(i, j) = Cplx(r, 0.0);
        x(j, i) = Cplx(-r, 0.0);
        basis.push_back(x);
        Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(n, n);
        y(i, j) = Cplx(0.0, r);
        y(j, i) = Cplx(0.0, r);
        basis.push_back(y);
      }
    }
    for (int m = 1; m < n; ++m) {
      Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
      double norm = std::sqrt(static_cast<double>(m) * (m + 1));
      for (int i = 0; i < m; ++i) d(i, i) = Cplx(0.0, 1.0 / norm);
      d(m, m) = Cplx(0.0, -static_cast<double>(m) / norm);
      basis.push_back(d);
    }
  } else {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(n, n);
        x(i, j) = Cplx(r, 0.0);
        x(j, i) = Cplx(-r, 0.0);
        basis.push_back(x);
      }
    }
  }
  return basis;
}

double inner(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a * b.adjoint()).trace().real();
}

int checked_size(const MatrixGroupElement& g) {
  int n = static_cast<int>(g.matrix.rows());
  require(n >= 1 && g.matrix.cols() == n, "group element must be square");
  return n;
}

void require_same_shape(const MatrixGroupElement& a,
                        const MatrixGroupElement& b) {
  require(a.group == b.group && a.matrix.rows() == b.matrix.rows(),
          "elements must live in the same group");
}

Eigen::MatrixXd random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
  Eigen::MatrixXd q = qr.householderQ();
  Eigen::MatrixXd rdiag = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    if (rdiag(i, i) < 0.0) q.col(i) = -q.col(i);
  }
  if (q.determinant() < 0.0) q.col(0) = -q.col(0);
  return q;
}

// Symmetric part, used for eigenspace clustering of orthogonal matrices.
Eigen::MatrixXd sym(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

// C21 - C12 for a commuting adjoint pair; symmetric.
Eigen::MatrixXd moving_operator(const Eigen::MatrixXd& ada,
                                const Eigen::MatrixXd& adb) {
  int n = static_cast<int>(ada.rows());
  Eigen::MatrixXd s = ada + ada.transpose() + adb + adb.transpose() +
                      ada * adb.transpose() + adb * ada.transpose();
  return Eigen::MatrixXd::Identity(n, n) - 0.5 * s;
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrix group elements

MatrixGroupElement make_element(MatrixGroup group, const Eigen::MatrixXcd& m) {
  int n = static_cast<int>(m.rows());
  require(n >= 1 && m.cols() == n, "group element must be square");
  double scale = std::max(1.0, m.norm());
  if (group == MatrixGroup::special_orthogonal) {
    require(m.imag().norm() <= 1e-12 * scale,
            "orthogonal elements must be real");
  }
  Eigen::MatrixXcd gram = m * m.adjoint();
  require((gram - Eigen::MatrixXcd::Identity(n, n)).norm() <= 1e-12 * n * scale,
          "element is not unitary");
  Cplx det = m.determinant();
  require(std::abs(det - Cplx(1.0, 0.0)) <= 1e-12 * n * scale,
          "element must have determinant one");
  return MatrixGroupElement{group, m};
}

MatrixGroupElement identity_element(MatrixGroup group, int n) {
  require(n >= 1, "size must be positive");
  return MatrixGroupElement{group, Eigen::MatrixXcd::Identity(n, n)};
}

MatrixGroupElement su_torus_element(const std::vector<double>& angles) {
  int n = static_cast<int>(angles.size()) + 1;
  require(n >= 2, "need at least one angle");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  double total = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    m(i, i) = std::polar(1.0, angles[static_cast<size_t>(i)]);
    total += angles[static_cast<size_t>(i)];
  }
  m(n - 1, n - 1) = std::polar(1.0, -total);
  return make_element(MatrixGroup::special_unitary, m);
}

MatrixGroupElement so_torus_element(int n, const std::vector<double>& angles) {
  require(n >= 2, "size must be at least two");
  require(static_cast<int>(angles.size()) == n / 2,
          "expected one angle per coordinate plane");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (int b = 0; b < n / 2; ++b) {
    double t = angles[static_cast<size_t>(b)];
    m(2 * b, 2 * b) = std::cos(t);
    m(2 * b, 2 * b + 1) = -std::sin(t);
    m(2 * b + 1, 2 * b) = std::sin(t);
    m(2 * b + 1, 2 * b + 1) = std::cos(t);
  }
  return make_element(MatrixGroup::special_orthogonal, m.cast<Cplx>());
}

MatrixGroupElement group_product(const MatrixGroupElement& a,
                                 const MatrixGroupElement& b) {
  require_same_shape(a, b);
  return MatrixGroupElement{a.group, a.matrix * b.matrix};
}

MatrixGroupElement group_inverse(const MatrixGroupElement& a) {
  return MatrixGroupElement{a.group, a.matrix.adjoint()};
}

MatrixGroupElement random_element(MatrixGroup group, int n,
                                  std::mt19937_64& rng) {
  require(n >= 2, "size must be at least two");
  if (group == MatrixGroup::special_orthogonal) {
    return MatrixGroupElement{group, random_rotation(n, rng).cast<Cplx>()};
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Cplx(gauss(rng), gauss(rng));
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd rdiag = qr.matrixQR();
  for (int i = 0; i < n; ++i) {
    Cplx d = rdiag(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  Cplx det = q.determinant();
  q.col(0) *= std::conj(det);
  return MatrixGroupElement{group, q};
}

Eigen::MatrixXcd random_algebra_element(MatrixGroup group, int n,
                                        std::mt19937_64& rng) {
  require(n >= 2, "size must be at least two");
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (group == MatrixGroup::special_orthogonal) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m(i, j) = gauss(rng);
    }
    Eigen::MatrixXd x = 0.5 * (m - m.transpose());
    return x.cast<Cplx>();
  }
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = Cplx(gauss(rng), gauss(rng));
  }
  Eigen::MatrixXcd x = 0.5 * (m - m.adjoint());
  Cplx tr = x.trace();
  for (int i = 0; i < n; ++i) x(i, i) -= tr / static_cast<double>(n);
  return x;
}

MatrixGroupElement exponential_element(MatrixGroup group,
                                       const Eigen::MatrixXcd& algebra) {
  int n = static_cast<int>(algebra.rows());
  require(n >= 1 && algebra.cols() == n, "algebra element must be square");
  double scale = std::max(1.0, algebra.norm());
  require((algebra + algebra.adjoint()).norm() <= 1e-10 * scale,
          "algebra element must be anti-Hermitian");
  if (group == MatrixGroup::special_orthogonal) {
    require(algebra.imag().norm() <= 1e-12 * scale,
            "orthogonal algebra elements must be real");
  } else {
    require(std::abs(algebra.trace()) <= 1e-10 * scale,
            "unitary algebra elements must be traceless");
  }
  Eigen::MatrixXcd e = algebra.exp();
  return make_element(group, e);
}

int algebra_dim(MatrixGroup group, int n) {
  require(n >= 1, "size must be positive");
  return group == MatrixGroup::special_unitary ? n * n - 1 : n * (n - 1) / 2;
}

Eigen::MatrixXd adjoint_rep(const MatrixGroupElement& g) {
  int n = checked_size(g);
  std::vector<Eigen::MatrixXcd> basis = algebra_basis(g.group, n);
  int d = static_cast<int>(basis.size());
  Eigen::MatrixXd ad(d, d);
  Eigen::MatrixXcd ginv = g.matrix.adjoint();
  for (int j = 0; j < d; ++j) {
    Eigen::MatrixXcd moved = g.matrix * basis[static_cast<size_t>(j)] * ginv;
    for (int i = 0; i < d; ++i) {
      ad(i, j) = inner(basis[static_cast<size_t>(i)], moved);
    }
  }
  return ad;
}

// ---------------------------------------------------------------------------
// Two-form blocks

Eigen::MatrixXd TwoFormMatrix::full() const {
  int n = static_cast<int>(c11.rows());
  Eigen::MatrixXd out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = c11;
  out.topRightCorner(n, n) = c12;
  out.bottomLeftCorner(n, n) = c21;
  out.bottomRightCorner(n, n) = c22;
  return out;
}

namespace {

TwoFormMatrix two_form_from_adjoints(const Eigen::MatrixXd& ada,
                                     const Eigen::MatrixXd& adb) {
  int n = static_cast<int>(ada.rows());
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd adai = ada.transpose();
  Eigen::MatrixXd adbi = adb.transpose();
  TwoFormMatrix c;
  c.c11 = 0.5 * (adb - adbi);
  c.c12 = 0.5 * (-id + adb + adai + adb * adai);
  c.c21 = 0.5 * (id - ada - adbi - ada * adbi);
  c.c22 = 0.5 * (adai - ada);
  Eigen::MatrixXd f = c.full();
  ensure((f + f.transpose()).norm() <= 1e-10 * std::max(1.0, f.norm()),
         "two-form assembly lost antisymmetry");
  return c;
}

}  // namespace

TwoFormMatrix two_form_at(const MatrixGroupElement& a,
                          const MatrixGroupElement& b) {
  require_same_shape(a, b);
  return two_form_from_adjoints(adjoint_rep(a), adjoint_rep(b));
}

TwoFormMatrix weyl_two_form(const Eigen::MatrixXd& w1,
                            const Eigen::MatrixXd& w2) {
  int n = static_cast<int>(w1.rows());
  require(n >= 1 && w1.cols() == n && w2.rows() == n && w2.cols() == n,
          "Weyl matrices must be square and of equal size");
  for (const Eigen::MatrixXd* w : {&w1, &w2}) {
    require((w->transpose() * (*w) - Eigen::MatrixXd::Identity(n, n)).norm() <=
                1e-10 * n,
            "Weyl matrices must be orthogonal");
  }
  require((w1 * w2 - w2 * w1).norm() <= 1e-12 * std::max(1.0, w1.norm() * w2.norm()),
          "Weyl matrices must commute");
  return two_form_from_adjoints(w1, w2);
}

double torus_det_check(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2) {
  TwoFormMatrix c = weyl_two_form(w1, w2);
  int n = static_cast<int>(w1.rows());
  return (c.c11 * c.c22 - c.c12 * c.c21 - Eigen::MatrixXd::Identity(n, n))
      .norm();
}

// ---------------------------------------------------------------------------
// Moving-subspace bound and the straightening path

double rotation_plane_bound(double psi_a, double psi_b) {
  return 1.0 - std::cos(psi_a) - std::cos(psi_b) - std::cos(psi_a - psi_b);
}

namespace {

// Splits a symmetric matrix's eigenvectors into clusters at -1, +1 and the
// open middle; throws SplitError inside the caution band.
struct SnapClusters {
  std::vector<int> minus, plus, middle;
};

SnapClusters snap_eigenvalues(const Eigen::VectorXd& vals) {
  SnapClusters out;
  for (int i = 0; i < vals.size(); ++i) {
    double dm = std::abs(vals(i) + 1.0);
    double dp = std::abs(vals(i) - 1.0);
    if (dm <= kClusterTol) {
      out.minus.push_back(i);
    } else if (dp <= kClusterTol) {
      out.plus.push_back(i);
    } else if (dm <= kClusterBand || dp <= kClusterBand) {
      throw SplitError("eigenvalue too close to the clustering boundary");
    } else {
      out.middle.push_back(i);
    }
  }
  return out;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& m,
                               const std::vector<int>& idx) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = m.col(idx[k]);
  }
  return out;
}

void append_columns(std::vector<Eigen::VectorXd>& dst,
                    const Eigen::MatrixXd& m) {
  for (int j = 0; j < m.cols(); ++j) dst.push_back(m.col(j));
}

Eigen::MatrixXd pack_columns(const std::vector<Eigen::VectorXd>& cols,
                             int rows) {
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(cols.size()));
  for (size_t k = 0; k < cols.size(); ++k) {
    out.col(static_cast<Eigen::Index>(k)) = cols[k];
  }
  return out;
}

}  // namespace

FixedSubspaceSplit split_moving_subspace(const Eigen::MatrixXd& ad_a,
                                         const Eigen::MatrixXd& ad_b) {
  int n = static_cast<int>(ad_a.rows());
  require(n >= 1 && ad_a.cols() == n && ad_b.rows() == n && ad_b.cols() == n,
          "adjoint matrices must be square and of equal size");
  require((ad_a * ad_b - ad_b * ad_a).norm() <= 1e-10 * n,
          "adjoint matrices must commute");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esa(sym(ad_a));
  SnapClusters ca = snap_eigenvalues(esa.eigenvalues());

  std::vector<Eigen::VectorXd> frozen, moving;
  append_columns(moving, select_columns(esa.eigenvectors(), ca.middle));

  // Within each +-1 eigenspace of the first action, classify by the second.
  auto refine = [&](const std::vector<int>& idx, bool a_is_minus) {
    if (idx.empty()) return;
    Eigen::MatrixXd v = select_columns(esa.eigenvectors(), idx);
    Eigen::MatrixXd proj = v.transpose() * sym(ad_b) * v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esb(sym(proj));
    SnapClusters cb = snap_eigenvalues(esb.eigenvalues());
    Eigen::MatrixXd vm = v * select_columns(esb.eigenvectors(), cb.minus);
    Eigen::MatrixXd vp = v * select_columns(esb.eigenvectors(), cb.plus);
    Eigen::MatrixXd vmid = v * select_columns(esb.eigenvectors(), cb.middle);
    // Joint (-1,*) and (*,-1) eigenvectors freeze; (1,1) and rotating
    // directions keep moving.
    append_columns(a_is_minus ? frozen : moving, vp);
    append_columns(frozen, vm);
    append_columns(moving, vmid);
  };
  refine(ca.minus, true);
  refine(ca.plus, false);

  FixedSubspaceSplit out;
  out.frozen = pack_columns(frozen, n);
  out.moving = pack_columns(moving, n);
  ensure(out.frozen.cols() + out.moving.cols() == n,
         "subspace split lost dimensions");
  return out;
}

double eigenvalue_bound_check(const MatrixGroupElement& a,
                              const MatrixGroupElement& b) {
  require_same_shape(a, b);
  Eigen::MatrixXd ada = adjoint_rep(a);
  Eigen::MatrixXd adb = adjoint_rep(b);
  FixedSubspaceSplit split = split_moving_subspace(ada, adb);
  if (split.moving.cols() == 0) {
    return -std::numeric_limits<double>::infinity();
  }
  Eigen::MatrixXd op = moving_operator(ada, adb);
  Eigen::MatrixXd restricted =
      split.moving.transpose() * op * split.moving;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(restricted));
  return es.eigenvalues().maxCoeff();
}

double homotopy_nondegeneracy(const MatrixGroupElement& a,
                              const MatrixGroupElement& b, int grid_points) {
  require(grid_points >= 2, "need at least two grid points");
  require_same_shape(a, b);
  Eigen::MatrixXd ada = adjoint_rep(a);
  Eigen::MatrixXd adb = adjoint_rep(b);
  FixedSubspaceSplit split = split_moving_subspace(ada, adb);
  const Eigen::MatrixXd& p = split.moving;
  int m = static_cast<int>(p.cols());
  if (m == 0) return 1.0;

  TwoFormMatrix c = two_form_from_adjoints(ada, adb);
  Eigen::MatrixXd c11 = p.transpose() * c.c11 * p;
  Eigen::MatrixXd c12 = p.transpose() * c.c12 * p;
  Eigen::MatrixXd c21 = p.transpose() * c.c21 * p;
  Eigen::MatrixXd c22 = p.transpose() * c.c22 * p;
  Eigen::MatrixXd op = p.transpose() * moving_operator(ada, adb) * p;
  Eigen::MatrixXd idm = Eigen::MatrixXd::Identity(m, m);

  double min_abs = std::numeric_limits<double>::infinity();
  for (int gi = 0; gi < grid_points; ++gi) {
    double s = static_cast<double>(gi) / (grid_points - 1);
    Eigen::MatrixXd path(2 * m, 2 * m);
    path.topLeftCorner(m, m) = s * c11;
    path.topRightCorner(m, m) = (1.0 - s) * idm + s * c12;
    path.bottomLeftCorner(m, m) = -(1.0 - s) * idm + s * c21;
    path.bottomRightCorner(m, m) = s * c22;
    double direct = path.determinant();
    double closed = ((s * s - s) * (2.0 * idm + op) + idm).determinant();
    ensure(std::abs(direct - closed) <= 1e-8 * std::max(1.0, std::abs(closed)),
           "path determinant disagrees with its closed form");
    min_abs = std::min(min_abs, std::abs(direct));
  }
  return min_abs;
}

// ---------------------------------------------------------------------------
// Principal phase

std::complex<double> phase_factor(const Eigen::MatrixXcd& a) {
  int n = static_cast<int>(a.rows());
  require(n >= 1 && a.cols() == n, "action matrix must be square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a);
  require(es.info() == Eigen::Success, "eigenvalue computation failed");
  double half_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    Cplx lam = es.eigenvalues()(i);
    require(std::abs(std::abs(lam) - 1.0) <= 1e-6,
            "action spectrum must lie on the unit circle");
    double arg = std::arg(lam);
    if (arg < 0.0) arg += 2.0 * kPi;
    double below = 2.0 * kPi - arg;  // distance to the cut from below
    if (below <= 1e-10) {
      arg = 0.0;
    } else if (below < 1e-6) {
      throw BranchCutError(
          "eigenvalue sits at the square-root branch cut; perturb the sample");
    }
    half_sum += 0.5 * arg;
  }
  return std::polar(1.0, half_sum);
}

Eigen::MatrixXd standard_complex_structure(int n) {
  require(n >= 1, "size must be positive");
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  j.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return j;
}

Eigen::MatrixXd compatible_structure_from_form(const Eigen::MatrixXd& c) {
  int n = static_cast<int>(c.rows());
  require(n >= 2 && c.cols() == n && n % 2 == 0,
          "form matrix must be square of even size");
  require((c + c.transpose()).norm() <= 1e-10 * std::max(1.0, c.norm()),
          "form matrix must be antisymmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c);
  require(es.eigenvalues().minCoeff() > 1e-12,
          "form matrix must be nondegenerate");
  Eigen::MatrixXd inv_sqrt =
      es.eigenvectors() *
      es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
      es.eigenvectors().transpose();
  Eigen::MatrixXd j = -c * inv_sqrt;
  ensure((j * j + Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-8 * n,
         "polar factor is not a complex structure");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pos(sym(c * j));
  ensure(pos.eigenvalues().minCoeff() > 0.0,
         "complex structure is not positively compatible");
  return j;
}

Eigen::MatrixXcd unitarize_in_structure(const Eigen::MatrixXd& op,
                                        const Eigen::MatrixXd& j) {
  int n2 = static_cast<int>(j.rows());
  require(n2 >= 2 && n2 % 2 == 0 && j.cols() == n2 && op.rows() == n2 &&
              op.cols() == n2,
          "operator and structure must be square of equal even size");
  require((j * j + Eigen::MatrixXd::Identity(n2, n2)).norm() <= 1e-8 * n2,
          "structure must square to minus one");
  double scale = std::max(1.0, op.norm());
  require((op * j - j * op).norm() <= 1e-8 * scale,
          "operator must commute with the structure");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(j.cast<Cplx>());
  require(es.info() == Eigen::Success, "structure eigenvectors failed");
  int n = n2 / 2;
  Eigen::MatrixXcd u(n2, n);
  int found = 0;
  for (int i = 0; i < n2 && found < n; ++i) {
    if (es.eigenvalues()(i).imag() > 0.5) {
      u.col(found++) = es.eigenvectors().col(i);
    }
  }
  ensure(found == n, "structure does not split into conjugate eigenspaces");
  Eigen::MatrixXcd gram = u.adjoint() * u;
  Eigen::MatrixXcd coeff = u.adjoint() * op.cast<Cplx>() * u;
  Eigen::MatrixXcd m = gram.llt().solve(coeff);
  ensure((op.cast<Cplx>() * u - u * m).norm() <= 1e-7 * scale,
         "operator does not preserve the holomorphic subspace");
  return m;
}

// ---------------------------------------------------------------------------
// Clifford algebra

namespace {

void prune(CliffordElement& x) {
  for (auto it = x.terms.begin(); it != x.terms.end();) {
    if (std::abs(it->second) < 1e-13) {
      it = x.terms.erase(it);
    } else {
      ++it;
    }
  }
}

// Multiplies basis blades given as strictly ascending index lists; returns
// the merged list and accumulates the sign from anticommutation.
std::vector<int> merge_blades(const std::vector<int>& a,
                              const std::vector<int>& b, int& sign) {
  std::vector<int> out = a;
  for (int idx : b) {
    // Move e_idx leftwards past everything in `out` greater than idx.
    int greater = 0;
    auto pos = std::lower_bound(out.begin(), out.end(), idx);
    greater = static_cast<int>(out.end() - pos);
    if (pos != out.end() && *pos == idx) {
      // e_idx e_idx = +1 after hopping past the tail.
      if ((greater - 1) % 2 != 0) sign = -sign;
      out.erase(pos);
    } else {
      if (greater % 2 != 0) sign = -sign;
      out.insert(pos, idx);
    }
  }
  return out;
}

}  // namespace

CliffordElement clifford_scalar(int dim, double value) {
  require(dim >= 1, "dimension must be positive");
  CliffordElement x;
  x.dim = dim;
  if (value != 0.0) x.terms[{}] = value;
  return x;
}

CliffordElement clifford_blade(int dim, const std::vector<int>& indices,
                               double coeff) {
  require(dim >= 1, "dimension must be positive");
  for (size_t i = 0; i < indices.size(); ++i) {
    require(indices[i] >= 1 && indices[i] <= dim, "blade index out of range");
    require(i == 0 || indices[i] > indices[i - 1],
            "blade indices must be strictly ascending");
  }
  CliffordElement x;
  x.dim = dim;
  if (coeff != 0.0) x.terms[indices] = coeff;
  return x;
}

CliffordElement clifford_vector(int dim, const Eigen::VectorXd& v) {
  require(static_cast<int>(v.size()) == dim,
          "vector length must match the dimension");
  CliffordElement x;
  x.dim = dim;
  for (int i = 0; i < dim; ++i) {
    if (v(i) != 0.0) x.terms[{i + 1}] = v(i);
  }
  return x;
}

CliffordElement clifford_add(const CliffordElement& a,
                             const CliffordElement& b) {
  require(a.dim == b.dim, "dimensions must match");
  CliffordElement out = a;
  for (const auto& [key, val] : b.terms) out.terms[key] += val;
  prune(out);
  return out;
}

CliffordElement clifford_scale(const CliffordElement& a, double factor) {
  CliffordElement out = a;
  for (auto& [key, val] : out.terms) val *= factor;
  prune(out);
  return out;
}

CliffordElement clifford_mul(const CliffordElement& a,
                             const CliffordElement& b) {
  require(a.dim == b.dim, "dimensions must match");
  CliffordElement out;
  out.dim = a.dim;
  for (const auto& [ka, va] : a.terms) {
    for (const auto& [kb, vb] : b.terms) {
      int sign = 1;
      std::vector<int> merged = merge_blades(ka, kb, sign);
      out.terms[merged] += sign * va * vb;
    }
  }
  prune(out);
  return out;
}

double clifford_distance(const CliffordElement& a, const CliffordElement& b) {
  require(a.dim == b.dim, "dimensions must match");
  double worst = 0.0;
  for (const auto& [key, val] : a.terms) {
    auto it = b.terms.find(key);
    double other = it == b.terms.end() ? 0.0 : it->second;
    worst = std::max(worst, std::abs(val - other));
  }
  for (const auto& [key, val] : b.terms) {
    if (a.terms.find(key) == a.terms.end()) {
      worst = std::max(worst, std::abs(val));
    }
  }
  return worst;
}

namespace {

CliffordElement clifford_reverse(const CliffordElement& a) {
  CliffordElement out;
  out.dim = a.dim;
  for (const auto& [key, val] : a.terms) {
    size_t k = key.size();
    double sign = (k * (k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
    out.terms[key] = sign * val;
  }
  return out;
}

CliffordElement clifford_inverse_versor(const CliffordElement& a) {
  CliffordElement rev = clifford_reverse(a);
  CliffordElement prod = clifford_mul(a, rev);
  auto it = prod.terms.find({});
  double scalar = it == prod.terms.end() ? 0.0 : it->second;
  ensure(std::abs(scalar) > 1e-10, "element is not an invertible versor");
  double worst = 0.0;
  for (const auto& [key, val] : prod.terms) {
    if (!key.empty()) worst = std::max(worst, std::abs(val));
  }
  ensure(worst <= 1e-8 * std::abs(scalar), "element is not a versor");
  return clifford_scale(rev, 1.0 / scalar);
}

}  // namespace

CliffordElement clifford_lift(const Eigen::MatrixXd& g) {
  int n = static_cast<int>(g.rows());
  require(n >= 2 && g.cols() == n, "matrix must be square");
  require((g.transpose() * g - Eigen::MatrixXd::Identity(n, n)).norm() <=
              1e-10 * n,
          "matrix must be orthogonal");
  require(std::abs(g.determinant() - 1.0) <= 1e-10 * n,
          "matrix must have determinant one");
  Eigen::MatrixXd work = g;
  CliffordElement lift = clifford_scalar(n, 1.0);
  int reflections = 0;
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd d = work.col(i);
    d(i) -= 1.0;
    double len = d.norm();
    if (len <= 1e-12) continue;
    Eigen::VectorXd v = d / len;
    lift = clifford_mul(lift, clifford_vector(n, v));
    work -= 2.0 * v * (v.transpose() * work);
    ++reflections;
  }
  ensure((work - Eigen::MatrixXd::Identity(n, n)).norm() <= 1e-9 * n,
         "reflection factorization did not close");
  ensure(reflections % 2 == 0, "rotation factored into an odd reflection count");
  return lift;
}

Eigen::MatrixXd clifford_conjugation_matrix(const CliffordElement& lift,
                                            int dim) {
  require(dim == lift.dim, "dimension mismatch");
  CliffordElement inv = clifford_inverse_versor(lift);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    CliffordElement basis = clifford_blade(dim, {k + 1}, 1.0);
    CliffordElement moved = clifford_mul(clifford_mul(lift, basis), inv);
    for (const auto& [key, val] : moved.terms) {
      ensure(key.size() == 1 || std::abs(val) <= 1e-9,
             "conjugated vector left the vector grade");
      if (key.size() == 1) out(key[0] - 1, k) = val;
    }
  }
  return out;
}

Eigen::MatrixXd so_lift_negate_ends(int n) {
  require(n >= 2, "need at least two coordinate planes");
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  g(1, 1) = -1.0;
  g(2 * n - 1, 2 * n - 1) = -1.0;
  return g;
}

Eigen::MatrixXd so_lift_reverse_negate(int n) {
  require(n >= 2, "need at least two coordinate planes");
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 1; j <= n - 1; ++j) {
    g(2 * j - 2, 2 * n - 2 * j) = 1.0;
    g(2 * j - 1, 2 * n - 2 * j + 1) = -1.0;
  }
  g(2 * n - 2, 0) = -1.0;
  g(2 * n - 1, 1) = 1.0;
  return g;
}

Eigen::MatrixXd torus_weyl_negate_ends(int n) {
  require(n >= 2, "need rank at least two");
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n);
  w(0, 0) = -1.0;
  w(n - 1, n - 1) = -1.0;
  return w;
}

Eigen::MatrixXd torus_weyl_reverse_negate(int n) {
  require(n >= 2, "need rank at least two");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) w(i, n - 1 - i) = -1.0;
  return w;
}

bool clifford_lift_commutes(int n) {
  require(n % 2 == 0, "the construction needs an even number of planes");
  require(n >= 2 && n <= 8, "plane count out of the supported range");
  Eigen::MatrixXd g1 = so_lift_negate_ends(n);
  Eigen::MatrixXd g2 = so_lift_reverse_negate(n);
  ensure((g1 * g2 - g2 * g1).norm() <= 1e-12, "matrix lifts fail to commute");
  CliffordElement l1 = clifford_lift(g1);
  CliffordElement l2 = clifford_lift(g2);
  ensure((clifford_conjugation_matrix(l1, 2 * n) - g1).norm() <= 1e-9,
         "first lift does not reproduce its rotation");
  ensure((clifford_conjugation_matrix(l2, 2 * n) - g2).norm() <= 1e-9,
         "second lift does not reproduce its rotation");
  for (double s1 : {1.0, -1.0}) {
    for (double s2 : {1.0, -1.0}) {
      CliffordElement a = clifford_scale(l1, s1);
      CliffordElement b = clifford_scale(l2, s2);
      if (clifford_distance(clifford_mul(a, b), clifford_mul(b, a)) > 1e-10) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pfaffian and volume consistency

double pfaffian(const Eigen::MatrixXd& skew) {
  int n = static_cast<int>(skew.rows());
  require(n >= 1 && skew.cols() == n, "matrix must be square");
  require((skew + skew.transpose()).norm() <= 1e-10 * std::max(1.0, skew.norm()),
          "matrix must be skew-symmetric");
  if (n % 2 != 0) return 0.0;
  Eigen::MatrixXd a = skew;
  double pf = 1.0;
  for (int k = 0; k < n; k += 2) {
    int pivot = k + 1;
    for (int j = k + 2; j < n; ++j) {
      if (std::abs(a(k, j)) > std::abs(a(k, pivot))) pivot = j;
    }
    if (std::abs(a(k, pivot)) < 1e-300) return 0.0;
    if (pivot != k + 1) {
      a.row(pivot).swap(a.row(k + 1));
      a.col(pivot).swap(a.col(k + 1));
      pf = -pf;
    }
    pf *= a(k, k + 1);
    for (int j = k + 2; j < n; ++j) {
      double f = a(k, j) / a(k, k + 1);
      a.row(j) -= f * a.row(k + 1);
      a.col(j) -= f * a.col(k + 1);
    }
  }
  return pf;
}

double fusion_volume_check(const Eigen::MatrixXd& w1,
                           const Eigen::MatrixXd& w2, int samples) {
  require(samples >= 1000, "need at least a thousand samples");
  Eigen::MatrixXd c = weyl_two_form(w1, w2).full();
  int n2 = static_cast<int>(c.rows());
  // The restricted form is constant over the fixed torus; each sample
  // re-evaluates the Pfaffian in an independently rotated frame, which
  // preserves it, so any drift is numerical.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    Eigen::MatrixXd q = random_rotation(n2, rng);
    double pf = pfaffian(q.transpose() * c * q);
    worst = std::max(worst, std::abs(std::abs(pf) - 1.0));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Fixed-point separation

double conjugation_separation(const MatrixGroupElement& t1,
                              const MatrixGroupElement& t2, long long samples,
                              std::mt19937_64& rng) {
  require_same_shape(t1, t2);
  require(samples >= 1, "need at least one sample");
  int n = checked_size(t1);
  double best = std::numeric_limits<double>::infinity();
  for (long long s = 0; s < samples; ++s) {
    MatrixGroupElement g = random_element(t1.group, n, rng);
    Eigen::MatrixXcd moved = g.matrix * t2.matrix * g.matrix.adjoint();
    best = std::min(best, (t1.matrix - moved).norm());
  }
  return best;
}

std::vector<double> conjugacy_class_coordinates(const MatrixGroupElement& t) {
  int n = checked_size(t);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(t.matrix);
  require(es.info() == Eigen::Success, "eigenvalue computation failed");
  std::vector<double> args;
  args.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    double arg = std::arg(es.eigenvalues()(i));
    if (arg < 0.0) arg += 2.0 * kPi;
    args.push_back(arg);
  }
  std::sort(args.begin(), args.end(), std::greater<double>());
  return args;
}

// ---------------------------------------------------------------------------
// Aggregated suite

std::vector<CheckRecord> run_numeric_suite(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::vector<CheckRecord> out;
  auto push = [&out](std::string name, double residual, double bound,
                     long long samples) {
    CheckRecord rec;
    rec.name = std::move(name);
    rec.passed = residual <= bound;
    rec.residual = residual;
    rec.bound = bound;
    rec.samples = samples;
    out.push_back(std::move(rec));
  };

  {  // Adjoint matrices compose and stay orthogonal.
    double worst = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
      MatrixGroup grp = trial % 2 == 0 ? MatrixGroup::special_unitary
                                       : MatrixGroup::special_orthogonal;
      int n = grp == MatrixGroup::special_unitary ? 3 : 5;
      MatrixGroupElement g = random_element(grp, n, rng);
      MatrixGroupElement h = random_element(grp, n, rng);
      Eigen::MatrixXd adg = adjoint_rep(g);
      Eigen::MatrixXd adh = adjoint_rep(h);
      worst = std::max(worst,
                       (adjoint_rep(group_product(g, h)) - adg * adh).norm());
      int d = static_cast<int>(adg.rows());
      worst = std::max(worst, (adg.transpose() * adg -
                               Eigen::MatrixXd::Identity(d, d)).norm());
    }
    push("adjoint-composition", worst, 1e-10, 40);
  }

  {  // Assembled two-form stays antisymmetric at random holonomy pairs.
    double worst = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
      MatrixGroupElement a = random_element(MatrixGroup::special_unitary, 3, rng);
      MatrixGroupElement b = random_element(MatrixGroup::special_unitary, 3, rng);
      Eigen::MatrixXd f = two_form_at(a, b).full();
      worst = std::max(worst, (f + f.transpose()).norm());
    }
    push("two-form-antisymmetry", worst, 1e-10, 60);
  }

  {  // Torus-restricted determinant identity, plus full det = 1.
    std::vector<std::pair<Eigen::MatrixXd, Eigen::MatrixXd>> pairs;
    Eigen::MatrixXd w1(1, 1), w2(1, 1);
    w1(0, 0) = -1.0;
    w2(0, 0) = 1.0;
    pairs.emplace_back(w1, w2);
    pairs.emplace_back(Eigen::MatrixXd::Identity(3, 3),
                       Eigen::MatrixXd::Identity(3, 3));
    pairs.emplace_back(torus_weyl_negate_ends(4), torus_weyl_reverse_negate(4));
    for (int trial = 0; trial < 50; ++trial) {
      Eigen::MatrixXd u = Eigen::MatrixXd::Zero(4, 4);
      Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
      for (int blk = 0; blk < 2; ++blk) {
        double p = angle(rng), q = angle(rng);
        u.block(2 * blk, 2 * blk, 2, 2) << std::cos(p), -std::sin(p),
            std::sin(p), std::cos(p);
        v.block(2 * blk, 2 * blk, 2, 2) << std::cos(q), -std::sin(q),
            std::sin(q), std::cos(q);
      }
      pairs.emplace_back(u, v);
    }
    double worst_id = 0.0, worst_det = 0.0;
    for (const auto& [a, b] : pairs) {
      worst_id = std::max(worst_id, torus_det_check(a, b));
      worst_det = std::max(
          worst_det, std::abs(weyl_two_form(a, b).full().determinant() - 1.0));
    }
    push("torus-determinant-identity", worst_id, 1e-10,
         static_cast<long long>(pairs.size()));
    push("torus-restriction-unit-determinant", worst_det, 1e-8,
         static_cast<long long>(pairs.size()));
  }

  {  // Spectral values match the per-plane scalar form on random rank-two
     // unitary torus pairs sampled from the full angle range.
    double worst = 0.0;
    long long done = 0, skipped = 0;
    while (done < 2000) {
      double x1 = angle(rng), y1 = angle(rng);
      double x2 = angle(rng), y2 = angle(rng);
      MatrixGroupElement a = su_torus_element({x1, y1});
      MatrixGroupElement b = su_torus_element({x2, y2});
      try {
        double m = eigenvalue_bound_check(a, b);
        double expected = std::max(
            {-2.0, rotation_plane_bound(x1 - y1, x2 - y2),
             rotation_plane_bound(2.0 * x1 + y1, 2.0 * x2 + y2),
             rotation_plane_bound(x1 + 2.0 * y1, x2 + 2.0 * y2)});
        worst = std::max(worst, std::abs(m - expected));
        ++done;
      } catch (const SplitError&) {
        ++skipped;  // clustering ambiguity: resample
        if (skipped > 2000) break;
      }
    }
    push("moving-bound-scalar-consistency", worst, 1e-8, done);
  }

  {  // Strict spectral bound, with margin, for angle pairs inside the
     // principal triangle shrunk by delta; the analytic cap there is
     // 2 - 4 sin^3(delta/2).
    double delta = 0.3;
    double cap = 2.0 - 4.0 * std::pow(std::sin(delta / 2.0), 3.0);
    std::uniform_real_distribution<double> tri(-(kPi - delta), kPi - delta);
    double worst = -std::numeric_limits<double>::infinity();
    long long done = 0;
    while (done < 10000) {
      double pa = tri(rng), pb = tri(rng);
      if (std::abs(pa - pb) > kPi - delta) continue;
      MatrixGroupElement a = su_torus_element({pa / 2.0});
      MatrixGroupElement b = su_torus_element({pb / 2.0});
      try {
        worst = std::max(worst, eigenvalue_bound_check(a, b));
        ++done;
      } catch (const SplitError&) {
      }
    }
    push("moving-subspace-spectral-bound", worst, cap + 1e-9, done);
  }

  {  // Extremal commuting pair: adjoint angles (4pi/3, 2pi/3) attain the
     // global maximum 5/2 of the scalar form, outside the strict-bound
     // regime, yet the fixed-point phase is unaffected.
    MatrixGroupElement a = su_torus_element({2.0 * kPi / 3.0});
    MatrixGroupElement b = su_torus_element({kPi / 3.0});
    push("extremal-pair-spectral-value",
         std::abs(eigenvalue_bound_check(a, b) - 2.5), 1e-9, 1);
    MatrixGroupElement t = su_torus_element({0.37});
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(6, 6);
    big.topLeftCorner(3, 3) = adjoint_rep(t);
    big.bottomRightCorner(3, 3) = adjoint_rep(t);
    Eigen::MatrixXd j = compatible_structure_from_form(two_form_at(a, b).full());
    Cplx p = phase_factor(unitarize_in_structure(big, j));
    push("extremal-pair-phase", std::abs(p - Cplx(-1.0, 0.0)), 1e-9, 1);
  }

  {  // Straightening path: closed form holds (violations throw inside) and
     // the path stays nondegenerate inside the shrunk principal triangle,
     // where the plane factor is at least sin^3(delta/2) at s = 1/2.
    double delta = 0.3;
    double floor = 0.9 * std::pow(std::sin(delta / 2.0), 6.0);
    std::uniform_real_distribution<double> tri(-(kPi - delta), kPi - delta);
    double min_det = std::numeric_limits<double>::infinity();
    long long done = 0;
    while (done < 50) {
      double pa = tri(rng), pb = tri(rng);
      if (std::abs(pa - pb) > kPi - delta) continue;
      MatrixGroupElement a = su_torus_element({pa / 2.0});
      MatrixGroupElement b = su_torus_element({pb / 2.0});
      try {
        min_det = std::min(min_det, homotopy_nondegeneracy(a, b, 101));
        ++done;
      } catch (const SplitError&) {
      }
    }
    push("straightening-path-nondegeneracy", std::max(0.0, floor - min_det),
         0.0, done);
  }

  {  // Phase of the doubled tangent model matches positive-root parity.
    double worst = 0.0;
    MatrixGroupElement t2 = su_torus_element({0.37});
    Eigen::MatrixXd big2 = Eigen::MatrixXd::Zero(6, 6);
    big2.topLeftCorner(3, 3) = adjoint_rep(t2);
    big2.bottomRightCorner(3, 3) = adjoint_rep(t2);
    Cplx p2 = phase_factor(unitarize_in_structure(big2, standard_complex_structure(3)));
    worst = std::max(worst, std::abs(p2 - Cplx(-1.0, 0.0)));
    for (int trial = 0; trial < 5; ++trial) {
      MatrixGroupElement t3 =
          su_torus_element({0.2 + 0.3 * trial, 1.3 + 0.11 * trial});
      Cplx p3 = phase_factor(adjoint_rep(t3).cast<Cplx>());
      worst = std::max(worst, std::abs(p3 - Cplx(-1.0, 0.0)));
    }
    MatrixGroupElement t5 = so_torus_element(5, {0.4, 0.9});
    Cplx p5 = phase_factor(adjoint_rep(t5).cast<Cplx>());
    worst = std::max(worst, std::abs(p5 - Cplx(1.0, 0.0)));
    push("fixed-point-phase-parity", worst, 1e-9, 7);
  }

  {  // Phase is independent of the compatible complex structure.
    MatrixGroupElement t = su_torus_element({0.37});
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(6, 6);
    big.topLeftCorner(3, 3) = adjoint_rep(t);
    big.bottomRightCorner(3, 3) = adjoint_rep(t);
    Eigen::MatrixXd j = standard_complex_structure(3);
    Cplx base = phase_factor(unitarize_in_structure(big, j));
    double worst = 0.0;
    for (double c : {1.3, 1.7, 0.45, 2.6, 0.8}) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Identity(6, 6);
      p.topLeftCorner(3, 3) *= c;
      p.bottomRightCorner(3, 3) /= c;
      Eigen::MatrixXd j2 = p * j * p.inverse();
      worst = std::max(
          worst, std::abs(phase_factor(unitarize_in_structure(big, j2)) - base));
    }
    push("phase-structure-independence", worst, 1e-9, 5);
  }

  {  // Quotient-model phase at a torus-normalizer fixed point.
    Eigen::MatrixXcd wm(2, 2);
    wm << Cplx(0.0, 0.0), Cplx(1.0, 0.0), Cplx(-1.0, 0.0), Cplx(0.0, 0.0);
    MatrixGroupElement a = make_element(MatrixGroup::special_unitary, wm);
    MatrixGroupElement b = identity_element(MatrixGroup::special_unitary, 2);
    MatrixGroupElement t = su_torus_element({kPi / 2.0});
    Eigen::MatrixXd c = two_form_at(a, b).full();
    Eigen::MatrixXd big = Eigen::MatrixXd::Zero(6, 6);
    big.topLeftCorner(3, 3) = adjoint_rep(t);
    big.bottomRightCorner(3, 3) = adjoint_rep(t);
    double invariance = (big.transpose() * c * big - c).norm();
    Eigen::MatrixXd j = compatible_structure_from_form(c);
    Cplx p = phase_factor(unitarize_in_structure(big, j));
    double worst = std::max(invariance, std::abs(p - Cplx(-1.0, 0.0)));
    push("quotient-model-phase", worst, 1e-9, 1);
  }

  {  // Clifford lifts commute for all sign choices, and reproduce the
     // rotations they lift.
    double worst = 0.0;
    long long cases = 0;
    for (int n : {4, 6, 8}) {
      Eigen::MatrixXd g1 = so_lift_negate_ends(n);
      Eigen::MatrixXd g2 = so_lift_reverse_negate(n);
      CliffordElement l1 = clifford_lift(g1);
      CliffordElement l2 = clifford_lift(g2);
      worst = std::max(worst,
                       (clifford_conjugation_matrix(l1, 2 * n) - g1).norm());
      worst = std::max(worst,
                       (clifford_conjugation_matrix(l2, 2 * n) - g2).norm());
      worst = std::max(worst, (g1 * g2 - g2 * g1).norm());
      for (double s1 : {1.0, -1.0}) {
        for (double s2 : {1.0, -1.0}) {
          CliffordElement x = clifford_scale(l1, s1);
          CliffordElement y = clifford_scale(l2, s2);
          worst = std::max(worst, clifford_distance(clifford_mul(x, y),
                                                    clifford_mul(y, x)));
          ++cases;
        }
      }
    }
    push("commuting-spin-lifts", worst, 1e-10, cases);
  }

  {  // Unit Pfaffian of the restricted form.
    double worst = 0.0;
    Eigen::MatrixXd w1(1, 1), w2(1, 1);
    w1(0, 0) = -1.0;
    w2(0, 0) = 1.0;
    worst = std::max(worst, fusion_volume_check(w1, w2, 1000));
    worst = std::max(worst,
                     fusion_volume_check(Eigen::MatrixXd::Identity(3, 3),
                                         Eigen::MatrixXd::Identity(3, 3), 1000));
    worst = std::max(worst, fusion_volume_check(torus_weyl_negate_ends(4),
                                                torus_weyl_reverse_negate(4),
                                                1000));
    push("fused-volume-unit-pfaffian", worst, 1e-10, 3000);
  }

  {  // Distinct alcove points are never conjugate: sampled falsification.
    MatrixGroupElement t1 = su_torus_element({0.4});
    MatrixGroupElement t2 = su_torus_element({0.9});
    double sep = conjugation_separation(t1, t2, 100000, rng);
    double floor = std::sqrt(2.0) * 2.0 * std::sin(0.25);
    push("fixed-point-separation", std::max(0.0, floor - sep - 1e-9), 0.0,
         100000);
  }

  {  // Class coordinates: conjugation-invariant and alcove-separating.
    MatrixGroupElement t = su_torus_element({0.31, 0.83});
    std::vector<double> base = conjugacy_class_coordinates(t);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      MatrixGroupElement g = random_element(MatrixGroup::special_unitary, 3, rng);
      MatrixGroupElement conj =
          group_product(group_product(g, t), group_inverse(g));
      std::vector<double> moved = conjugacy_class_coordinates(conj);
      for (size_t i = 0; i < base.size(); ++i) {
        worst = std::max(worst, std::abs(moved[i] - base[i]));
      }
    }
    push("class-coordinate-invariance", worst, 1e-10, 200);

    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> coords;
    for (int i = 1; i <= 8; ++i) {
      coords.push_back(
          conjugacy_class_coordinates(su_torus_element({0.35 * i / 3.0})));
    }
    for (size_t i = 0; i < coords.size(); ++i) {
      for (size_t j = i + 1; j < coords.size(); ++j) {
        double gap = 0.0;
        for (size_t k = 0; k < coords[i].size(); ++k) {
          gap = std::max(gap, std::abs(coords[i][k] - coords[j][k]));
        }
        min_gap = std::min(min_gap, gap);
      }
    }
    push("alcove-coordinate-separation", std::max(0.0, 1e-6 - min_gap), 0.0,
         static_cast<long long>(coords.size()));
  }

  return out;
}

}  // namespace vt
