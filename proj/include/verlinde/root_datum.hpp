#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "verlinde/lie_type.hpp"
#include "verlinde/linalg.hpp"
#include "verlinde/rat.hpp"

namespace vt {

// Square integer matrix acting on weight coordinates, row major.
struct IMat {
  int n = 0;
  std::vector<long long> a;

  IMat() = default;
  explicit IMat(int size) : n(size), a(static_cast<size_t>(size) * size) {}
  long long& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  long long operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }
  static IMat identity(int n);
  bool operator==(const IMat&) const = default;
};

IMat imat_mul(const IMat& x, const IMat& y);
IVec imat_vec(const IMat& m, const IVec& v);
QVec imat_vec(const IMat& m, const QVec& v);

// Static description of a simple compact Lie group, normalized so long roots
// have squared length 2. Points of the Cartan subalgebra, weights and coweights
// all live in one rational chart: coordinates against the fundamental weights
// (coordinate i of x is the pairing of x with the i-th simple coroot). The
// `*_w` members and all dynamic operations use that chart; the ambient
// Euclidean model (epsilon coordinates) is kept for construction and display.
struct RootDatum {
  LieType type;
  int rank = 0;
  int ambient_dim = 0;
  Rat metric_scale;  // inner(x, y) = metric_scale * dot(x, y) on ambient vectors

  std::vector<IVec> cartan;  // cartan[i][j] = <alpha_j, alpha_i^vee>
  std::vector<QVec> simple_roots;         // ambient
  std::vector<QVec> simple_coroots;       // ambient
  std::vector<QVec> fundamental_weights;  // ambient
  QVec simple_norm2;                      // <alpha_i, alpha_i>

  std::vector<QVec> positive_roots;   // ambient
  std::vector<IVec> positive_roots_r; // coordinates in the simple-root basis
  std::vector<IVec> positive_roots_w; // weight coordinates
  // pairing_form[a] has <alpha, xi> = dot(pairing_form[a], xi_w) for the a-th positive root
  std::vector<QVec> positive_root_pairing;
  std::vector<char> positive_root_long;

  QVec highest_root;     // ambient
  IVec highest_root_w;   // weight coordinates
  IVec marks;            // highest root in the simple-root basis
  IVec comarks;          // levels of the fundamental weights; level(x) = sum comarks[i]*x_i

  long long dual_coxeter = 0;
  Int weyl_order;
  long long center_order = 0;
  long long long_index = 0;

  QMat gram_weights;        // <omega_i, omega_j>
  QMat cartan_inv;          // rational inverse of the Cartan matrix
  QMat ambient_from_weight; // columns are the fundamental weights
  QMat weight_from_ambient; // rows pair with the simple coroots
  QMat covee_w;             // columns: weight coordinates of the simple coroots
  QMat covee_w_inv;

  // Representatives of the center: coweights whose exponentials exhaust Z(G).
  // Entry 0 is the origin; the others are the minuscule alcove vertices.
  std::vector<QVec> center_coweight_reps;    // ambient
  std::vector<QVec> center_coweight_reps_w;  // weight coordinates
  std::vector<std::vector<int>> center_mult; // index group law
  std::vector<int> center_inv;
  IVec center_elt_order;

  Rat inner_w(const QVec& x_w, const QVec& y_w) const;  // via gram_weights
};

struct WeylElement {
  std::vector<int> word;  // simple reflection indices, reduced
  IMat wmat;              // action on weight coordinates
  QMat matrix;            // action on the ambient space (orthogonal)
  int sign = 1;           // det
};

struct AffineReduction {
  QVec xi;        // representative in the closed fundamental alcove (weight coords)
  WeylElement w;  // xi_input = w(xi) + tau
  QVec tau;       // coroot-lattice translation (weight coords)
};

struct WeylGroupTooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

RootDatum build_root_datum(LieType t);

// Basic inner product of ambient vectors.
Rat inner(const RootDatum& d, const QVec& x, const QVec& y);

QVec to_weight_coords(const RootDatum& d, const QVec& ambient);
QVec to_ambient(const RootDatum& d, const QVec& weight_coords);

bool is_dominant(const IVec& w);
long long weight_level(const RootDatum& d, const IVec& w);
Rat weight_level_rat(const RootDatum& d, const QVec& xi_w);

// All dominant weights of level <= k, in ascending lexicographic coordinate order.
std::vector<IVec> level_weights(const RootDatum& d, long long k);

// Writes xi as w(xi_red) + tau with xi_red in the closed fundamental alcove and
// tau in the coroot lattice. When xi_red lies on walls the choice of w is not
// unique; the representative with the shortest reduced word is returned.
AffineReduction affine_reduce(const RootDatum& d, const QVec& xi_w);

QVec apply_weyl(const RootDatum& d, const WeylElement& w, const QVec& xi_w);

// Rational coordinates of a chart vector in the simple-coroot basis.
QVec coroot_coords(const RootDatum& d, const QVec& xi_w);
bool in_coroot_lattice(const RootDatum& d, const QVec& xi_w);

// Enumerates W (breadth-first over reduced words; deterministic order).
// Throws WeylGroupTooLarge when |W| exceeds the cap.
void for_each_weyl_element(const RootDatum& d,
                           const std::function<void(const WeylElement&)>& fn,
                           long long cap = 10'000'000);

// Orbit of a strictly dominant weight, visited with the sign of the Weyl
// element mapping the start point to the visited point.
void weyl_orbit_signed(const RootDatum& d, const IVec& strictly_dominant,
                       const std::function<void(const IVec&, int)>& fn);

// Orbit of an arbitrary dominant weight (each point exactly once).
void weyl_orbit(const RootDatum& d, const IVec& dominant,
                const std::function<void(const IVec&)>& fn);

// Dominant representative of the W-orbit of w.
IVec dominantize(const RootDatum& d, IVec w);

// Highest weight of the dual representation: the dominant form of -mu.
IVec star_weight(const RootDatum& d, const IVec& mu);

// Reduced word of a weight-coordinate Weyl matrix (empty for the identity).
std::vector<int> reduced_word(const RootDatum& d, const IMat& m);

WeylElement weyl_from_wmat(const RootDatum& d, const IMat& m);

}  // namespace vt
