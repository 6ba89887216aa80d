#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

// Floating-point verification laboratory for the fixed-point linear algebra
// behind the index computations: the explicit two-form on holonomy pairs,
// its torus-restriction determinant, the straightening-path nondegeneracy
// bound, the principal phase of the torus action on tangent models, and the
// commuting Clifford lifts for the even orthogonal groups.  Everything here
// is double precision; the exact results live in the cyclotomic engine, and
// this module exists to check the analytic identities they rest on.

namespace vt {

// ---------------------------------------------------------------------------
// Matrix group elements

enum class MatrixGroup { special_unitary, special_orthogonal };

struct MatrixGroupElement {
  MatrixGroup group;
  Eigen::MatrixXcd matrix;  // unitary (real orthogonal for the SO family)
};

// Thrown when a principal square root would sit on the branch cut; the
// remedy is to perturb the sample.
struct BranchCutError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when simultaneous eigenspace clustering cannot confidently split
// the frozen and moving subspaces.
struct SplitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Validates unitarity/orthogonality and unit determinant to 1e-12.
MatrixGroupElement make_element(MatrixGroup group, const Eigen::MatrixXcd& m);
MatrixGroupElement identity_element(MatrixGroup group, int n);

// diag(e^{i t_1}, ..., e^{i t_{n-1}}, e^{-i sum}) from n-1 angles.
MatrixGroupElement su_torus_element(const std::vector<double>& angles);
// Block rotations in the coordinate planes (1,2), (3,4), ...; a trailing 1
// when n is odd.  Expects floor(n/2) angles.
MatrixGroupElement so_torus_element(int n, const std::vector<double>& angles);

MatrixGroupElement group_product(const MatrixGroupElement& a,
                                 const MatrixGroupElement& b);
MatrixGroupElement group_inverse(const MatrixGroupElement& a);

// Haar-style random element (QR of a Ginibre sample, determinant fixed).
MatrixGroupElement random_element(MatrixGroup group, int n,
                                  std::mt19937_64& rng);
// Random Lie algebra element (anti-Hermitian traceless / real antisymmetric).
Eigen::MatrixXcd random_algebra_element(MatrixGroup group, int n,
                                        std::mt19937_64& rng);
MatrixGroupElement exponential_element(MatrixGroup group,
                                       const Eigen::MatrixXcd& algebra);

// Dimension of the Lie algebra carrying the adjoint action.
int algebra_dim(MatrixGroup group, int n);

// Matrix of Ad_g in a fixed orthonormal basis of the Lie algebra (negative
// trace form).  Orthogonal; Ad_{gh} = Ad_g Ad_h.
Eigen::MatrixXd adjoint_rep(const MatrixGroupElement& g);

// ---------------------------------------------------------------------------
// Two-form blocks

struct TwoFormMatrix {
  Eigen::MatrixXd c11, c12, c21, c22;
  Eigen::MatrixXd full() const;  // [[c11, c12], [c21, c22]]
};

// Blocks of the two-form at a holonomy pair:
//   C11 = (Ad_b - Ad_{b^-1})/2,
//   C12 = (-1 + Ad_b + Ad_{a^-1} + Ad_{b a^-1})/2,
//   C21 = ( 1 - Ad_a - Ad_{b^-1} - Ad_{a b^-1})/2,
//   C22 = (Ad_{a^-1} - Ad_a)/2.
// The assembled matrix is antisymmetric; violations beyond 1e-10 throw.
TwoFormMatrix two_form_at(const MatrixGroupElement& a,
                          const MatrixGroupElement& b);

// Same block formulas with the adjoint matrices replaced by a commuting pair
// of Weyl matrices acting on the torus coordinates.
TwoFormMatrix weyl_two_form(const Eigen::MatrixXd& w1,
                            const Eigen::MatrixXd& w2);

// || C11 C22 - C12 C21 - Id || for the torus-restricted form; the identity
// holds exactly for commuting Weyl pairs.  Non-commuting inputs throw.
double torus_det_check(const Eigen::MatrixXd& w1, const Eigen::MatrixXd& w2);

// ---------------------------------------------------------------------------
// Moving-subspace spectral bound and the straightening path

// Scalar value of C21 - C12 on a joint rotation two-plane with angles
// (psi_a, psi_b): 1 - cos(psi_a) - cos(psi_b) - cos(psi_a - psi_b).
double rotation_plane_bound(double psi_a, double psi_b);

// Columns spanning the frozen subspace (joint adjoint eigenvalues (-1,1),
// (-1,-1), (1,-1)) and its orthogonal complement, found by simultaneous
// eigenspace clustering with a 1e-8 threshold.  Ambiguous eigenvalues throw
// SplitError.
struct FixedSubspaceSplit {
  Eigen::MatrixXd frozen;
  Eigen::MatrixXd moving;
};
FixedSubspaceSplit split_moving_subspace(const Eigen::MatrixXd& ad_a,
                                         const Eigen::MatrixXd& ad_b);

// Maximum eigenvalue of C21 - C12 restricted to the moving subspace for a
// commuting pair (a, b).  On each joint rotation two-plane the value is
// rotation_plane_bound(psi_a, psi_b) = 2 - 4 cos(psi_a/2) cos(psi_b/2)
// cos((psi_a-psi_b)/2), so it stays below 2 exactly when every angle pair
// lies in the principal triangle |psi_a|, |psi_b|, |psi_a - psi_b| < pi;
// outside that regime it can reach 5/2 (attained at (4pi/3, 2pi/3)).
double eigenvalue_bound_check(const MatrixGroupElement& a,
                              const MatrixGroupElement& b);

// Minimum of |det| of the straightening path (1-s) C_0 + s C, restricted to
// the moving subspace, over an s-grid on [0,1].  Also verifies the closed
// determinant identity det((s^2-s)(2 + (C21 - C12)) + 1) against the direct
// block determinant to 1e-8 and throws logic_error on disagreement.  The
// identity holds for every commuting pair (in particular det(C) = 1 at
// s = 1), but the interior of the path degenerates whenever some rotation
// plane reaches the spectral value 2 or more.
double homotopy_nondegeneracy(const MatrixGroupElement& a,
                              const MatrixGroupElement& b, int grid_points);

// ---------------------------------------------------------------------------
// Principal phase

// det of the principal square root of a matrix with unit-modulus spectrum:
// eigenvalue arguments are folded into [0, 2pi) and halved.  Arguments just
// below the positive real axis (inside (-1e-6, -1e-10)) sit too close to the
// branch cut and raise BranchCutError; arguments within 1e-10 snap to zero.
std::complex<double> phase_factor(const Eigen::MatrixXcd& a);

// Standard complex structure (xi, eta) -> (-eta, xi) on g + g.
Eigen::MatrixXd standard_complex_structure(int n);

// Orthogonal complex structure compatible with an invertible antisymmetric
// form: J = -C (C^T C)^{-1/2}; the symmetrized product C J is positive.
Eigen::MatrixXd compatible_structure_from_form(const Eigen::MatrixXd& c);

// Matrix of a real operator commuting with the complex structure J on the
// +i eigenspace of J; the result has unit-modulus spectrum whenever the
// operator preserves a J-compatible metric.
Eigen::MatrixXcd unitarize_in_structure(const Eigen::MatrixXd& op,
                                        const Eigen::MatrixXd& j);

// ---------------------------------------------------------------------------
// Clifford lifts for the even orthogonal groups

// Sparse element of the real Clifford algebra with e_i^2 = +1; keys are
// sorted index subsets of {1..dim}.
struct CliffordElement {
  int dim = 0;
  std::map<std::vector<int>, double> terms;
};

CliffordElement clifford_scalar(int dim, double value);
CliffordElement clifford_blade(int dim, const std::vector<int>& indices,
                               double coeff);
CliffordElement clifford_vector(int dim, const Eigen::VectorXd& v);
CliffordElement clifford_add(const CliffordElement& a,
                             const CliffordElement& b);
CliffordElement clifford_scale(const CliffordElement& a, double factor);
CliffordElement clifford_mul(const CliffordElement& a,
                             const CliffordElement& b);
double clifford_distance(const CliffordElement& a, const CliffordElement& b);

// Lift of a special orthogonal matrix to the even Clifford algebra as a
// product of reflection vectors; conjugation by the lift reproduces the
// matrix on vectors.
CliffordElement clifford_lift(const Eigen::MatrixXd& g);
// Matrix recovered from conjugating the coordinate vectors by the lift.
Eigen::MatrixXd clifford_conjugation_matrix(const CliffordElement& lift,
                                            int dim);

// The two commuting torus-normalizer elements of SO(2N) projecting onto the
// Weyl pair below, and the Weyl pair itself acting on torus coordinates:
// negate the first and last coordinate / reverse and negate all coordinates.
Eigen::MatrixXd so_lift_negate_ends(int n);
Eigen::MatrixXd so_lift_reverse_negate(int n);
Eigen::MatrixXd torus_weyl_negate_ends(int n);
Eigen::MatrixXd torus_weyl_reverse_negate(int n);

// Builds the two lifts for even N <= 8, lifts them to the Clifford algebra,
// and reports whether the lifts commute for all four sign choices.
bool clifford_lift_commutes(int n);

// ---------------------------------------------------------------------------
// Volume consistency and fixed-point separation

// Pfaffian of a skew-symmetric matrix (elimination-based).
double pfaffian(const Eigen::MatrixXd& skew);

// Max over samples of | |Pf| - 1 | for the torus-restricted two-form of a
// commuting Weyl pair, each sample evaluated in an independently rotated
// frame.  The absolute value of the Pfaffian is the volume density; its
// sign is an orientation convention.  Requires samples >= 1000.
double fusion_volume_check(const Eigen::MatrixXd& w1,
                           const Eigen::MatrixXd& w2, int samples);

// Minimum Frobenius distance || t1 - g t2 g^-1 || over random g: a
// falsification probe that distinct alcove points are never conjugate.
double conjugation_separation(const MatrixGroupElement& t1,
                              const MatrixGroupElement& t2, long long samples,
                              std::mt19937_64& rng);

// Sorted eigenvalue arguments: a complete conjugation invariant separating
// alcove representatives.
std::vector<double> conjugacy_class_coordinates(const MatrixGroupElement& t);

// ---------------------------------------------------------------------------
// Aggregated verification suite

struct CheckRecord {
  std::string name;
  bool passed = false;
  double residual = 0.0;  // worst observed deviation
  double bound = 0.0;     // tolerance it is held against
  long long samples = 0;
};

// Runs every check of this module with the given seed and returns one
// record per proposition; used by the command-line self check.
std::vector<CheckRecord> run_numeric_suite(unsigned seed);

}  // namespace vt
