#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reflsos/meanblocks.hpp"
#include "reflsos/sos.hpp"

namespace rsos {

using DMat = std::vector<std::vector<double>>;

// Linear functional on the degree-2d invariant forms, stored by its values on
// the invariant monomial basis (the same enumeration assemble uses for its
// rows). Exact functionals carry rational values; float ones only fvalues.
struct MomentFunctional {
  ReflectionGroup group;
  int two_d = 0;
  BasisNaming naming = BasisNaming::power_sums;
  std::vector<std::pair<Expo, Poly>> basis;
  QVec values;                  // filled in exact mode
  std::vector<double> fvalues;  // always filled
  bool exact = false;
};

// Point evaluation ell(f) = f(a), exact at rational points.
MomentFunctional from_point(const ReflectionGroup& g, const Point& a, int two_d,
                            BasisNaming naming = BasisNaming::power_sums);
MomentFunctional from_point(const ReflectionGroup& g, const std::vector<double>& a,
                            int two_d, BasisNaming naming = BasisNaming::power_sums);

// Functional with prescribed values on the invariant monomial basis.
MomentFunctional from_values(const ReflectionGroup& g, const QVec& values, int two_d,
                             BasisNaming naming = BasisNaming::power_sums);

// ell applied to an invariant form of matching degree, given in X coordinates.
Rat apply(const MomentFunctional& ell, const Poly& f);
double apply_f(const MomentFunctional& ell, const Poly& f);

// ell applied entrywise to every block matrix of the decomposition. The
// decomposition must share group, coordinates, and degree d = two_d / 2.
std::vector<QMat> ell_blocks(const MomentFunctional& ell, const Decomposition& dec);
std::vector<DMat> ell_blocks_f(const MomentFunctional& ell, const Decomposition& dec);

// Membership of ell in the dual cone of the invariant sums of squares: every
// block image PSD. Decision by exact pivots in exact mode, by eigenvalues at
// tolerance 1e-9 otherwise; margin is the least block eigenvalue either way.
struct DualMembership {
  bool inside = false;
  double margin = 0;
  bool exact = false;
};
DualMembership in_dual_cone(const MomentFunctional& ell, const Decomposition& dec);

// Kernel of the quadratic form f -> ell(R(f^2)) on the degree-d forms, as a
// module: per-block nullspace coefficients, the lifted generator polynomials,
// a full basis of W under the group action, and an independent spanning set
// of W2 = { R(w g) : w in W, g of degree d } inside the degree-2d invariants
// (in fundamental coordinates). Exact functionals only.
struct KernelModule {
  std::vector<std::pair<int, QVec>> block_kernel;  // block index, slot coords
  std::vector<Poly> generators;                    // X coordinates
  std::vector<Poly> w_basis;                       // X coordinates
  std::vector<Poly> w2_basis;                      // fundamental coordinates
  long long w2_dim = 0;
};
KernelModule kernel_module(const MomentFunctional& ell, const Decomposition& dec);

// Extremality of the ray through ell: the kernel of ell must be a hyperplane
// in the degree-2d invariants, i.e. dim W2 = N - 1. Exact functionals get an
// exact rank; float ones use eigenvalue and rank cutoffs at 1e-8.
struct ExtremalityReport {
  bool extremal = false;
  long long w2_dim = 0;
  long long ambient = 0;  // invariant basis size N
  long long codim = 0;    // ambient - w2_dim
  bool exact = false;
};
ExtremalityReport extremality_check(const MomentFunctional& ell, const Decomposition& dec);

// Verification drivers for the classified families.
enum class FamilyCase { b3_octics, d4_quartics, bn_octics };

struct FamilyReport {
  FamilyCase which = FamilyCase::b3_octics;
  int n = 0;        // rank for bn_octics
  int samples = 0;  // grid points per family / random draws
  bool pass = false;
  double min_margin = 0;  // least membership margin seen
  int extremal_checked = 0;
  std::vector<std::pair<std::string, double>> sample_margins;
  std::vector<std::string> failures;
  std::string note;
};

// b3_octics: the two evaluation families ev_(a, sqrt(1-a^2), 0), a in [1/2,1],
// and ev_(b, c, c), c = sqrt((1-b^2)/2), b in [0,1], on `samples` points each:
// membership with margin >= -1e-9, extremality at interior grid points, and
// exact membership plus exact hyperplane kernels at the rational anchors
// (1,0,0), (3/5,4/5,0), (1/3,2/3,2/3).
// d4_quartics: the three evaluations at (1,0,0,0), (1,1,1,-1), (1,1,1,1) are
// members and extremal with dim W2 = 2 exactly; the boundary generators
// 4p4 - p2^2, p2^2 - p4 + 12e4, p2^2 - p4 - 12e4 certify as sums of squares
// exactly and lie in the kernels of the evaluations vanishing on them; and
// `samples` random conic combinations decompose in the 3x3 moment system with
// nonnegative coordinates (exactly; float residual < 1e-10 as well).
// bn_octics: the three-route block cross-check at rank n.
FamilyReport verify_family(FamilyCase which, int samples, int n = 0);

std::string family_str(const FamilyReport& rep);

// Test-set nonnegativity by bivariate restriction.
enum class TestsetMode { symmetric_quartic, b3_octic };

// symmetric_quartic: S_n-invariant quartic f; restrictions f(x..x, y..y) over
// all two-part compositions of n. b3_octic: B_3-invariant octic f;
// restrictions f(x,x,y) and f(0,x,y). Each restriction is decided by a
// bivariate Gram feasibility through solve_gram (nonnegative bivariate forms
// are sums of squares), with a rational negative witness scan deciding the
// other direction.
bool testset_nonneg(const ReflectionGroup& g, const Poly& f, TestsetMode mode);

}  // namespace rsos
