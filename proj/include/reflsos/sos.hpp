#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reflsos/isotypic.hpp"
#include "reflsos/linalg.hpp"

namespace rsos {

// Feasibility program for writing an invariant form f of degree 2d as
// sum_b Tr(A_b * B_b) with every A_b symmetric PSD, where B_b are the block
// matrices of the degree-d symmetry-adapted decomposition. Constraints match
// coefficients on the invariant monomial basis of degree 2d exactly; there is
// one row per basis element and one packed column per upper-triangle entry of
// the A_b. Off-diagonal columns carry the factor 2 from the trace.
struct SosProgram {
  ReflectionGroup group;
  int d = 0;
  Decomposition dec;
  std::vector<std::pair<Expo, Poly>> inv_basis;
  QVec target;
  QMat constraints;
  std::vector<int> offset;  // first packed column of each block
  int vars = 0;             // total packed columns
};

// Symmetric rational multiplier per isotype block.
struct Certificate {
  std::vector<QMat> blocks;
};

struct SquareList {
  std::vector<Poly> squares;
};

// Bare block-diagonal PSD feasibility data in the same packed coordinates:
// find symmetric PSD blocks with constraints . x = target, one packed column
// per upper-triangle entry, off-diagonal columns carrying the trace factor 2.
// Assembled programs embed one; bivariate Gram checks build theirs directly.
struct GramShape {
  std::vector<int> bsize;
  std::vector<int> offset;  // first packed column of each block
  int vars = 0;
  QMat constraints;
  QVec target;
};

GramShape gram_shape(const SosProgram& prog);

SosProgram assemble(const ReflectionGroup& g, const Poly& f, int d,
                    BasisNaming naming = BasisNaming::power_sums);

// Same program over an already-built decomposition (block matrices are filled
// in if missing). The decomposition fixes group, degree and coordinates.
SosProgram assemble_from(Decomposition dec, const Poly& f);

// SDPA sparse output. Data is exact: plain integers when possible, exact
// decimals when every denominator divides a power of ten, otherwise integers
// scaled by a global denominator recorded in a leading comment line.
void export_sdpa(const SosProgram& prog, const std::string& path);

enum class SolveStatus { feasible, infeasible, undetermined };

struct SolveResult {
  SolveStatus status = SolveStatus::undetermined;
  Certificate cert;     // filled when feasible
  bool exact = false;   // cert passed exact verification
  double residual = 0;  // worst constraint violation of the float iterate
  double min_eig = 0;   // least block eigenvalue of the float iterate
  int iterations = 0;
  Point separator;      // when infeasible: point with f(separator) < 0
  Rat separation = 0;   // f(separator)
  std::string note;
};

// Desk-scale solver: exact point-evaluation separators first, then Dykstra
// alternating projection between the constraint space and the PSD cone, then
// continued-fraction rounding with an exact re-projection onto the constraint
// space. Never reports infeasible without a verified separating functional;
// iteration-cap exhaustion yields an undetermined result.
SolveResult solve_small(const SosProgram& prog);

// The projection-and-rounding core on bare shapes. Feasible certificates are
// verified against the constraints (exact when rounding lands, numeric at
// 1e-9 otherwise); no separator search, so the result is never infeasible.
SolveResult solve_gram(const GramShape& shape);

struct VerifyReport {
  bool verified = false;
  bool identity_ok = false;  // sum_b Tr(A_b B_b) reproduces the target exactly
  bool psd_ok = false;       // every A_b passes the exact LDL^T check
  int bad_block = -1;        // first block failing PSD
  std::string detail;
};

VerifyReport verify_certificate(const SosProgram& prog, const Certificate& cert);

// Deterministic per seed: m random degree-d forms g_i with small integer
// coefficients, f = reynolds(sum g_i^2). m = 0 yields the zero form.
std::pair<Poly, SquareList> sos_sample(const ReflectionGroup& g, int d, int m,
                                       unsigned seed);

}  // namespace rsos
