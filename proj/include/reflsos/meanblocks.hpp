#pragma once

#include <array>
#include <string>
#include <vector>

#include "reflsos/isotypic.hpp"

namespace rsos {

// Even octic invariants of the hyperoctahedral family, written in the five
// degree-8 products of power means of squares. Coordinate order:
//   0: pm2^4   1: pm4*pm2^2   2: pm4^2   3: pm6*pm2   4: pm8
// where pm2k(x) = (x_1^{2k} + ... + x_n^{2k}) / n.
using PmVec = std::array<Rat, 5>;
using PmMat = std::vector<std::vector<PmVec>>;

const std::array<const char*, 5>& pm_product_names();

// One stable isotypic block of the even octic cone at rank n. `table` is the
// closed-form block matrix as a function of n, evaluated at this n; the
// symmetrized products of the block's generators equal scale * table
// entrywise, so table is positive semidefinite exactly when the product
// matrix is.
struct OcticBlock {
  std::string family_name;  // rank-independent label, e.g. "((n-1,1),())"
  IsotypeLabel label;       // concrete label at this rank
  PmMat table;
  Rat scale;
};

// The seven stable blocks at rank n >= 4, by direct evaluation of the
// closed forms. O(1) arithmetic per entry.
std::vector<OcticBlock> octic_blocks_at(long n);

// Large-n limits of the tables, same order and shapes.
std::vector<PmMat> octic_limit_blocks();

// Symmetrized products R(g_u g_v) of the blocks' degree-4 generators,
// computed combinatorially from orbit weights and the expansions of monomial
// symmetric polynomials in power sums. No n-variable polynomial arithmetic;
// valid for any n >= 4, including ranks far beyond polynomial reach.
std::vector<PmMat> octic_products_at(long n);

// Deviation of the rank-n tables from their limits along a sample of ranks.
struct OcticConvergence {
  std::vector<long> ns;
  std::vector<double> max_diff;  // max entry deviation from the limit, per rank
  double fitted_c = 0;           // max over samples of n * max_diff
  bool monotone = false;         // deviations strictly decrease along ns
  bool products_match = false;   // products == scale * table at every sample
};

OcticConvergence octic_limit_convergence(const std::vector<long>& ns);

// Cross-check of three independent routes to the block matrices at one rank:
// the closed-form tables, the combinatorial products, and the full
// polynomial construction (Reynolds products of explicit generators plus the
// blocks of symmetry_adapted_basis, matched through a change of generators).
// The polynomial route builds n-variable polynomials; n is capped at 10.
struct BnOcticsReport {
  int n = 0;
  bool products_match_table = false;  // combinatorial products == scale * table
  bool poly_route_match = false;      // polynomial Reynolds products agree
  bool library_match = false;         // decomposition blocks congruent to tables
  std::vector<std::string> detail;    // one line per failed comparison
  bool ok() const { return products_match_table && poly_route_match && library_match; }
};

BnOcticsReport verify_bn_octics(int n);

std::string bn_octics_str(const BnOcticsReport& rep);

}  // namespace rsos
