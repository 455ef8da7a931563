#pragma once

#include <string>
#include <vector>

#include "reflsos/specht.hpp"

namespace rsos {

// One isotypic block of the degree-d form space. Slot v holds the generator
// polynomial s_v (an invariant monomial times a coinvariant generator, in X
// coordinates) and B[v][u] = reynolds(s_v * s_u) rewritten as a polynomial in
// the fundamental invariants. B is filled by block_matrices.
struct IsotypeBlock {
  IsotypeLabel label;
  long long dim = 0;
  std::vector<Poly> generators;
  std::vector<int> gen_degree;    // coinvariant degree k of the slot's generator
  std::vector<Expo> gen_monomial; // exponent of the slot's fundamental monomial
  std::vector<std::vector<Poly>> B;
  long long size() const { return static_cast<long long>(generators.size()); }
};

// Isotypic decomposition of the full space of degree-d forms.
struct Decomposition {
  ReflectionGroup group;
  FundamentalBasis basis;
  int d = 0;
  std::vector<IsotypeBlock> blocks;  // labels with positive multiplicity only
  std::vector<std::vector<int>> h;   // per block: generator counts by degree, 0..d
  mpz_class form_dim = 0;            // binom(n + d - 1, d)
};

// Copies of the label's irreducible inside the degree-d forms:
// sum over k of invariant_dim(d - k) * h_k.
long long multiplicity(const ReflectionGroup& g, const IsotypeLabel& label, int d);

// Generator slots ordered by (coinvariant degree ascending, tableau order,
// fundamental monomial order). For the D family, generators drawn from the
// mirror sector of a merged label are realigned through the one-dimensional
// space of equivariant maps onto the block's first generator module, so all
// slots of a block reference one model vector. The dimension identity
// sum q * dim = binom(n + d - 1, d) is checked on every build.
Decomposition symmetry_adapted_basis(const ReflectionGroup& g, int d, BasisNaming naming);

// Fills B[v][u] for every block and checks that symmetrized products across
// distinct blocks vanish.
void block_matrices(Decomposition& dec);

struct StabilizationRow {
  int n = 0;
  MultiPartition shape;
  long long q = 0;
  std::vector<int> h;  // degrees 0..d
};

struct StabilizationReport {
  GroupFamily family = GroupFamily::S;
  int d = 0;
  std::vector<StabilizationRow> rows;
  bool stable = false;        // q and the degree histograms agree across all ranks
  bool rho_audit_ok = false;  // prefix-set tableaux map rank-to-rank as expected
  std::string note;
};

// Tracks one shape family along shape_plus_one from rank n_from to n_to and
// reports the multiplicities in degree d together with a mechanical audit of
// the rank-raising tableau map on the prefix sets.
StabilizationReport stabilization_report(GroupFamily family, const MultiPartition& seed,
                                         int d, int n_from, int n_to);

std::string stabilization_str(const StabilizationReport& rep);

}  // namespace rsos
