#pragma once

#include <string>
#include <vector>

#include "reflsos/groups.hpp"
#include "reflsos/tableaux.hpp"

namespace rsos {

// Name of one irreducible block of the coinvariant algebra. For the symmetric
// family the shape has an empty second component. For the D family the shape
// is the canonical representative of the unordered pair {lambda, mu} (the one
// enumerate_multipartitions lists first), and equal pairs (lambda, lambda)
// split into a +1 and a -1 label.
struct IsotypeLabel {
  MultiPartition shape;
  int dn_sign = 0;
  bool operator==(const IsotypeLabel&) const = default;
  bool operator<(const IsotypeLabel&) const = default;
};

std::string isotype_str(const IsotypeLabel& l);

// All block labels of the family, in catalog order.
std::vector<IsotypeLabel> isotype_labels(const ReflectionGroup& g);

// Dimension of the irreducible module the label names: the tableau count of
// the shape, halved for the D-family split labels.
long long isotype_dim(const ReflectionGroup& g, const IsotypeLabel& l);

// Indexing data of one generator polynomial. T and S share the label's shape;
// dn_sign picks the +/- combination for D-family equal pairs and is 0 elsewhere.
struct SpechtLabel {
  MultiPartition shape;
  StandardTableau T, S;
  int dn_sign = 0;
};

struct HigherSpecht {
  SpechtLabel label;
  Poly poly;  // primitive: coprime integer coefficients, positive leading term
  int degree = 0;
};

// Young symmetrizer attached to T: row-symmetrize, then column-antisymmetrize
// with signs, scaled by prod_c f^{shape_c} / |shape_c|!. Components act on the
// letters that actually fill them, so a pair tableau factors into two commuting
// operators.
Poly epsilon_apply(const StandardTableau& t, const Poly& p);

// X_T^S: variable order from the word of T, exponents from the index vector of
// the word of S.
Poly monomial_XTS(const StandardTableau& t, const StandardTableau& s);

// The generator polynomial for the label under the given group:
//   S family   eps_T applied to X_T^S
//   B family   the same evaluated at squared variables, times prod of X_j over
//              the letters j in the second component of T
//   D family   as for B when the components differ; for equal components the
//              dn_sign combination of the tableau and its component swap
// The result is primitive-normalized; `degree` is charge(S) for the symmetric
// family and 2*charge(S) + |second| for the signed ones.
HigherSpecht higher_specht(const ReflectionGroup& g, const SpechtLabel& label);

enum class DegreeParity { any, even, odd };

// Degree-k generator counts h_k, k = 0..kmax, for one block label. Counts
// tableaux S of the label's shape with generator degree k. For the D family
// the two mirror sectors are pooled and each swap pair {S, swap(S)} keeps only
// its lower-degree member (the degrees of a pair always differ by exactly n);
// equal-pair labels count the kept tableaux once per sign.
std::vector<int> h_table(const ReflectionGroup& g, const IsotypeLabel& label, int kmax);

// Generator catalog of the coinvariant algebra up to max_degree, grouped by
// block label. items[i] lists the generators of labels[i] ordered by degree
// (ties by tableau enumeration order, mirror sector last); h[i] is the degree
// histogram of the listed items. T is fixed to the first standard tableau of
// the item's own shape; S ranges. `parity` keeps only generators of the given
// degree parity; summed over both parities with max_degree at its ceiling the
// catalog carries one copy of the regular representation.
struct Catalog {
  ReflectionGroup group;
  int max_degree = 0;
  DegreeParity parity = DegreeParity::any;
  std::vector<IsotypeLabel> labels;
  std::vector<std::vector<int>> h;
  std::vector<std::vector<HigherSpecht>> items;
  long long total_items() const;
};

Catalog coinvariant_catalog(const ReflectionGroup& g, int max_degree,
                            DegreeParity parity = DegreeParity::any);

}  // namespace rsos
