#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "reflsos/poly.hpp"

namespace rsos {

enum class GroupFamily { S, B, D };

// A finite real reflection group from the three classical families, acting on
// R^n by (signed) coordinate permutations.
struct ReflectionGroup {
  GroupFamily family = GroupFamily::S;
  int n = 0;
  std::vector<int> degrees;  // degrees of the fundamental invariants
  mpz_class order;
};

ReflectionGroup make_group(GroupFamily family, int n);
ReflectionGroup parse_group(const std::string& text);  // "S:4", "B:3", "D:4"
std::string group_str(const ReflectionGroup& g);
std::string family_str(GroupFamily family);
int reflection_count(const ReflectionGroup& g);

// x_i -> signs[perm[i]] * x_{perm[i]} as a linear map; perm and signs are 1-based
// images and per-coordinate signs of the matrix columns.
struct SignedPermutation {
  std::vector<int> perm;
  std::vector<int> signs;
};

SignedPermutation sp_identity(int n);
SignedPermutation sp_compose(const SignedPermutation& g, const SignedPermutation& h);
SignedPermutation sp_inverse(const SignedPermutation& g);
bool sp_in_group(const ReflectionGroup& g, const SignedPermutation& s);

Poly act(const SignedPermutation& g, const Poly& p);

// Generating set (adjacent transpositions plus the family's sign generators).
std::vector<SignedPermutation> group_generators(const ReflectionGroup& g);
// Full enumeration; refuses orders beyond a desk budget.
std::vector<SignedPermutation> group_elements(const ReflectionGroup& g);
SignedPermutation random_element(const ReflectionGroup& g, std::mt19937& rng);

bool is_invariant(const ReflectionGroup& g, const Poly& p);

// Group averaging, computed monomial-by-monomial: a sign rule decides whether the
// monomial survives averaging over the sign part, and the permutation part
// contributes the orbit average of the exponent vector.
Poly reynolds(const ReflectionGroup& g, const Poly& p);

// Number of exponent vectors alpha with sum alpha_i * degree_i = k; equals the
// dimension of the degree-k invariant subspace.
long long invariant_dim(const ReflectionGroup& g, int k);
std::vector<Expo> weighted_exponents(const std::vector<int>& degrees, int k);

enum class BasisNaming { power_sums, power_means, elementary_sq };

// Algebraically independent homogeneous generators of the invariant ring, with
// degree i-th entry equal to group.degrees[i].
struct FundamentalBasis {
  ReflectionGroup group;
  BasisNaming naming = BasisNaming::power_sums;
  std::vector<Poly> psis;
  std::vector<std::string> names;
};

FundamentalBasis fundamental_basis(const ReflectionGroup& g, BasisNaming naming);

// All products psi^beta of weighted degree d, with their expansions in x.
std::vector<std::pair<Expo, Poly>> invariant_monomial_basis(const ReflectionGroup& g,
                                                            const FundamentalBasis& basis, int d);

// Exact coordinates of an invariant form in the z_i (one symbol per psi_i):
// substituting psi_i for z_i reproduces f.  Throws not_invariant when f is
// outside the invariant subspace of its degree.
Poly rewrite_in_fundamentals(const ReflectionGroup& g, const FundamentalBasis& basis,
                             const Poly& f);

// Substitute psis[i] for variable i+1 of zpoly.
Poly substitute_basis(const Poly& zpoly, const std::vector<Poly>& psis);

// Symmetric-function factories on n variables.
Poly elementary_symmetric(int n, int k);
Poly power_sum(int n, int k);

}  // namespace rsos
