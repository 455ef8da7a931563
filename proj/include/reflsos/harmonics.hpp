#pragma once

#include <vector>

#include "reflsos/groups.hpp"
#include "reflsos/poly.hpp"

namespace rsos {

// Span of all partial derivatives of the reflection-hyperplane product, graded
// by degree.  Its dimension is the group order and its graded dimensions are
// the coefficients of prod_i (1 + t + ... + t^(d_i - 1)).
struct HarmonicSpace {
  ReflectionGroup group;
  Poly delta;
  std::vector<Poly> basis;        // echelonized, grouped by ascending degree
  std::vector<int> graded_dims;   // index = degree
};

// Product of the linear forms cutting out the reflection hyperplanes, sign
// fixed so the graded-lex leading coefficient is positive.
Poly delta_poly(const ReflectionGroup& g);

HarmonicSpace harmonic_basis(const ReflectionGroup& g);

// Coefficient list of prod_i (1 + t + ... + t^(degrees[i] - 1)).
std::vector<long long> coinvariant_poincare(const ReflectionGroup& g);

// The constant c with delta = c * det(Jacobian of the basis polynomials).
// A nonconstant ratio means the claimed basis does not generate.
Rat jacobian_check(const ReflectionGroup& g, const FundamentalBasis& basis);

// Determinant of a square matrix of polynomials by cofactor expansion.
Poly poly_det(const std::vector<std::vector<Poly>>& m);

int sp_det(const SignedPermutation& g);  // determinant of the signed permutation matrix

}  // namespace rsos
