#pragma once

#include <map>
#include <string>
#include <vector>

#include "reflsos/rational.hpp"

namespace rsos {

// Dense exponent vector; size is the ambient variable count.
using Expo = std::vector<int>;

inline int expo_degree(const Expo& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

// Canonical term order: graded-lex with the leading term first.
// a precedes b  <=>  deg(a) > deg(b), ties broken lexicographically (larger first).
struct TermOrder {
  bool operator()(const Expo& a, const Expo& b) const {
    int da = expo_degree(a), db = expo_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

// Exact evaluation points (one coordinate per variable).
using Point = std::vector<Rat>;

// Sparse multivariate polynomial with exact rational coefficients.
// Invariant: no zero coefficients are stored; iteration order is canonical.
class Poly {
public:
  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) { require(nvars >= 0, Errc::invalid_argument, "nvars < 0"); }

  static Poly constant(int nvars, const Rat& c);
  static Poly monomial(int nvars, const Expo& e, const Rat& c = 1);
  // x_i, 1-indexed.
  static Poly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int num_terms() const { return static_cast<int>(terms_.size()); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  const std::map<Expo, Rat, TermOrder>& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }
  Rat coeff(const Expo& e) const;
  void set_coeff(const Expo& e, const Rat& c);
  void add_term(const Expo& e, const Rat& c);

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Rat& c);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Poly pow(int k) const;

  Rat evaluate(const Point& p) const;
  double evaluate(const std::vector<double>& p) const;

  // f(X_1^2, ..., X_n^2): doubles every exponent.
  Poly substitute_squares() const;

  // Partial derivative with respect to x_i (1-indexed).
  Poly diff(int i) const;

  // Coefficient of the graded-lex leading term; zero for the zero polynomial.
  Rat leading_coeff() const { return terms_.empty() ? Rat(0) : terms_.begin()->second; }

  // Content (gcd of coefficients, sign of the leading term); zero poly has content 0.
  Rat content() const;
  // this / content(): integer coprime coefficients, positive leading coefficient.
  Poly primitive() const;

  // Signed-term text form, e.g. "2*x1^2*x2 - 1/3*x3". Round-trips bit-exactly.
  std::string str() const;
  static Poly parse(int nvars, const std::string& text);

private:
  int nvars_;
  std::map<Expo, Rat, TermOrder> terms_;
};

// <f, g> = constant term of f(d/dX) applied to g.
// For monomials: <X^a, X^a> = prod a_i!, distinct monomials pair to zero.
Rat diff_pairing(const Poly& f, const Poly& g);

}  // namespace rsos
