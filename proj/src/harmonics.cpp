#include "reflsos/harmonics.hpp"

#include <algorithm>
#include <map>

#include "reflsos/linalg.hpp"

namespace rsos {

Poly delta_poly(const ReflectionGroup& g) {
  int n = g.n;
  Poly d = Poly::constant(n, 1);
  if (g.family == GroupFamily::S) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) d *= Poly::variable(n, i) - Poly::variable(n, j);
    return d;
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly xi2 = Poly::variable(n, i) * Poly::variable(n, i);
      Poly xj2 = Poly::variable(n, j) * Poly::variable(n, j);
      d *= xi2 - xj2;
    }
  if (g.family == GroupFamily::B)
    for (int i = 1; i <= n; ++i) d *= Poly::variable(n, i);
  return d;
}

std::vector<long long> coinvariant_poincare(const ReflectionGroup& g) {
  std::vector<long long> c = {1};
  for (int d : g.degrees) {
    std::vector<long long> next(c.size() + d - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
      for (int j = 0; j < d; ++j) next[i + j] += c[i];
    c = next;
  }
  return c;
}

HarmonicSpace harmonic_basis(const ReflectionGroup& g) {
  require(g.order <= 400, Errc::budget_exceeded,
          "harmonic_basis: group order " + g.order.get_str() + " exceeds the desk budget");
  HarmonicSpace hs;
  hs.group = g;
  hs.delta = delta_poly(g);
  int top = hs.delta.degree();
  hs.graded_dims.assign(top + 1, 0);

  // Walk derivative orders m = 0..top; each exponent alpha is produced once,
  // extending only at positions up to alpha's lowest nonzero index.
  std::map<Expo, Poly> level;
  level.emplace(Expo(g.n, 0), hs.delta);
  long long total = 0;
  for (int m = 0; m <= top; ++m) {
    int k = top - m;  // degree of this slice
    // Row-reduce the slice exactly; keep pivot rows as basis elements.
    std::map<Expo, size_t, TermOrder> cols;
    std::vector<const Poly*> rows;
    for (const auto& [a, p] : level) {
      if (p.is_zero()) continue;
      rows.push_back(&p);
      for (const auto& [e, c] : p) cols.emplace(e, cols.size());
    }
    QMat mat = qmat(rows.size(), cols.size());
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [e, c] : *rows[r]) mat[r][cols[e]] = c;
    // Echelonize and collect nonzero rows back as polynomials.
    std::vector<Expo> colexpo(cols.size());
    for (const auto& [e, idx] : cols) colexpo[idx] = e;
    size_t rank = 0;
    for (size_t col = 0; col < cols.size() && rank < mat.size(); ++col) {
      size_t piv = rank;
      while (piv < mat.size() && mat[piv][col] == 0) ++piv;
      if (piv == mat.size()) continue;
      std::swap(mat[rank], mat[piv]);
      for (size_t r = 0; r < mat.size(); ++r) {
        if (r == rank || mat[r][col] == 0) continue;
        Rat f = mat[r][col] / mat[rank][col];
        for (size_t cc = col; cc < cols.size(); ++cc) mat[r][cc] -= f * mat[rank][cc];
      }
      ++rank;
    }
    for (size_t r = 0; r < rank; ++r) {
      Poly b(g.n);
      for (size_t cc = 0; cc < cols.size(); ++cc)
        if (mat[r][cc] != 0) b.add_term(colexpo[cc], mat[r][cc]);
      hs.basis.push_back(b.primitive());
    }
    hs.graded_dims[k] = static_cast<int>(rank);
    total += static_cast<long long>(rank);
    // Next derivative level.
    if (m == top) break;
    std::map<Expo, Poly> next;
    for (const auto& [a, p] : level) {
      int low = g.n;
      for (int i = 0; i < g.n; ++i)
        if (a[i] > 0) {
          low = i + 1;
          break;
        }
      for (int i = 1; i <= std::min(low, g.n); ++i) {
        Expo a2 = a;
        a2[i - 1] += 1;
        next.emplace(a2, p.diff(i));
      }
    }
    level = std::move(next);
  }
  std::reverse(hs.basis.begin(), hs.basis.end());  // ascending degree
  require(mpz_class(static_cast<long>(total)) == g.order, Errc::internal,
          "harmonic_basis: span dimension differs from the group order");
  return hs;
}

Poly poly_det(const std::vector<std::vector<Poly>>& m) {
  size_t n = m.size();
  require(n > 0, Errc::invalid_argument, "poly_det: empty matrix");
  for (const auto& row : m)
    require(row.size() == n, Errc::dimension_mismatch, "poly_det: not square");
  if (n == 1) return m[0][0];
  int nv = m[0][0].nvars();
  Poly det(nv);
  std::vector<std::vector<Poly>> minor(n - 1, std::vector<Poly>(n - 1, Poly(nv)));
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    for (size_t r = 1; r < n; ++r) {
      size_t cc = 0;
      for (size_t c = 0; c < n; ++c) {
        if (c == j) continue;
        minor[r - 1][cc++] = m[r][c];
      }
    }
    Poly cof = m[0][j] * poly_det(minor);
    if (j % 2 == 0)
      det += cof;
    else
      det -= cof;
  }
  return det;
}

int sp_det(const SignedPermutation& g) {
  int n = static_cast<int>(g.perm.size());
  std::vector<char> seen(n, 0);
  int det = 1;
  for (int i = 0; i < n; ++i) {
    if (seen[i]) continue;
    int len = 0, j = i;
    while (!seen[j]) {
      seen[j] = 1;
      det *= g.signs[j];
      j = g.perm[j] - 1;
      ++len;
    }
    if (len % 2 == 0) det = -det;
  }
  return det;
}

Rat jacobian_check(const ReflectionGroup& g, const FundamentalBasis& basis) {
  require(static_cast<int>(basis.psis.size()) == g.n, Errc::dimension_mismatch,
          "jacobian_check");
  std::vector<std::vector<Poly>> jac(g.n, std::vector<Poly>(g.n, Poly(g.n)));
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) jac[i][j] = basis.psis[i].diff(j + 1);
  Poly det = poly_det(jac);
  Poly delta = delta_poly(g);
  require(!det.is_zero(), Errc::verification_failed,
          "jacobian_check: zero Jacobian, generators are dependent");
  Rat c = delta.leading_coeff() / det.leading_coeff();
  require(det * c == delta, Errc::verification_failed,
          "jacobian_check: ratio is not constant; generators do not generate");
  return c;
}

}  // namespace rsos
