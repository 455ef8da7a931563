#include "reflsos/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "reflsos/linalg.hpp"

namespace rsos {

ReflectionGroup make_group(GroupFamily family, int n) {
  require(n >= 2, Errc::invalid_argument, "make_group: need n >= 2");
  ReflectionGroup g;
  g.family = family;
  g.n = n;
  mpz_class fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  switch (family) {
    case GroupFamily::S:
      for (int i = 1; i <= n; ++i) g.degrees.push_back(i);
      g.order = fact;
      break;
    case GroupFamily::B:
      for (int i = 1; i <= n; ++i) g.degrees.push_back(2 * i);
      mpz_mul_2exp(g.order.get_mpz_t(), fact.get_mpz_t(), n);
      break;
    case GroupFamily::D:
      for (int i = 1; i < n; ++i) g.degrees.push_back(2 * i);
      g.degrees.push_back(n);
      mpz_mul_2exp(g.order.get_mpz_t(), fact.get_mpz_t(), n - 1);
      break;
  }
  return g;
}

ReflectionGroup parse_group(const std::string& text) {
  auto bad = [&text]() {
    fail(Errc::parse_error, "group spec must look like S:n, B:n or D:n, got '" + text + "'");
  };
  if (text.size() < 3 || text[1] != ':') bad();
  GroupFamily fam = GroupFamily::S;
  switch (text[0]) {
    case 'S': break;
    case 'B': fam = GroupFamily::B; break;
    case 'D': fam = GroupFamily::D; break;
    default: bad();
  }
  int n = 0;
  for (size_t i = 2; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') bad();
    n = n * 10 + (text[i] - '0');
    if (n > 1000000) bad();
  }
  return make_group(fam, n);
}

std::string family_str(GroupFamily family) {
  switch (family) {
    case GroupFamily::S: return "S";
    case GroupFamily::B: return "B";
    case GroupFamily::D: return "D";
  }
  return "?";
}

std::string group_str(const ReflectionGroup& g) {
  return family_str(g.family) + ":" + std::to_string(g.n);
}

int reflection_count(const ReflectionGroup& g) {
  switch (g.family) {
    case GroupFamily::S: return g.n * (g.n - 1) / 2;
    case GroupFamily::B: return g.n * g.n;
    case GroupFamily::D: return g.n * (g.n - 1);
  }
  return 0;
}

SignedPermutation sp_identity(int n) {
  SignedPermutation s;
  s.perm.resize(n);
  std::iota(s.perm.begin(), s.perm.end(), 1);
  s.signs.assign(n, 1);
  return s;
}

SignedPermutation sp_compose(const SignedPermutation& g, const SignedPermutation& h) {
  int n = static_cast<int>(g.perm.size());
  require(static_cast<int>(h.perm.size()) == n, Errc::dimension_mismatch, "sp_compose");
  SignedPermutation r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int i = 0; i < n; ++i) {
    int hi = h.perm[i];
    int k = g.perm[hi - 1];
    r.perm[i] = k;
    r.signs[k - 1] = g.signs[k - 1] * h.signs[hi - 1];
  }
  return r;
}

SignedPermutation sp_inverse(const SignedPermutation& g) {
  int n = static_cast<int>(g.perm.size());
  SignedPermutation r;
  r.perm.resize(n);
  r.signs.resize(n);
  for (int i = 0; i < n; ++i) {
    r.perm[g.perm[i] - 1] = i + 1;
    r.signs[i] = g.signs[g.perm[i] - 1];
  }
  return r;
}

bool sp_in_group(const ReflectionGroup& g, const SignedPermutation& s) {
  if (static_cast<int>(s.perm.size()) != g.n) return false;
  int prod = 1;
  for (int v : s.signs) {
    if (v != 1 && v != -1) return false;
    prod *= v;
  }
  switch (g.family) {
    case GroupFamily::S:
      return std::all_of(s.signs.begin(), s.signs.end(), [](int v) { return v == 1; });
    case GroupFamily::B: return true;
    case GroupFamily::D: return prod == 1;
  }
  return false;
}

Poly act(const SignedPermutation& g, const Poly& p) {
  int n = p.nvars();
  require(static_cast<int>(g.perm.size()) == n && static_cast<int>(g.signs.size()) == n,
          Errc::dimension_mismatch, "act: variable count mismatch");
  Poly out(n);
  for (const auto& [e, c] : p) {
    Expo b(n, 0);
    Rat coeff = c;
    for (int i = 0; i < n; ++i) {
      int img = g.perm[i];
      b[img - 1] = e[i];
      if (g.signs[img - 1] == -1 && (e[i] & 1)) coeff = -coeff;
    }
    out.add_term(b, coeff);
  }
  return out;
}

std::vector<SignedPermutation> group_generators(const ReflectionGroup& g) {
  std::vector<SignedPermutation> gens;
  for (int i = 1; i < g.n; ++i) {
    SignedPermutation s = sp_identity(g.n);
    std::swap(s.perm[i - 1], s.perm[i]);
    gens.push_back(s);
  }
  if (g.family == GroupFamily::B) {
    SignedPermutation s = sp_identity(g.n);
    s.signs[g.n - 1] = -1;
    gens.push_back(s);
  } else if (g.family == GroupFamily::D) {
    SignedPermutation s = sp_identity(g.n);
    s.signs[g.n - 2] = -1;
    s.signs[g.n - 1] = -1;
    gens.push_back(s);
  }
  return gens;
}

std::vector<SignedPermutation> group_elements(const ReflectionGroup& g) {
  require(g.order <= 50000, Errc::budget_exceeded,
          "group_elements: order " + g.order.get_str() + " exceeds the enumeration budget");
  std::vector<SignedPermutation> out;
  std::vector<int> perm(g.n);
  std::iota(perm.begin(), perm.end(), 1);
  do {
    if (g.family == GroupFamily::S) {
      out.push_back({perm, std::vector<int>(g.n, 1)});
      continue;
    }
    for (unsigned mask = 0; mask < (1u << g.n); ++mask) {
      std::vector<int> signs(g.n, 1);
      int prod = 1;
      for (int i = 0; i < g.n; ++i)
        if (mask & (1u << i)) {
          signs[i] = -1;
          prod = -prod;
        }
      if (g.family == GroupFamily::D && prod != 1) continue;
      out.push_back({perm, signs});
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

SignedPermutation random_element(const ReflectionGroup& g, std::mt19937& rng) {
  SignedPermutation s = sp_identity(g.n);
  std::shuffle(s.perm.begin(), s.perm.end(), rng);
  if (g.family != GroupFamily::S) {
    int prod = 1;
    int limit = g.family == GroupFamily::D ? g.n - 1 : g.n;
    for (int i = 0; i < limit; ++i) {
      if (rng() & 1) {
        s.signs[i] = -1;
        prod = -prod;
      }
    }
    if (g.family == GroupFamily::D && prod == -1) s.signs[g.n - 1] = -1;
  }
  return s;
}

bool is_invariant(const ReflectionGroup& g, const Poly& p) {
  require(p.nvars() == g.n, Errc::dimension_mismatch, "is_invariant");
  for (const auto& gen : group_generators(g))
    if (!(act(gen, p) == p)) return false;
  return true;
}

namespace {

// Does the monomial survive averaging over the group's sign patterns?
bool sign_survives(GroupFamily family, const Expo& e) {
  switch (family) {
    case GroupFamily::S: return true;
    case GroupFamily::B:
      return std::all_of(e.begin(), e.end(), [](int a) { return (a & 1) == 0; });
    case GroupFamily::D: {
      bool all_even = std::all_of(e.begin(), e.end(), [](int a) { return (a & 1) == 0; });
      bool all_odd = std::all_of(e.begin(), e.end(), [](int a) { return (a & 1) == 1; });
      return all_even || all_odd;
    }
  }
  return false;
}

}  // namespace

Poly reynolds(const ReflectionGroup& g, const Poly& p) {
  require(p.nvars() == g.n, Errc::dimension_mismatch, "reynolds");
  Poly out(g.n);
  std::map<Expo, Poly> cache;  // sorted exponent pattern -> orbit average
  for (const auto& [e, c] : p) {
    if (!sign_survives(g.family, e)) continue;
    Expo key = e;
    std::sort(key.begin(), key.end());
    auto it = cache.find(key);
    if (it == cache.end()) {
      Poly orbit(g.n);
      Expo perm = key;
      long count = 0;
      do {
        orbit.add_term(perm, 1);
        ++count;
      } while (std::next_permutation(perm.begin(), perm.end()));
      orbit = orbit * rat(1, count);
      it = cache.emplace(key, orbit).first;
    }
    out += it->second * c;
  }
  return out;
}

long long invariant_dim(const ReflectionGroup& g, int k) {
  require(k >= 0, Errc::invalid_argument, "invariant_dim: negative degree");
  require(k <= 4096, Errc::budget_exceeded, "invariant_dim: degree too large");
  std::vector<long long> ways(k + 1, 0);
  ways[0] = 1;
  for (int d : g.degrees) {
    if (d > k) continue;
    for (int j = d; j <= k; ++j) ways[j] += ways[j - d];
  }
  return ways[k];
}

namespace {

void weighted_rec(const std::vector<std::pair<int, int>>& deg_sorted, size_t pos, int rest,
                  Expo& cur, std::vector<Expo>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  if (pos >= deg_sorted.size() || deg_sorted[pos].first > rest) return;
  int d = deg_sorted[pos].first;
  int idx = deg_sorted[pos].second;
  for (int m = rest / d; m >= 0; --m) {
    cur[idx] = m;
    weighted_rec(deg_sorted, pos + 1, rest - m * d, cur, out);
  }
  cur[idx] = 0;
}

// Display order: by the multiset of degree weights (partition compared
// lexicographically, ascending), ties by exponent vector descending.
std::vector<int> weight_partition(const std::vector<int>& degrees, const Expo& e) {
  std::vector<int> parts;
  for (size_t i = 0; i < e.size(); ++i)
    for (int m = 0; m < e[i]; ++m) parts.push_back(degrees[i]);
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

}  // namespace

std::vector<Expo> weighted_exponents(const std::vector<int>& degrees, int k) {
  require(k >= 0, Errc::invalid_argument, "weighted_exponents: negative degree");
  std::vector<std::pair<int, int>> deg_sorted;
  for (size_t i = 0; i < degrees.size(); ++i) {
    require(degrees[i] > 0, Errc::invalid_argument, "weighted_exponents: degree <= 0");
    deg_sorted.push_back({degrees[i], static_cast<int>(i)});
  }
  std::sort(deg_sorted.begin(), deg_sorted.end());
  Expo cur(degrees.size(), 0);
  std::vector<Expo> out;
  weighted_rec(deg_sorted, 0, k, cur, out);
  std::sort(out.begin(), out.end(), [&degrees](const Expo& a, const Expo& b) {
    auto pa = weight_partition(degrees, a);
    auto pb = weight_partition(degrees, b);
    if (pa != pb) return pa < pb;
    return a > b;
  });
  return out;
}

FundamentalBasis fundamental_basis(const ReflectionGroup& g, BasisNaming naming) {
  FundamentalBasis fb;
  fb.group = g;
  fb.naming = naming;
  require(naming != BasisNaming::elementary_sq || g.family == GroupFamily::B,
          Errc::invalid_argument, "elementary_sq coordinates exist only for family B");
  Rat mean = rat(1, g.n);
  switch (g.family) {
    case GroupFamily::S:
      for (int k = 1; k <= g.n; ++k) {
        if (naming == BasisNaming::power_means) {
          fb.psis.push_back(power_sum(g.n, k) * mean);
          fb.names.push_back("pm" + std::to_string(k));
        } else {
          fb.psis.push_back(power_sum(g.n, k));
          fb.names.push_back("p" + std::to_string(k));
        }
      }
      break;
    case GroupFamily::B:
      for (int k = 1; k <= g.n; ++k) {
        if (naming == BasisNaming::elementary_sq) {
          fb.psis.push_back(elementary_symmetric(g.n, k).substitute_squares());
          fb.names.push_back("e" + std::to_string(k) + "sq");
        } else if (naming == BasisNaming::power_means) {
          fb.psis.push_back(power_sum(g.n, 2 * k) * mean);
          fb.names.push_back("pm" + std::to_string(2 * k));
        } else {
          fb.psis.push_back(power_sum(g.n, 2 * k));
          fb.names.push_back("p" + std::to_string(2 * k));
        }
      }
      break;
    case GroupFamily::D:
      for (int k = 1; k < g.n; ++k) {
        if (naming == BasisNaming::power_means) {
          fb.psis.push_back(power_sum(g.n, 2 * k) * mean);
          fb.names.push_back("pm" + std::to_string(2 * k));
        } else {
          fb.psis.push_back(power_sum(g.n, 2 * k));
          fb.names.push_back("p" + std::to_string(2 * k));
        }
      }
      fb.psis.push_back(elementary_symmetric(g.n, g.n));
      fb.names.push_back("e" + std::to_string(g.n));
      break;
  }
  return fb;
}

std::vector<std::pair<Expo, Poly>> invariant_monomial_basis(const ReflectionGroup& g,
                                                            const FundamentalBasis& basis,
                                                            int d) {
  require(g.n <= 16, Errc::budget_exceeded, "invariant_monomial_basis: n too large to expand");
  require(static_cast<int>(basis.psis.size()) == g.n, Errc::dimension_mismatch,
          "invariant_monomial_basis: basis size");
  std::vector<std::pair<Expo, Poly>> out;
  for (const auto& beta : weighted_exponents(g.degrees, d)) {
    Poly prod = Poly::constant(g.n, 1);
    for (int i = 0; i < g.n; ++i)
      if (beta[i] > 0) prod *= basis.psis[i].pow(beta[i]);
    out.push_back({beta, prod});
  }
  // Rank check: the expansions must be linearly independent.
  std::map<Expo, size_t, TermOrder> cols;
  for (const auto& [beta, q] : out)
    for (const auto& [e, c] : q) cols.emplace(e, cols.size());
  QMat m = qmat(out.size(), cols.size());
  for (size_t r = 0; r < out.size(); ++r)
    for (const auto& [e, c] : out[r].second) m[r][cols[e]] = c;
  require(static_cast<size_t>(qrank(m)) == out.size(), Errc::internal,
          "invariant_monomial_basis: dependent expansion set");
  return out;
}

Poly rewrite_in_fundamentals(const ReflectionGroup& g, const FundamentalBasis& basis,
                             const Poly& f) {
  require(f.nvars() == g.n, Errc::dimension_mismatch, "rewrite_in_fundamentals");
  Poly coords(g.n);
  if (f.is_zero()) return coords;
  require(f.is_homogeneous(), Errc::precondition, "rewrite_in_fundamentals: not homogeneous");
  auto cand = invariant_monomial_basis(g, basis, f.degree());
  // Solve sum_beta c_beta * expansion_beta = f exactly.
  std::map<Expo, size_t, TermOrder> rows;
  for (const auto& [e, c] : f) rows.emplace(e, rows.size());
  for (const auto& [beta, q] : cand)
    for (const auto& [e, c] : q) rows.emplace(e, rows.size());
  QMat m = qmat(rows.size(), cand.size());
  QVec rhs(rows.size(), 0);
  for (size_t j = 0; j < cand.size(); ++j)
    for (const auto& [e, c] : cand[j].second) m[rows[e]][j] = c;
  for (const auto& [e, c] : f) rhs[rows[e]] = c;
  auto sol = qsolve(m, rhs);
  require(sol.has_value(), Errc::not_invariant,
          "rewrite_in_fundamentals: polynomial is outside the invariant ring");
  for (size_t j = 0; j < cand.size(); ++j)
    if ((*sol)[j] != 0) coords.add_term(cand[j].first, (*sol)[j]);
  return coords;
}

Poly substitute_basis(const Poly& zpoly, const std::vector<Poly>& psis) {
  require(!psis.empty(), Errc::invalid_argument, "substitute_basis: empty basis");
  require(zpoly.nvars() == static_cast<int>(psis.size()), Errc::dimension_mismatch,
          "substitute_basis");
  int n = psis[0].nvars();
  Poly out(n);
  for (const auto& [e, c] : zpoly) {
    Poly prod = Poly::constant(n, c);
    for (size_t i = 0; i < psis.size(); ++i)
      if (e[i] > 0) prod *= psis[i].pow(e[i]);
    out += prod;
  }
  return out;
}

Poly elementary_symmetric(int n, int k) {
  require(n >= 1 && k >= 0 && k <= n, Errc::invalid_argument, "elementary_symmetric");
  // DP over variables: e_j(x_1..x_i) = e_j(..x_{i-1}) + x_i e_{j-1}(..x_{i-1}).
  std::vector<Poly> e(k + 1, Poly(n));
  e[0] = Poly::constant(n, 1);
  for (int i = 1; i <= n; ++i) {
    Poly xi = Poly::variable(n, i);
    for (int j = std::min(k, i); j >= 1; --j) e[j] += e[j - 1] * xi;
  }
  return e[k];
}

Poly power_sum(int n, int k) {
  require(n >= 1 && k >= 1, Errc::invalid_argument, "power_sum");
  Poly p(n);
  for (int i = 1; i <= n; ++i) {
    Expo e(n, 0);
    e[i - 1] = k;
    p.add_term(e, 1);
  }
  return p;
}

}  // namespace rsos
