#include "reflsos/specht.hpp"

#include <algorithm>
#include <map>

#include "reflsos/error.hpp"

namespace rsos {

namespace {

// Enumeration position order of enumerate_multipartitions: second-component
// size ascending, components reverse-lexicographic (std::vector's operator>
// on weakly decreasing parts).
bool enumerates_before(const MultiPartition& a, const MultiPartition& b) {
  int sa = partition_sum(a.second), sb = partition_sum(b.second);
  if (sa != sb) return sa < sb;
  if (a.first != b.first) return a.first > b.first;
  return a.second > b.second;
}

Partition row_shape(const std::vector<std::vector<int>>& rows) {
  Partition p;
  for (const auto& r : rows) p.push_back(static_cast<int>(r.size()));
  return p;
}

std::vector<std::vector<int>> column_groups(const std::vector<std::vector<int>>& rows) {
  std::vector<std::vector<int>> cols;
  size_t width = rows.empty() ? 0 : rows[0].size();
  for (size_t c = 0; c < width; ++c) {
    std::vector<int> col;
    for (const auto& r : rows)
      if (c < r.size()) col.push_back(r[c]);
    cols.push_back(std::move(col));
  }
  return cols;
}

struct LetterPerm {
  std::vector<int> perm;  // full 1..n image vector
  int sign = 1;
};

int arrangement_sign(const std::vector<int>& img) {
  int inv = 0;
  for (size_t i = 0; i < img.size(); ++i)
    for (size_t j = i + 1; j < img.size(); ++j)
      if (img[i] > img[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

// Cartesian product over the groups of all permutations of each group's
// letters, as full permutation vectors with parity signs.
std::vector<LetterPerm> stabilizer_perms(const std::vector<std::vector<int>>& groups, int n) {
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i + 1;
  std::vector<LetterPerm> out{{id, 1}};
  for (const auto& grp : groups) {
    if (grp.size() < 2) continue;
    std::vector<int> sorted = grp;
    std::sort(sorted.begin(), sorted.end());
    std::vector<LetterPerm> next;
    std::vector<int> img = sorted;
    do {
      int s = arrangement_sign(img);
      for (const auto& base : out) {
        LetterPerm e = base;
        for (size_t i = 0; i < sorted.size(); ++i) e.perm[sorted[i] - 1] = img[i];
        e.sign *= s;
        next.push_back(std::move(e));
      }
    } while (std::next_permutation(img.begin(), img.end()));
    out = std::move(next);
  }
  return out;
}

Poly apply_component(const std::vector<std::vector<int>>& rows, const Poly& p) {
  int n = p.nvars();
  std::vector<int> plus_signs(n, 1);
  Poly q(n);
  for (const auto& tau : stabilizer_perms(rows, n))
    q += act(SignedPermutation{tau.perm, plus_signs}, p);
  Poly r(n);
  for (const auto& sigma : stabilizer_perms(column_groups(rows), n)) {
    Poly t = act(SignedPermutation{sigma.perm, plus_signs}, q);
    if (sigma.sign < 0)
      r -= t;
    else
      r += t;
  }
  long long f = static_cast<long long>(enumerate_syt(row_shape(rows)).size());
  mpz_class fact;
  int m = 0;
  for (const auto& row : rows) m += static_cast<int>(row.size());
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(m));
  return r * (Rat(static_cast<long>(f)) / Rat(fact));
}

int max_letter(const StandardTableau& t) {
  int m = 0;
  for (const auto& r : t.rows)
    for (int v : r) m = std::max(m, v);
  for (const auto& r : t.rows2)
    for (int v : r) m = std::max(m, v);
  return m;
}

Poly component_product(int nvars, const std::vector<std::vector<int>>& rows) {
  Expo e(nvars, 0);
  for (const auto& r : rows)
    for (int v : r) e[v - 1] = 1;
  return Poly::monomial(nvars, e);
}

// Generator polynomial before normalization, one tableau pair, no D combining.
Poly raw_generator(GroupFamily family, const StandardTableau& t, const StandardTableau& s) {
  Poly f = epsilon_apply(t, monomial_XTS(t, s));
  if (family == GroupFamily::S) return f;
  return f.substitute_squares() * component_product(f.nvars(), t.rows2);
}

bool parity_match(DegreeParity parity, int k) {
  switch (parity) {
    case DegreeParity::any: return true;
    case DegreeParity::even: return k % 2 == 0;
    case DegreeParity::odd: return k % 2 == 1;
  }
  return false;
}

void check_label_shape(const ReflectionGroup& g, const MultiPartition& shape, int dn_sign) {
  require(is_partition(shape.first) && is_partition(shape.second), Errc::invalid_argument,
          "shape components must be partitions");
  require(shape.size() == g.n, Errc::invalid_argument, "shape size must equal the rank");
  if (g.family == GroupFamily::S)
    require(shape.second.empty(), Errc::invalid_argument,
            "symmetric-family shapes have one component");
  bool split = g.family == GroupFamily::D && shape.first == shape.second;
  if (split)
    require(dn_sign == 1 || dn_sign == -1, Errc::invalid_argument,
            "equal-pair D labels need dn_sign +1 or -1");
  else
    require(dn_sign == 0, Errc::invalid_argument, "dn_sign only applies to equal D pairs");
}

int generator_degree(GroupFamily family, const StandardTableau& s) {
  return family == GroupFamily::S ? generator_degree_sym(s) : generator_degree_signed(s);
}

// D family: a tableau is kept when its generator degree is below that of its
// component swap. The two degrees always differ by exactly n.
bool d_keeps(const ReflectionGroup& g, const StandardTableau& s) {
  int d1 = generator_degree_signed(s);
  int d2 = generator_degree_signed(swap_components(s));
  require(d1 - d2 == g.n || d2 - d1 == g.n, Errc::internal,
          "swap-pair degrees must differ by n");
  return d1 < d2;
}

}  // namespace

std::string isotype_str(const IsotypeLabel& l) {
  std::string s = shape_str(l.shape);
  if (l.dn_sign > 0) s += "+";
  if (l.dn_sign < 0) s += "-";
  return s;
}

std::vector<IsotypeLabel> isotype_labels(const ReflectionGroup& g) {
  std::vector<IsotypeLabel> out;
  if (g.family == GroupFamily::S) {
    for (const auto& p : enumerate_partitions(g.n)) out.push_back({{p, {}}, 0});
    return out;
  }
  for (const auto& mp : enumerate_multipartitions(g.n)) {
    if (g.family == GroupFamily::B) {
      out.push_back({mp, 0});
      continue;
    }
    if (mp.first == mp.second) {
      out.push_back({mp, 1});
      out.push_back({mp, -1});
    } else if (enumerates_before(mp, MultiPartition{mp.second, mp.first})) {
      out.push_back({mp, 0});
    }
  }
  return out;
}

long long isotype_dim(const ReflectionGroup& g, const IsotypeLabel& l) {
  check_label_shape(g, l.shape, l.dn_sign);
  long long f = static_cast<long long>(enumerate_syt(l.shape).size());
  return l.dn_sign == 0 ? f : f / 2;
}

Poly epsilon_apply(const StandardTableau& t, const Poly& p) {
  require(is_standard(t), Errc::invalid_argument, "tableau must be standard");
  require(max_letter(t) <= p.nvars(), Errc::dimension_mismatch,
          "tableau letters exceed the variable count");
  Poly cur = p;
  if (!t.rows.empty()) cur = apply_component(t.rows, cur);
  if (!t.rows2.empty()) cur = apply_component(t.rows2, cur);
  return cur;
}

Poly monomial_XTS(const StandardTableau& t, const StandardTableau& s) {
  require(t.shape == s.shape, Errc::invalid_argument, "tableaux must share a shape");
  require(is_standard(t) && is_standard(s), Errc::invalid_argument, "tableaux must be standard");
  std::vector<int> wt = word(t);
  std::vector<int> idx = index_and_charge(word(s)).index;
  Expo e(t.size(), 0);
  for (size_t j = 0; j < wt.size(); ++j) e[wt[j] - 1] = idx[j];
  return Poly::monomial(t.size(), e);
}

HigherSpecht higher_specht(const ReflectionGroup& g, const SpechtLabel& label) {
  check_label_shape(g, label.shape, label.dn_sign);
  require(label.T.shape == label.shape && label.S.shape == label.shape, Errc::invalid_argument,
          "T and S must have the label's shape");
  require(is_standard(label.T) && is_standard(label.S), Errc::invalid_argument,
          "T and S must be standard");

  Poly poly = raw_generator(g.family, label.T, label.S);
  if (label.dn_sign != 0) {
    Poly mirror = raw_generator(g.family, swap_components(label.T), label.S);
    poly = label.dn_sign > 0 ? poly + mirror : poly - mirror;
  }
  int degree = generator_degree(g.family, label.S);
  require(!poly.is_zero(), Errc::internal, "generator vanished");
  require(poly.is_homogeneous() && poly.degree() == degree, Errc::internal,
          "generator degree mismatch");
  return HigherSpecht{label, poly.primitive(), degree};
}

std::vector<int> h_table(const ReflectionGroup& g, const IsotypeLabel& label, int kmax) {
  check_label_shape(g, label.shape, label.dn_sign);
  require(kmax >= 0, Errc::invalid_argument, "kmax must be nonnegative");
  std::vector<int> h(static_cast<size_t>(kmax) + 1, 0);
  auto tally = [&](const StandardTableau& s) {
    int k = generator_degree(g.family, s);
    if (g.family == GroupFamily::D && !d_keeps(g, s)) return;
    if (k <= kmax) ++h[k];
  };
  for (const auto& s : enumerate_syt(label.shape)) tally(s);
  if (g.family == GroupFamily::D && label.shape.first != label.shape.second) {
    MultiPartition mirror{label.shape.second, label.shape.first};
    for (const auto& s : enumerate_syt(mirror)) tally(s);
  }
  return h;
}

long long Catalog::total_items() const {
  long long t = 0;
  for (const auto& v : items) t += static_cast<long long>(v.size());
  return t;
}

Catalog coinvariant_catalog(const ReflectionGroup& g, int max_degree, DegreeParity parity) {
  require(max_degree >= 0, Errc::invalid_argument, "max_degree must be nonnegative");
  require(g.order <= 100000, Errc::budget_exceeded, "group order beyond catalog budget");

  Catalog cat;
  cat.group = g;
  cat.max_degree = max_degree;
  cat.parity = parity;
  cat.labels = isotype_labels(g);

  for (const auto& label : cat.labels) {
    std::vector<HigherSpecht> items;
    auto emit_shape = [&](const MultiPartition& shape) {
      std::vector<StandardTableau> syt = enumerate_syt(shape);
      const StandardTableau& t0 = syt.front();
      for (const auto& s : syt) {
        int k = generator_degree(g.family, s);
        if (k > max_degree || !parity_match(parity, k)) continue;
        if (g.family == GroupFamily::D && !d_keeps(g, s)) continue;
        items.push_back(higher_specht(g, SpechtLabel{shape, t0, s, label.dn_sign}));
      }
    };
    emit_shape(label.shape);
    if (g.family == GroupFamily::D && label.shape.first != label.shape.second)
      emit_shape(MultiPartition{label.shape.second, label.shape.first});
    std::stable_sort(items.begin(), items.end(),
                     [](const HigherSpecht& a, const HigherSpecht& b) { return a.degree < b.degree; });
    std::vector<int> h(static_cast<size_t>(max_degree) + 1, 0);
    for (const auto& it : items) ++h[it.degree];
    cat.items.push_back(std::move(items));
    cat.h.push_back(std::move(h));
  }
  return cat;
}

}  // namespace rsos
