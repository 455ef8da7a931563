#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <vector>

#include "reflsos/linalg.hpp"
#include "reflsos/specht.hpp"

using namespace rsos;

namespace {

StandardTableau single(const Partition& shape, const std::vector<std::vector<int>>& rows) {
  return StandardTableau{{shape, {}}, rows, {}};
}

StandardTableau pair_tab(const MultiPartition& shape, const std::vector<std::vector<int>>& rows,
                         const std::vector<std::vector<int>>& rows2) {
  return StandardTableau{shape, rows, rows2};
}

SignedPermutation plain_perm(const std::vector<int>& images) {
  return SignedPermutation{images, std::vector<int>(images.size(), 1)};
}

// Coefficient rows of the polys over their joint monomial support.
QMat coefficient_matrix(const std::vector<Poly>& polys) {
  std::set<Expo> support;
  for (const auto& p : polys)
    for (const auto& [e, c] : p) support.insert(e);
  std::map<Expo, int> col;
  for (const auto& e : support) col.emplace(e, static_cast<int>(col.size()));
  QMat m = qmat(static_cast<int>(polys.size()), static_cast<int>(support.size()));
  for (size_t i = 0; i < polys.size(); ++i)
    for (const auto& [e, c] : polys[i]) m[i][col.at(e)] = c;
  return m;
}

std::vector<Poly> orbit(const ReflectionGroup& g, const Poly& p) {
  std::vector<Poly> out;
  for (const auto& el : group_elements(g)) out.push_back(act(el, p));
  return out;
}

int span_rank(const std::vector<Poly>& polys) { return qrank(coefficient_matrix(polys)); }

Poly random_monomial(std::mt19937& rng, int n, int deg) {
  Expo e(n, 0);
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int i = 0; i < deg; ++i) e[pick(rng)] += 1;
  return Poly::monomial(n, e, 1);
}

const IsotypeLabel* find_label(const Catalog& cat, const IsotypeLabel& want, size_t* idx) {
  for (size_t i = 0; i < cat.labels.size(); ++i)
    if (cat.labels[i] == want) {
      *idx = i;
      return &cat.labels[i];
    }
  return nullptr;
}

}  // namespace

TEST_CASE("young symmetrizer worked example") {
  MultiPartition shape{{2, 1}, {1}};
  StandardTableau t = pair_tab(shape, {{1, 2}, {4}}, {{3}});
  StandardTableau s = pair_tab(shape, {{1, 4}, {2}}, {{3}});

  Poly xts = monomial_XTS(t, s);
  CHECK(xts == Poly::parse(4, "x2^2*x3*x4"));

  Poly f = epsilon_apply(t, xts);
  Poly expected =
      Poly::parse(4, "x1^2*x3*x4 + x2^2*x3*x4 - x1*x2^2*x3 - x1*x3*x4^2") * Rat(1, 3);
  CHECK(f == expected);

  // The operator itself: (1/3)(id - (14) + (12) - (14)(12)) on arbitrary input.
  std::mt19937 rng(5);
  SignedPermutation p14 = plain_perm({4, 2, 3, 1});
  SignedPermutation p12 = plain_perm({2, 1, 3, 4});
  SignedPermutation p14_12 = sp_compose(p14, p12);
  for (int trial = 0; trial < 12; ++trial) {
    Poly p = random_monomial(rng, 4, trial % 5);
    Poly want = (p - act(p14, p) + act(p12, p) - act(p14_12, p)) * Rat(1, 3);
    CHECK(epsilon_apply(t, p) == want);
  }
}

TEST_CASE("young symmetrizer basics") {
  auto s3 = make_group(GroupFamily::S, 3);
  StandardTableau row = single({3}, {{1, 2, 3}});
  std::mt19937 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Poly p = random_monomial(rng, 3, 1 + trial % 4);
    CHECK(epsilon_apply(row, p) == reynolds(s3, p));
  }

  // Idempotence fixes the f/|shape|! scale, also across pair components.
  std::vector<StandardTableau> tabs = {
      single({2, 1}, {{1, 3}, {2}}),
      single({2, 2}, {{1, 2}, {3, 4}}),
      pair_tab({{2, 1}, {1}}, {{1, 2}, {4}}, {{3}}),
      pair_tab({{2}, {2}}, {{1, 2}}, {{3, 4}}),
  };
  for (const auto& t : tabs) {
    int n = t.size();
    for (int trial = 0; trial < 8; ++trial) {
      Poly p = random_monomial(rng, n, 2 + trial % 3);
      Poly once = epsilon_apply(t, p);
      CHECK(epsilon_apply(t, once) == once);
    }
  }

  CHECK_THROWS_AS(epsilon_apply(single({2}, {{2, 1}}), Poly::variable(2, 1)), Error);
  CHECK_THROWS_AS(epsilon_apply(single({2, 1}, {{1, 2}, {3}}), Poly::variable(2, 1)), Error);
}

TEST_CASE("tableau monomial goldens") {
  // Zero charge: exponents all vanish.
  StandardTableau t0 = single({3}, {{1, 2, 3}});
  CHECK(monomial_XTS(t0, t0) == Poly::constant(3, 1));

  // Column shape: staircase exponents, checked against the word/index data.
  for (int n = 2; n <= 5; ++n) {
    Partition col(n, 1);
    std::vector<std::vector<int>> rows;
    for (int i = 1; i <= n; ++i) rows.push_back({i});
    StandardTableau t = single(col, rows);
    Poly m = monomial_XTS(t, t);
    std::vector<int> w = word(t);
    std::vector<int> idx = index_and_charge(w).index;
    Expo e(n, 0);
    for (int j = 0; j < n; ++j) e[w[j] - 1] = idx[j];
    CHECK(m == Poly::monomial(n, e));
    CHECK(m.degree() == n * (n - 1) / 2);
  }

  CHECK_THROWS_AS(monomial_XTS(t0, single({2, 1}, {{1, 2}, {3}})), Error);
}

TEST_CASE("signed family generator goldens") {
  auto b3 = make_group(GroupFamily::B, 3);
  MultiPartition hook21{{2, 1}, {}};
  StandardTableau t21 = pair_tab(hook21, {{1, 2}, {3}}, {});
  StandardTableau s_deg2 = t21;
  StandardTableau s_deg4 = pair_tab(hook21, {{1, 3}, {2}}, {});

  auto f2 = higher_specht(b3, {hook21, t21, s_deg2, 0});
  CHECK(f2.degree == 2);
  CHECK(f2.poly == Poly::parse(3, "x1^2 - x3^2"));

  auto f4 = higher_specht(b3, {hook21, t21, s_deg4, 0});
  CHECK(f4.degree == 4);
  CHECK(f4.poly == Poly::parse(3, "x1^2*x2^2 - x2^2*x3^2"));

  MultiPartition p12{{1}, {2}};
  StandardTableau t12 = pair_tab(p12, {{1}}, {{2, 3}});
  auto g2 = higher_specht(b3, {p12, t12, t12, 0});
  CHECK(g2.degree == 2);
  CHECK(g2.poly == Poly::parse(3, "x2*x3"));
  StandardTableau s12b = pair_tab(p12, {{3}}, {{1, 2}});
  auto g4 = higher_specht(b3, {p12, t12, s12b, 0});
  CHECK(g4.degree == 4);
  CHECK(g4.poly == Poly::parse(3, "x1^2*x2*x3"));

  MultiPartition p111{{1}, {1, 1}};
  StandardTableau t111 = pair_tab(p111, {{1}}, {{2}, {3}});
  auto h4 = higher_specht(b3, {p111, t111, t111, 0});
  CHECK(h4.degree == 4);
  CHECK(h4.poly == Poly::parse(3, "x2^3*x3 - x2*x3^3"));

  StandardTableau row3 = single({3}, {{1, 2, 3}});
  auto triv = higher_specht(b3, {{{3}, {}}, row3, row3, 0});
  CHECK(triv.degree == 0);
  CHECK(triv.poly == Poly::constant(3, 1));
}

TEST_CASE("d-family split generators") {
  auto d4 = make_group(GroupFamily::D, 4);
  MultiPartition p22{{2}, {2}};
  StandardTableau t = pair_tab(p22, {{1, 2}}, {{3, 4}});
  auto plus = higher_specht(d4, {p22, t, t, 1});
  auto minus = higher_specht(d4, {p22, t, t, -1});
  CHECK(plus.degree == 2);
  CHECK(minus.degree == 2);
  CHECK(plus.poly == Poly::parse(4, "x1*x2 + x3*x4"));
  CHECK(minus.poly == Poly::parse(4, "x1*x2 - x3*x4"));

  // Label consistency errors.
  CHECK_THROWS_AS(higher_specht(d4, {p22, t, t, 0}), Error);
  auto b4 = make_group(GroupFamily::B, 4);
  CHECK_THROWS_AS(higher_specht(b4, {p22, t, t, 1}), Error);
  auto s4 = make_group(GroupFamily::S, 4);
  CHECK_THROWS_AS(higher_specht(s4, {p22, t, t, 0}), Error);
  MultiPartition p31{{3, 1}, {}};
  StandardTableau t31 = pair_tab(p31, {{1, 2, 3}, {4}}, {});
  CHECK_THROWS_AS(higher_specht(d4, {p31, t31, t, 0}), Error);

  auto d2 = higher_specht(d4, {p31, t31, t31, 0});
  CHECK(d2.degree == 2);
  CHECK(d2.poly == Poly::parse(4, "x1^2 - x4^2"));
}

TEST_CASE("generator normalization invariants") {
  auto b3 = make_group(GroupFamily::B, 3);
  Catalog cat = coinvariant_catalog(b3, 9);
  for (size_t i = 0; i < cat.labels.size(); ++i)
    for (const auto& item : cat.items[i]) {
      CHECK(item.poly.is_homogeneous());
      CHECK(item.poly.degree() == item.degree);
      CHECK(item.poly.content() == 1);
      CHECK(item.poly.leading_coeff() > 0);
      CHECK(item.label.shape == item.label.T.shape);
    }
}

TEST_CASE("h tables") {
  auto b3 = make_group(GroupFamily::B, 3);
  CHECK(h_table(b3, {{{2, 1}, {}}, 0}, 9) ==
        std::vector<int>{0, 0, 1, 0, 1, 0, 0, 0, 0, 0});
  CHECK(h_table(b3, {{{2}, {1}}, 0}, 9) ==
        std::vector<int>{0, 1, 0, 1, 0, 1, 0, 0, 0, 0});
  CHECK(h_table(b3, {{{}, {3}}, 0}, 9) ==
        std::vector<int>{0, 0, 0, 1, 0, 0, 0, 0, 0, 0});

  auto d3 = make_group(GroupFamily::D, 3);
  CHECK(h_table(d3, {{{3}, {}}, 0}, 6) == std::vector<int>{1, 0, 0, 0, 0, 0, 0});
  CHECK(h_table(d3, {{{2}, {1}}, 0}, 6) == std::vector<int>{0, 1, 1, 1, 0, 0, 0});

  auto d4 = make_group(GroupFamily::D, 4);
  CHECK(h_table(d4, {{{2}, {2}}, 1}, 6) == std::vector<int>{0, 0, 1, 0, 1, 0, 1});
  CHECK(h_table(d4, {{{2}, {2}}, -1}, 6) == std::vector<int>{0, 0, 1, 0, 1, 0, 1});

  // Trivial label of any family starts the table with 1.
  for (auto fam : {GroupFamily::S, GroupFamily::B, GroupFamily::D}) {
    auto g = make_group(fam, 4);
    IsotypeLabel triv{{{4}, {}}, 0};
    auto h = h_table(g, triv, 4);
    CHECK(h[0] == 1);
  }
}

TEST_CASE("catalog matches the degree-four harmonics generator list") {
  auto b3 = make_group(GroupFamily::B, 3);
  Catalog cat = coinvariant_catalog(b3, 4, DegreeParity::even);
  CHECK(cat.total_items() == 6);
  std::vector<Poly> polys;
  for (const auto& group : cat.items)
    for (const auto& item : group) polys.push_back(item.poly);
  std::vector<std::string> expect = {
      "1",
      "x1^2 - x3^2",
      "x1^2*x2^2 - x2^2*x3^2",
      "x2*x3",
      "x1^2*x2*x3",
      "x2^3*x3 - x2*x3^3",
  };
  REQUIRE(polys.size() == expect.size());
  std::multiset<std::string> got, want;
  for (const auto& p : polys) got.insert(p.str());
  for (const auto& s : expect) want.insert(Poly::parse(3, s).str());
  CHECK(got == want);

  size_t idx = 0;
  REQUIRE(find_label(cat, {{{3}, {}}, 0}, &idx) != nullptr);
  CHECK(cat.h[idx] == std::vector<int>{1, 0, 0, 0, 0});
  REQUIRE(find_label(cat, {{{2, 1}, {}}, 0}, &idx) != nullptr);
  CHECK(cat.h[idx] == std::vector<int>{0, 0, 1, 0, 1});
  REQUIRE(find_label(cat, {{{1}, {2}}, 0}, &idx) != nullptr);
  CHECK(cat.h[idx] == std::vector<int>{0, 0, 1, 0, 1});
  REQUIRE(find_label(cat, {{{1}, {1, 1}}, 0}, &idx) != nullptr);
  CHECK(cat.h[idx] == std::vector<int>{0, 0, 0, 0, 1});
}

TEST_CASE("catalog for the d4 quadratic harmonics") {
  auto d4 = make_group(GroupFamily::D, 4);
  Catalog cat = coinvariant_catalog(d4, 2, DegreeParity::even);
  CHECK(cat.total_items() == 4);
  std::vector<std::string> got;
  for (const auto& group : cat.items)
    for (const auto& item : group) got.push_back(item.poly.str());
  std::vector<std::string> want = {
      Poly::constant(4, 1).str(),
      Poly::parse(4, "x1^2 - x4^2").str(),
      Poly::parse(4, "x1*x2 + x3*x4").str(),
      Poly::parse(4, "x1*x2 - x3*x4").str(),
  };
  CHECK(got == want);

  // Degree-zero catalog is the lone constant.
  Catalog c0 = coinvariant_catalog(d4, 0);
  CHECK(c0.total_items() == 1);
  CHECK(c0.items[0][0].poly == Poly::constant(4, 1));
  CHECK(c0.h[0][0] == 1);
}

TEST_CASE("catalog carries the regular representation") {
  for (const char* name : {"S:3", "S:4", "B:2", "B:3", "D:3", "D:4"}) {
    auto g = parse_group(name);
    int top = reflection_count(g);
    Catalog cat = coinvariant_catalog(g, top);
    mpz_class total = 0;
    for (size_t i = 0; i < cat.labels.size(); ++i) {
      long long cnt = 0;
      for (int k = 0; k <= top; ++k) cnt += cat.h[i][k];
      CHECK(cnt == static_cast<long long>(cat.items[i].size()));
      total += mpz_class(static_cast<long>(cnt)) *
               mpz_class(static_cast<long>(isotype_dim(g, cat.labels[i])));
      CHECK(h_table(g, cat.labels[i], top) == cat.h[i]);
    }
    CHECK(total == g.order);
  }
  CHECK_THROWS_AS(coinvariant_catalog(make_group(GroupFamily::B, 7), 4), Error);
}

TEST_CASE("label bookkeeping") {
  auto d4 = make_group(GroupFamily::D, 4);
  auto labels = isotype_labels(d4);
  mpz_class sq = 0;
  for (const auto& l : labels) {
    long long d = isotype_dim(d4, l);
    sq += mpz_class(static_cast<long>(d)) * mpz_class(static_cast<long>(d));
  }
  CHECK(sq == d4.order);

  auto d3 = make_group(GroupFamily::D, 3);
  sq = 0;
  for (const auto& l : isotype_labels(d3)) {
    long long d = isotype_dim(d3, l);
    sq += mpz_class(static_cast<long>(d)) * mpz_class(static_cast<long>(d));
  }
  CHECK(sq == d3.order);

  auto b3 = make_group(GroupFamily::B, 3);
  sq = 0;
  for (const auto& l : isotype_labels(b3)) {
    long long d = isotype_dim(b3, l);
    sq += mpz_class(static_cast<long>(d)) * mpz_class(static_cast<long>(d));
  }
  CHECK(sq == b3.order);

  CHECK(isotype_str(IsotypeLabel{{{2}, {2}}, 1}) == "[(2),(2)]+");
  CHECK(isotype_str(IsotypeLabel{{{2, 1}, {}}, 0}) == "(2,1)");
}

TEST_CASE("generated modules have the block dimension") {
  struct Probe {
    const char* group;
    IsotypeLabel label;
  };
  std::vector<Probe> probes = {
      {"S:3", {{{2, 1}, {}}, 0}},
      {"S:4", {{{2, 2}, {}}, 0}},
      {"B:2", {{{1}, {1}}, 0}},
      {"B:3", {{{2}, {1}}, 0}},
      {"B:3", {{{1}, {1, 1}}, 0}},
      {"D:3", {{{2}, {1}}, 0}},
      {"D:4", {{{2}, {2}}, 1}},
      {"D:4", {{{2}, {2}}, -1}},
      {"D:4", {{{3}, {1}}, 0}},
  };
  for (const auto& probe : probes) {
    auto g = parse_group(probe.group);
    Catalog cat = coinvariant_catalog(g, reflection_count(g));
    size_t idx = 0;
    REQUIRE(find_label(cat, probe.label, &idx) != nullptr);
    for (const auto& item : cat.items[idx])
      CHECK(span_rank(orbit(g, item.poly)) == isotype_dim(g, probe.label));
  }
}

TEST_CASE("d-family split modules are disjoint and swapped by an odd element") {
  auto d4 = make_group(GroupFamily::D, 4);
  MultiPartition p22{{2}, {2}};
  StandardTableau t = pair_tab(p22, {{1, 2}}, {{3, 4}});
  Poly fp = higher_specht(d4, {p22, t, t, 1}).poly;
  Poly fm = higher_specht(d4, {p22, t, t, -1}).poly;

  std::vector<Poly> op = orbit(d4, fp), om = orbit(d4, fm);
  int rp = span_rank(op), rm = span_rank(om);
  CHECK(rp == 3);
  CHECK(rm == 3);
  std::vector<Poly> both = op;
  both.insert(both.end(), om.begin(), om.end());
  CHECK(span_rank(both) == rp + rm);

  // One sign flip lies in B_4 but not D_4 and exchanges the two halves.
  SignedPermutation flip{{1, 2, 3, 4}, {1, 1, 1, -1}};
  CHECK(!sp_in_group(d4, flip));
  std::vector<Poly> mapped;
  for (const auto& q : op) mapped.push_back(act(flip, q));
  std::vector<Poly> mixed = om;
  mixed.insert(mixed.end(), mapped.begin(), mapped.end());
  CHECK(span_rank(mixed) == rm);
}

TEST_CASE("same-label generators intertwine") {
  struct Probe {
    const char* group;
    MultiPartition shape;
    int dn_sign;
  };
  std::vector<Probe> probes = {
      {"S:3", {{2, 1}, {}}, 0},
      {"B:3", {{1}, {2}}, 0},
      {"B:3", {{2}, {1}}, 0},
      {"D:4", {{2}, {2}}, 1},
  };
  std::mt19937 rng(17);
  for (const auto& probe : probes) {
    auto g = parse_group(probe.group);
    auto syt = enumerate_syt(probe.shape);
    const StandardTableau& t0 = syt.front();
    std::vector<StandardTableau> pick;
    for (const auto& s : syt) {
      if (g.family == GroupFamily::D) {
        int d1 = generator_degree_signed(s);
        int d2 = generator_degree_signed(swap_components(s));
        if (d1 > d2) continue;
      }
      pick.push_back(s);
      if (pick.size() == 2) break;
    }
    REQUIRE(pick.size() == 2);
    Poly f1 = higher_specht(g, {probe.shape, t0, pick[0], probe.dn_sign}).poly;
    Poly f2 = higher_specht(g, {probe.shape, t0, pick[1], probe.dn_sign}).poly;

    // Greedily pick group elements whose images of f1 are independent.
    auto elements = group_elements(g);
    std::vector<Poly> basis1, basis2;
    for (const auto& el : elements) {
      std::vector<Poly> trial = basis1;
      trial.push_back(act(el, f1));
      if (span_rank(trial) > static_cast<int>(basis1.size())) {
        basis1 = trial;
        basis2.push_back(act(el, f2));
      }
    }
    for (int trial = 0; trial < 10; ++trial) {
      auto el = random_element(g, rng);
      Poly g1 = act(el, f1);
      std::vector<Poly> stacked = basis1;
      stacked.push_back(g1);
      QMat rows = coefficient_matrix(stacked);
      // Solve x^T m = last row over the shared support.
      QMat at = qmat(static_cast<int>(rows[0].size()), static_cast<int>(basis1.size()));
      QVec b(rows[0].size());
      for (size_t c = 0; c < rows[0].size(); ++c) {
        for (size_t r = 0; r < basis1.size(); ++r) at[c][r] = rows[r][c];
        b[c] = rows.back()[c];
      }
      auto x = qsolve(at, b);
      REQUIRE(x.has_value());
      Poly lhs(f1.nvars());
      for (size_t j = 0; j < basis2.size(); ++j) lhs += basis2[j] * (*x)[j];
      CHECK(lhs == act(el, f2));
    }
  }
}
