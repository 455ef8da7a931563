#include "reflsos/dualcone.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>

namespace rsos {

namespace {

std::map<Expo, int> index_of(const std::vector<std::pair<Expo, Poly>>& basis) {
  std::map<Expo, int> idx;
  for (size_t i = 0; i < basis.size(); ++i) idx[basis[i].first] = static_cast<int>(i);
  return idx;
}

// Value of a functional on an invariant form given in fundamental coordinates.
// Every term of zp must be a basis exponent of the functional's degree.
Rat zvalue(const Poly& zp, const std::map<Expo, int>& idx, const QVec& vals) {
  Rat s = 0;
  for (const auto& [e, c] : zp) {
    auto it = idx.find(e);
    require(it != idx.end(), Errc::dimension_mismatch,
            "invariant coordinate outside the functional's degree");
    s += c * vals[it->second];
  }
  return s;
}

double zvalue_f(const Poly& zp, const std::map<Expo, int>& idx,
                const std::vector<double>& vals) {
  double s = 0;
  for (const auto& [e, c] : zp) {
    auto it = idx.find(e);
    require(it != idx.end(), Errc::dimension_mismatch,
            "invariant coordinate outside the functional's degree");
    s += c.get_d() * vals[it->second];
  }
  return s;
}

void check_pair(const MomentFunctional& ell, const Decomposition& dec) {
  require(ell.group.family == dec.group.family && ell.group.n == dec.group.n,
          Errc::dimension_mismatch, "functional and decomposition belong to different groups");
  require(ell.naming == dec.basis.naming, Errc::dimension_mismatch,
          "functional and decomposition use different fundamental coordinates");
  require(ell.two_d == 2 * dec.d, Errc::dimension_mismatch,
          "functional degree is not twice the decomposition degree");
}

const std::vector<std::vector<Poly>>& block_B(const IsotypeBlock& blk) {
  require(!blk.B.empty(), Errc::precondition,
          "block matrices missing: run block_matrices on the decomposition first");
  return blk.B;
}

std::vector<Expo> degree_monomials(int n, int d) {
  return weighted_exponents(std::vector<int>(n, 1), d);
}

// Incremental exact row space; insert returns true when the row is new.
struct RowSpace {
  std::vector<QVec> rows;  // reduced, each scaled to leading entry 1
  std::vector<int> lead;

  bool insert(QVec v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      if (v[lead[r]] == 0) continue;
      Rat c = v[lead[r]];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= c * rows[r][j];
    }
    int piv = -1;
    for (size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) { piv = static_cast<int>(j); break; }
    if (piv < 0) return false;
    Rat inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    rows.push_back(std::move(v));
    lead.push_back(piv);
    return true;
  }

  int dim() const { return static_cast<int>(rows.size()); }
};

QVec form_coords(const Poly& f, const std::map<Expo, int>& pos, int len) {
  QVec v(len, Rat(0));
  for (const auto& [e, c] : f) {
    auto it = pos.find(e);
    require(it != pos.end(), Errc::dimension_mismatch, "form outside the coordinate space");
    v[it->second] = c;
  }
  return v;
}

QVec zrow(const Poly& zp, const std::map<Expo, int>& idx, int len) {
  return form_coords(zp, idx, len);
}

// R(g_a x^m) per block slot and degree-d monomial, as coordinate rows on the
// degree-2d invariant basis. Shared by the float extremality path; computed
// once per (group, degree, naming).
using ProductTensor = std::vector<std::vector<std::vector<std::vector<double>>>>;

const ProductTensor& product_tensor(const Decomposition& dec) {
  static std::map<std::string, ProductTensor> cache;
  std::ostringstream key;
  key << family_str(dec.group.family) << dec.group.n << ":" << dec.d << ":"
      << static_cast<int>(dec.basis.naming);
  auto it = cache.find(key.str());
  if (it != cache.end()) return it->second;

  auto basis = invariant_monomial_basis(dec.group, dec.basis, 2 * dec.d);
  auto idx = index_of(basis);
  int len = static_cast<int>(basis.size());
  auto mons = degree_monomials(dec.group.n, dec.d);

  ProductTensor t;
  for (const auto& blk : dec.blocks) {
    std::vector<std::vector<std::vector<double>>> per_slot;
    for (const auto& gen : blk.generators) {
      std::vector<std::vector<double>> per_mon;
      for (const auto& m : mons) {
        Poly prod = reynolds(dec.group, gen * Poly::monomial(dec.group.n, m));
        std::vector<double> row(len, 0.0);
        if (!prod.is_zero()) {
          Poly z = rewrite_in_fundamentals(dec.group, dec.basis, prod);
          for (const auto& [e, c] : z) {
            auto jt = idx.find(e);
            require(jt != idx.end(), Errc::internal, "product outside the invariant basis");
            row[jt->second] = c.get_d();
          }
        }
        per_mon.push_back(std::move(row));
      }
      per_slot.push_back(std::move(per_mon));
    }
    t.push_back(std::move(per_slot));
  }
  return cache.emplace(key.str(), std::move(t)).first->second;
}

std::string fmt(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

}  // namespace

MomentFunctional from_point(const ReflectionGroup& g, const Point& a, int two_d,
                            BasisNaming naming) {
  require(static_cast<int>(a.size()) == g.n, Errc::dimension_mismatch,
          "point has the wrong number of coordinates");
  require(two_d >= 2 && two_d % 2 == 0, Errc::invalid_argument, "even degree >= 2 required");
  MomentFunctional ell;
  ell.group = g;
  ell.two_d = two_d;
  ell.naming = naming;
  ell.basis = invariant_monomial_basis(g, fundamental_basis(g, naming), two_d);
  for (const auto& [e, p] : ell.basis) {
    Rat v = p.evaluate(a);
    ell.values.push_back(v);
    ell.fvalues.push_back(v.get_d());
  }
  ell.exact = true;
  return ell;
}

MomentFunctional from_point(const ReflectionGroup& g, const std::vector<double>& a,
                            int two_d, BasisNaming naming) {
  require(static_cast<int>(a.size()) == g.n, Errc::dimension_mismatch,
          "point has the wrong number of coordinates");
  require(two_d >= 2 && two_d % 2 == 0, Errc::invalid_argument, "even degree >= 2 required");
  MomentFunctional ell;
  ell.group = g;
  ell.two_d = two_d;
  ell.naming = naming;
  ell.basis = invariant_monomial_basis(g, fundamental_basis(g, naming), two_d);
  for (const auto& [e, p] : ell.basis) ell.fvalues.push_back(p.evaluate(a));
  ell.exact = false;
  return ell;
}

MomentFunctional from_values(const ReflectionGroup& g, const QVec& values, int two_d,
                             BasisNaming naming) {
  require(two_d >= 2 && two_d % 2 == 0, Errc::invalid_argument, "even degree >= 2 required");
  MomentFunctional ell;
  ell.group = g;
  ell.two_d = two_d;
  ell.naming = naming;
  ell.basis = invariant_monomial_basis(g, fundamental_basis(g, naming), two_d);
  require(values.size() == ell.basis.size(), Errc::dimension_mismatch,
          "one value per invariant basis element required");
  ell.values = values;
  for (const auto& v : values) ell.fvalues.push_back(v.get_d());
  ell.exact = true;
  return ell;
}

Rat apply(const MomentFunctional& ell, const Poly& f) {
  require(ell.exact, Errc::precondition, "exact functional required");
  if (f.is_zero()) return 0;
  Poly z = rewrite_in_fundamentals(ell.group, fundamental_basis(ell.group, ell.naming), f);
  return zvalue(z, index_of(ell.basis), ell.values);
}

double apply_f(const MomentFunctional& ell, const Poly& f) {
  if (f.is_zero()) return 0;
  Poly z = rewrite_in_fundamentals(ell.group, fundamental_basis(ell.group, ell.naming), f);
  return zvalue_f(z, index_of(ell.basis), ell.fvalues);
}

std::vector<QMat> ell_blocks(const MomentFunctional& ell, const Decomposition& dec) {
  require(ell.exact, Errc::precondition, "exact functional required");
  check_pair(ell, dec);
  auto idx = index_of(ell.basis);
  std::vector<QMat> out;
  for (const auto& blk : dec.blocks) {
    const auto& B = block_B(blk);
    int s = static_cast<int>(blk.size());
    QMat m = qmat(s, s);
    for (int v = 0; v < s; ++v)
      for (int u = 0; u < s; ++u) m[v][u] = zvalue(B[v][u], idx, ell.values);
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<DMat> ell_blocks_f(const MomentFunctional& ell, const Decomposition& dec) {
  check_pair(ell, dec);
  auto idx = index_of(ell.basis);
  std::vector<DMat> out;
  for (const auto& blk : dec.blocks) {
    const auto& B = block_B(blk);
    int s = static_cast<int>(blk.size());
    DMat m(s, std::vector<double>(s, 0.0));
    for (int v = 0; v < s; ++v)
      for (int u = 0; u < s; ++u) m[v][u] = zvalue_f(B[v][u], idx, ell.fvalues);
    out.push_back(std::move(m));
  }
  return out;
}

DualMembership in_dual_cone(const MomentFunctional& ell, const Decomposition& dec) {
  DualMembership r;
  r.exact = ell.exact;
  auto fblocks = ell_blocks_f(ell, dec);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& m : fblocks) margin = std::min(margin, dsym_min_eig(m));
  r.margin = std::isfinite(margin) ? margin : 0.0;
  if (ell.exact) {
    r.inside = true;
    for (const auto& m : ell_blocks(ell, dec))
      if (!qpsd(m).psd) { r.inside = false; break; }
  } else {
    r.inside = r.margin >= -1e-9;
  }
  return r;
}

KernelModule kernel_module(const MomentFunctional& ell, const Decomposition& dec) {
  require(ell.exact, Errc::precondition, "exact functional required");
  auto ms = ell_blocks(ell, dec);
  for (size_t i = 0; i < ms.size(); ++i) {
    auto rep = qpsd(ms[i]);
    require(rep.psd, Errc::precondition,
            "functional is not in the dual cone: block " + isotype_str(dec.blocks[i].label) +
                " is not PSD (" + rep.why + ")");
  }

  KernelModule km;
  int n = dec.group.n;
  for (size_t i = 0; i < ms.size(); ++i) {
    for (auto& v : qkernel(ms[i])) {
      Poly w(n);
      for (size_t a = 0; a < v.size(); ++a)
        if (v[a] != 0) w += dec.blocks[i].generators[a] * v[a];
      km.block_kernel.push_back({static_cast<int>(i), v});
      km.generators.push_back(w.primitive());
    }
  }

  // W: all group translates of the kernel generators, reduced to a basis.
  auto mons = degree_monomials(n, dec.d);
  std::map<Expo, int> mpos;
  for (size_t i = 0; i < mons.size(); ++i) mpos[mons[i]] = static_cast<int>(i);
  RowSpace wspace;
  for (const auto& e : group_elements(dec.group)) {
    for (const auto& w : km.generators) {
      Poly moved = act(e, w);
      if (wspace.insert(form_coords(moved, mpos, static_cast<int>(mons.size()))))
        km.w_basis.push_back(std::move(moved));
    }
  }

  // W2 = span{ R(w g) : w in W, g of degree d }. Averaging absorbs the group
  // action, so the kernel generators against all degree-d monomials span it.
  auto basis2d = invariant_monomial_basis(dec.group, dec.basis, 2 * dec.d);
  auto idx = index_of(basis2d);
  int len = static_cast<int>(basis2d.size());
  RowSpace w2;
  for (const auto& w : km.generators) {
    for (const auto& m : mons) {
      Poly prod = reynolds(dec.group, w * Poly::monomial(n, m));
      if (prod.is_zero()) continue;
      Poly z = rewrite_in_fundamentals(dec.group, dec.basis, prod);
      if (w2.insert(zrow(z, idx, len))) km.w2_basis.push_back(z.primitive());
    }
  }
  km.w2_dim = w2.dim();
  return km;
}

ExtremalityReport extremality_check(const MomentFunctional& ell, const Decomposition& dec) {
  check_pair(ell, dec);
  ExtremalityReport rep;
  rep.ambient = static_cast<long long>(ell.basis.size());
  if (ell.exact) {
    rep.exact = true;
    rep.w2_dim = kernel_module(ell, dec).w2_dim;
  } else {
    const auto& tensor = product_tensor(dec);
    auto fblocks = ell_blocks_f(ell, dec);
    std::vector<std::vector<double>> rows;
    for (size_t i = 0; i < fblocks.size(); ++i) {
      int s = static_cast<int>(fblocks[i].size());
      Eigen::MatrixXd m(s, s);
      for (int v = 0; v < s; ++v)
        for (int u = 0; u < s; ++u) m(v, u) = fblocks[i][v][u];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
      double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
      for (int k = 0; k < s; ++k) {
        if (std::abs(eig.eigenvalues()(k)) > 1e-8 * scale) continue;
        size_t nmons = tensor[i][0].size();
        size_t len = tensor[i][0][0].size();
        for (size_t mi = 0; mi < nmons; ++mi) {
          std::vector<double> row(len, 0.0);
          for (int a = 0; a < s; ++a) {
            double va = eig.eigenvectors()(a, k);
            for (size_t j = 0; j < len; ++j) row[j] += va * tensor[i][a][mi][j];
          }
          rows.push_back(std::move(row));
        }
      }
    }
    rep.w2_dim = rows.empty() ? 0 : drank(rows, 1e-8);
  }
  rep.codim = rep.ambient - rep.w2_dim;
  rep.extremal = (rep.w2_dim == rep.ambient - 1);
  return rep;
}

namespace {

// One positive rational scale between two 1x1 block polynomials.
std::optional<Rat> scalar_match(const Poly& ref, const Poly& lib) {
  if (ref.is_zero() || lib.is_zero()) return std::nullopt;
  Rat c = ref.leading_coeff() / lib.leading_coeff();
  if (!(c > 0)) return std::nullopt;
  if (!(lib * c == ref)) return std::nullopt;
  return c;
}

const IsotypeBlock* find_block(const Decomposition& dec, const IsotypeLabel& label) {
  for (const auto& blk : dec.blocks)
    if (blk.label == label) return &blk;
  return nullptr;
}

struct RefBlock {
  IsotypeLabel label;
  std::vector<Poly> gens;                 // X coordinates, degree d
  std::vector<std::vector<Poly>> matrix;  // X coordinates, degree 2d
};

// Verifies ref.matrix == c * M^T B M with M the exact change of basis from
// the library slot generators to ref.gens and c a single positive rational,
// or for one-slot blocks ref.matrix == c * B directly (a different vector of
// the same irreducible spans the slot, so no basis change exists there).
std::string congruence_check(const Decomposition& dec, const RefBlock& ref,
                             std::string* scales) {
  std::string name = isotype_str(ref.label);
  const IsotypeBlock* blk = find_block(dec, ref.label);
  if (!blk) return "no library block labeled " + name;
  int s = static_cast<int>(blk->size());
  if (s != static_cast<int>(ref.gens.size()))
    return name + ": slot count " + std::to_string(s) + " != " +
           std::to_string(ref.gens.size());

  // Reference matrix in fundamental coordinates.
  std::vector<std::vector<Poly>> pz(s, std::vector<Poly>(s));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      pz[a][b] = rewrite_in_fundamentals(dec.group, dec.basis, ref.matrix[a][b]);

  Rat c;
  if (s == 1) {
    auto r = scalar_match(pz[0][0], block_B(*blk)[0][0]);
    if (!r) return name + ": no positive scale onto the library block";
    c = *r;
  } else {
    auto mons = degree_monomials(dec.group.n, dec.d);
    std::map<Expo, int> mpos;
    for (size_t i = 0; i < mons.size(); ++i) mpos[mons[i]] = static_cast<int>(i);
    QMat a = qmat(static_cast<int>(mons.size()), s);
    for (int v = 0; v < s; ++v) {
      QVec col = form_coords(blk->generators[v], mpos, static_cast<int>(mons.size()));
      for (size_t r = 0; r < col.size(); ++r) a[r][v] = col[r];
    }
    QMat m = qmat(s, s);
    for (int j = 0; j < s; ++j) {
      auto sol = qsolve(a, form_coords(ref.gens[j], mpos, static_cast<int>(mons.size())));
      if (!sol) return name + ": generator " + std::to_string(j) +
                       " is outside the library block's span";
      for (int v = 0; v < s; ++v) m[v][j] = (*sol)[v];
    }
    if (qrank(m) != s) return name + ": change of basis is singular";

    // M^T B M entrywise, exactly.
    std::vector<std::vector<Poly>> conj(s, std::vector<Poly>(s, Poly(dec.group.n)));
    for (int aa = 0; aa < s; ++aa)
      for (int bb = 0; bb < s; ++bb) {
        Poly acc = Poly(dec.group.n);
        for (int v = 0; v < s; ++v)
          for (int u = 0; u < s; ++u) {
            Rat coef = m[v][aa] * m[u][bb];
            if (coef != 0) acc += block_B(*blk)[v][u] * coef;
          }
        conj[aa][bb] = acc;
      }
    bool have = false;
    for (int aa = 0; aa < s && !have; ++aa)
      for (int bb = 0; bb < s && !have; ++bb)
        if (!conj[aa][bb].is_zero() && !pz[aa][bb].is_zero()) {
          c = pz[aa][bb].leading_coeff() / conj[aa][bb].leading_coeff();
          have = true;
        }
    if (!have || !(c > 0)) return name + ": no positive scale after the basis change";
    for (int aa = 0; aa < s; ++aa)
      for (int bb = 0; bb < s; ++bb)
        if (!(conj[aa][bb] * c == pz[aa][bb]))
          return name + ": entry (" + std::to_string(aa) + "," + std::to_string(bb) +
                 ") differs from the congruent library block";
  }
  if (scales) {
    if (!scales->empty()) *scales += ", ";
    *scales += name + " scale " + c.get_str();
  }
  return "";
}

FamilyReport family_b3(int samples) {
  require(samples >= 1, Errc::invalid_argument, "at least one sample per family required");
  FamilyReport rep;
  rep.which = FamilyCase::b3_octics;
  rep.n = 3;
  rep.samples = samples;

  ReflectionGroup g = make_group(GroupFamily::B, 3);
  Decomposition dec = symmetry_adapted_basis(g, 4, BasisNaming::elementary_sq);
  block_matrices(dec);

  Poly e1 = elementary_symmetric(3, 1).substitute_squares();
  Poly e2 = elementary_symmetric(3, 2).substitute_squares();
  Poly e3 = elementary_symmetric(3, 3).substitute_squares();
  Poly x1 = Poly::variable(3, 1), x2 = Poly::variable(3, 2), x3 = Poly::variable(3, 3);
  Rat th = rat(1, 3);

  std::vector<RefBlock> refs;
  refs.push_back({{{{3}, {}}, 0},
                  {e1 * e1, e2},
                  {{e1.pow(4), e1.pow(2) * e2}, {e1.pow(2) * e2, e2 * e2}}});
  refs.push_back({{{{2, 1}, {}}, 0},
                  {e1 * (x3 * x3 - x1 * x1), x2 * x2 * x3 * x3 - x1 * x1 * x2 * x2},
                  {{e1.pow(4) * rat(2, 3) - e1.pow(2) * e2 * Rat(2),
                    e1.pow(2) * e2 * th - e1 * e3 * Rat(3)},
                   {e1.pow(2) * e2 * th - e1 * e3 * Rat(3),
                    e2 * e2 * rat(2, 3) - e1 * e3 * Rat(2)}}});
  refs.push_back({{{{1}, {2}}, 0},
                  {e1 * x2 * x3, x1 * x1 * x2 * x3},
                  {{e1.pow(2) * e2 * th, e1 * e3}, {e1 * e3, e1 * e3 * th}}});
  refs.push_back({{{{1}, {1, 1}}, 0},
                  {(x3 * x3 - x2 * x2) * x2 * x3},
                  {{e1 * e3 + e1.pow(2) * e2 * th - e2 * e2 * rat(4, 3)}}});

  std::string scales;
  for (const auto& ref : refs) {
    std::string err = congruence_check(dec, ref, &scales);
    if (!err.empty()) rep.failures.push_back(err);
  }

  rep.min_margin = std::numeric_limits<double>::infinity();
  auto grid_point = [&](const std::string& tag, const std::vector<double>& pt, bool interior) {
    MomentFunctional ell = from_point(g, pt, 8, BasisNaming::elementary_sq);
    DualMembership mem = in_dual_cone(ell, dec);
    rep.min_margin = std::min(rep.min_margin, mem.margin);
    rep.sample_margins.push_back({tag, mem.margin});
    if (mem.margin < -1e-9)
      rep.failures.push_back(tag + ": membership margin " + fmt(mem.margin));
    if (interior) {
      ExtremalityReport ext = extremality_check(ell, dec);
      ++rep.extremal_checked;
      if (!ext.extremal)
        rep.failures.push_back(tag + ": kernel dimension " + std::to_string(ext.w2_dim) +
                               " instead of " + std::to_string(ext.ambient - 1));
    }
  };

  for (int i = 0; i < samples; ++i) {
    double a = 0.5 + (i + 0.5) / samples * 0.5;
    grid_point("a=" + fmt(a), {a, std::sqrt(1.0 - a * a), 0.0}, true);
  }
  for (int i = 0; i < samples; ++i) {
    double b = (i + 0.5) / samples;
    double c = std::sqrt((1.0 - b * b) / 2.0);
    grid_point("b=" + fmt(b), {b, c, c}, true);
  }

  // Rational members of the two families admit exact checks.
  auto anchor = [&](const std::string& tag, const Point& pt, bool check_extremal) {
    MomentFunctional ell = from_point(g, pt, 8, BasisNaming::elementary_sq);
    DualMembership mem = in_dual_cone(ell, dec);
    if (!mem.inside) rep.failures.push_back(tag + ": not in the dual cone");
    if (check_extremal) {
      ExtremalityReport ext = extremality_check(ell, dec);
      ++rep.extremal_checked;
      if (!(ext.exact && ext.extremal))
        rep.failures.push_back(tag + ": exact kernel dimension " + std::to_string(ext.w2_dim) +
                               " instead of " + std::to_string(ext.ambient - 1));
    }
  };
  anchor("a=3/5 (exact)", {rat(3, 5), rat(4, 5), Rat(0)}, true);
  anchor("b=1/3 (exact)", {th, rat(2, 3), rat(2, 3)}, true);
  anchor("a=1 (exact)", {Rat(1), Rat(0), Rat(0)}, true);

  rep.pass = rep.failures.empty();
  rep.note = "four reference matrices congruent to the library blocks (" + scales +
             "); two evaluation families sampled at " + std::to_string(samples) +
             " points each; exact anchors at a=3/5, b=1/3, a=1";
  return rep;
}

FamilyReport family_d4(int samples) {
  require(samples >= 1, Errc::invalid_argument, "at least one random member required");
  FamilyReport rep;
  rep.which = FamilyCase::d4_quartics;
  rep.n = 4;
  rep.samples = samples;

  ReflectionGroup g = make_group(GroupFamily::D, 4);
  Decomposition dec = symmetry_adapted_basis(g, 2, BasisNaming::power_sums);
  block_matrices(dec);

  std::vector<Point> pts = {{Rat(1), Rat(0), Rat(0), Rat(0)},
                            {Rat(1), Rat(1), Rat(1), Rat(-1)},
                            {Rat(1), Rat(1), Rat(1), Rat(1)}};
  std::vector<MomentFunctional> evs;
  for (const auto& p : pts) evs.push_back(from_point(g, p, 4, BasisNaming::power_sums));

  rep.min_margin = std::numeric_limits<double>::infinity();
  const char* names[] = {"ev(1,0,0,0)", "ev(1,1,1,-1)", "ev(1,1,1,1)"};
  for (int i = 0; i < 3; ++i) {
    DualMembership mem = in_dual_cone(evs[i], dec);
    rep.min_margin = std::min(rep.min_margin, mem.margin);
    rep.sample_margins.push_back({names[i], mem.margin});
    if (!mem.inside) rep.failures.push_back(std::string(names[i]) + ": not in the dual cone");
    ExtremalityReport ext = extremality_check(evs[i], dec);
    ++rep.extremal_checked;
    if (!(ext.exact && ext.extremal && ext.w2_dim == 2))
      rep.failures.push_back(std::string(names[i]) + ": exact kernel dimension " +
                             std::to_string(ext.w2_dim) + " instead of 2");
  }

  // The first evaluation's kernel square span is e4 and p2^2 - p4 exactly.
  {
    KernelModule km = kernel_module(evs[0], dec);
    auto idx = index_of(evs[0].basis);
    int len = static_cast<int>(evs[0].basis.size());
    int nz = static_cast<int>(dec.basis.psis.size());
    Poly ze4(nz), zdiff(nz);
    {
      Expo e(nz, 0);
      e[3] = 1;  // e4
      ze4.add_term(e, 1);
      Expo sq(nz, 0);
      sq[0] = 2;  // p2^2
      zdiff.add_term(sq, 1);
      Expo p4(nz, 0);
      p4[1] = 1;  // p4
      zdiff.add_term(p4, -1);
    }
    RowSpace span;
    for (const auto& z : km.w2_basis) span.insert(zrow(z, idx, len));
    int wdim = span.dim();
    bool in_span = !span.insert(zrow(ze4, idx, len)) && !span.insert(zrow(zdiff, idx, len));
    if (!(wdim == 2 && in_span))
      rep.failures.push_back("ev(1,0,0,0): kernel square span differs from {e4, p2^2 - p4}");
  }

  // Boundary generators of the primal cone: exact certificates plus the
  // vanishing pattern against the three evaluations.
  Poly p2 = power_sum(4, 2), p4 = power_sum(4, 4), e4 = elementary_symmetric(4, 4);
  std::vector<Poly> gens = {p4 * Rat(4) - p2 * p2, p2 * p2 - p4 + e4 * Rat(12),
                            p2 * p2 - p4 - e4 * Rat(12)};
  const char* gnames[] = {"4p4-p2^2", "p2^2-p4+12e4", "p2^2-p4-12e4"};
  int zero_at[3][2] = {{1, 2}, {0, 1}, {0, 2}};
  int pos_at[3] = {0, 2, 1};
  for (int k = 0; k < 3; ++k) {
    SolveResult sr = solve_small(assemble_from(dec, gens[k]));
    if (!(sr.status == SolveStatus::feasible && sr.exact))
      rep.failures.push_back(std::string(gnames[k]) + ": no exact certificate (" + sr.note + ")");
    for (int t = 0; t < 2; ++t)
      if (apply(evs[zero_at[k][t]], gens[k]) != 0)
        rep.failures.push_back(std::string(gnames[k]) + ": does not vanish at " +
                               names[zero_at[k][t]]);
    if (!(apply(evs[pos_at[k]], gens[k]) > 0))
      rep.failures.push_back(std::string(gnames[k]) + ": not positive at " + names[pos_at[k]]);
  }

  // Random conic combinations recover their coordinates in the moment system.
  int len = static_cast<int>(evs[0].basis.size());
  QMat vmat = qmat(len, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < len; ++i) vmat[i][j] = evs[j].values[i];
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(0, 120), den(1, 16);
  for (int t = 0; t < samples; ++t) {
    QVec lam = {rat(num(rng), den(rng)), rat(num(rng), den(rng)), rat(num(rng), den(rng))};
    QVec vals(len, Rat(0));
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < len; ++i) vals[i] += lam[j] * vmat[i][j];
    MomentFunctional ell = from_values(g, vals, 4, BasisNaming::power_sums);
    DualMembership mem = in_dual_cone(ell, dec);
    rep.min_margin = std::min(rep.min_margin, mem.margin);
    if (!mem.inside) {
      rep.failures.push_back("random member " + std::to_string(t) + ": not in the dual cone");
      continue;
    }
    auto sol = qsolve(vmat, vals);
    if (!sol) {
      rep.failures.push_back("random member " + std::to_string(t) + ": no decomposition");
      continue;
    }
    double resid = 0;
    for (int i = 0; i < len; ++i) {
      double s = 0;
      for (int j = 0; j < 3; ++j) s += (*sol)[j].get_d() * vmat[i][j].get_d();
      resid = std::max(resid, std::abs(s - vals[i].get_d()));
    }
    bool nonneg = (*sol)[0] >= 0 && (*sol)[1] >= 0 && (*sol)[2] >= 0;
    if (!nonneg || *sol != lam || resid >= 1e-10)
      rep.failures.push_back("random member " + std::to_string(t) +
                             ": decomposition is wrong or negative");
  }

  rep.pass = rep.failures.empty();
  rep.note = "three evaluations extremal with kernel dimension 2; boundary generators "
             "certified exactly; " + std::to_string(samples) +
             " random members decomposed with nonnegative coordinates";
  return rep;
}

FamilyReport family_bn(int n) {
  FamilyReport rep;
  rep.which = FamilyCase::bn_octics;
  rep.n = n;
  rep.samples = 0;
  rep.min_margin = std::numeric_limits<double>::quiet_NaN();
  BnOcticsReport mb = verify_bn_octics(n);
  rep.pass = mb.ok();
  if (!mb.products_match_table) rep.failures.push_back("combinatorial route differs from the tables");
  if (!mb.poly_route_match) rep.failures.push_back("polynomial route differs from the tables");
  if (!mb.library_match) rep.failures.push_back("library blocks not congruent to the tables");
  for (const auto& d : mb.detail) rep.failures.push_back(d);
  rep.note = bn_octics_str(mb);
  return rep;
}

}  // namespace

FamilyReport verify_family(FamilyCase which, int samples, int n) {
  switch (which) {
    case FamilyCase::b3_octics:
      return family_b3(samples);
    case FamilyCase::d4_quartics:
      return family_d4(samples);
    case FamilyCase::bn_octics:
      require(n >= 4, Errc::invalid_argument, "rank n >= 4 required");
      return family_bn(n);
  }
  fail(Errc::invalid_argument, "unknown family case");
}

std::string family_str(const FamilyReport& rep) {
  std::ostringstream os;
  switch (rep.which) {
    case FamilyCase::b3_octics: os << "b3-octics"; break;
    case FamilyCase::d4_quartics: os << "d4-quartics"; break;
    case FamilyCase::bn_octics: os << "bn-octics n=" << rep.n; break;
  }
  os << ": " << (rep.pass ? "pass" : "FAIL");
  if (rep.samples > 0) os << ", " << rep.samples << " samples";
  if (rep.extremal_checked > 0) os << ", " << rep.extremal_checked << " extremality checks";
  if (std::isfinite(rep.min_margin)) os << ", least margin " << fmt(rep.min_margin);
  for (const auto& f : rep.failures) os << "\n  " << f;
  if (!rep.note.empty()) os << "\n  " << rep.note;
  return os.str();
}

namespace {

// f with the first xcount variables set to x and the rest set to y.
Poly collapse_two(const Poly& f, int xcount) {
  Poly r(2);
  for (const auto& [e, c] : f) {
    int a = 0, b = 0;
    for (size_t i = 0; i < e.size(); ++i) (static_cast<int>(i) < xcount ? a : b) += e[i];
    r.add_term({a, b}, c);
  }
  return r;
}

// f(0, x, y) on three variables.
Poly collapse_zero(const Poly& f) {
  Poly r(2);
  for (const auto& [e, c] : f) {
    if (e[0] != 0) continue;
    r.add_term({e[1], e[2]}, c);
  }
  return r;
}

// Nonnegativity of a bivariate form of even degree 2k. Monomial factors come
// off first: r = x^bx y^by s with s nonzero on both axes, and odd bx or by
// flips the sign across that axis. Then a rational witness scan on the affine
// lines, then Gram feasibility for s (exact or numeric at 1e-9); stripping
// the factors keeps generic targets away from the cone's boundary.
bool bivariate_nonneg(const Poly& r, int k) {
  if (r.is_zero()) return true;
  require(r.is_homogeneous() && r.degree() == 2 * k, Errc::dimension_mismatch,
          "restriction is not a form of the expected degree");
  int bx = 2 * k, by = 2 * k;
  for (const auto& [e, c] : r) {
    bx = std::min(bx, e[0]);
    by = std::min(by, e[1]);
  }
  if (bx % 2 || by % 2) return false;
  Poly s(2);
  for (const auto& [e, c] : r) s.add_term({e[0] - bx, e[1] - by}, c);
  int m = k - (bx + by) / 2;  // s is a form of degree 2m
  if (m == 0) return s.coeff({0, 0}) > 0;

  std::vector<Rat> ts;
  ts.push_back(Rat(0));
  for (int j = 1; j <= 20; ++j) {
    ts.push_back(rat(j, 4));
    ts.push_back(rat(-j, 4));
  }
  for (int j : {8, 16, 32, 64}) {
    ts.push_back(Rat(j));
    ts.push_back(Rat(-j));
  }
  for (const auto& t : ts) {
    if (s.evaluate(Point{Rat(1), t}) < 0) return false;
    if (s.evaluate(Point{t, Rat(1)}) < 0) return false;
  }

  GramShape shape;
  int q = m + 1;
  shape.bsize = {q};
  shape.offset = {0};
  shape.vars = q * (q + 1) / 2;
  shape.constraints = qmat(2 * m + 1, shape.vars);
  shape.target = QVec(2 * m + 1, Rat(0));
  int col = 0;
  for (int u = 0; u < q; ++u)
    for (int v = u; v < q; ++v) {
      // G[u][v] multiplies x^(2m-u-v) y^(u+v), twice off the diagonal.
      shape.constraints[u + v][col] = (u == v) ? 1 : 2;
      ++col;
    }
  for (int t = 0; t <= 2 * m; ++t) {
    Expo e = {2 * m - t, t};
    shape.target[t] = s.coeff(e);
  }
  SolveResult res = solve_gram(shape);
  if (res.status == SolveStatus::feasible) return true;
  fail(Errc::verification_failed,
       "bivariate restriction neither certified nor separated: " + res.note);
}

}  // namespace

bool testset_nonneg(const ReflectionGroup& g, const Poly& f, TestsetMode mode) {
  require(f.nvars() == g.n, Errc::dimension_mismatch, "form has the wrong variable count");
  if (f.is_zero()) return true;
  require(is_invariant(g, f), Errc::not_invariant, "test sets apply to invariant forms only");
  if (mode == TestsetMode::symmetric_quartic) {
    require(g.family == GroupFamily::S, Errc::invalid_argument,
            "symmetric_quartic pairs with the S family");
    require(g.n >= 2, Errc::invalid_argument, "at least two variables required");
    require(f.is_homogeneous() && f.degree() == 4, Errc::invalid_argument,
            "quartic form required");
    for (int j = 1; 2 * j <= g.n; ++j)
      if (!bivariate_nonneg(collapse_two(f, g.n - j), 2)) return false;
    return true;
  }
  require(g.n == 3 && (g.family == GroupFamily::B || g.family == GroupFamily::D),
          Errc::invalid_argument, "b3_octic pairs with B or D in rank 3");
  require(f.is_homogeneous() && f.degree() == 8, Errc::invalid_argument, "octic form required");
  if (!bivariate_nonneg(collapse_two(f, 2), 4)) return false;
  return bivariate_nonneg(collapse_zero(f), 4);
}

}  // namespace rsos
