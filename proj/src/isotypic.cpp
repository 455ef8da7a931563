#include "reflsos/isotypic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <utility>

#include "reflsos/linalg.hpp"

namespace rsos {

namespace {

std::map<Expo, int> support_index(const std::vector<Poly>& ps) {
  std::map<Expo, int> pos;
  for (const auto& p : ps)
    for (const auto& [e, c] : p) pos.emplace(e, 0);
  int idx = 0;
  for (auto& [e, i] : pos) i = idx++;
  return pos;
}

QVec coord_vector(const std::map<Expo, int>& pos, const Poly& p) {
  QVec v(pos.size(), Rat(0));
  for (const auto& [e, c] : p) v[pos.at(e)] = c;
  return v;
}

// Greedy independent sublist of the orbit of p, p itself first.
std::vector<Poly> orbit_basis(const ReflectionGroup& g, const Poly& p, long long dim) {
  std::vector<Poly> cands{p};
  for (const auto& e : group_elements(g)) cands.push_back(act(e, p));
  auto pos = support_index(cands);
  QMat rows;
  std::vector<Poly> basis;
  for (const auto& c : cands) {
    if (static_cast<long long>(basis.size()) == dim) break;
    rows.push_back(coord_vector(pos, c));
    if (qrank(rows) == static_cast<int>(rows.size()))
      basis.push_back(c);
    else
      rows.pop_back();
  }
  require(static_cast<long long>(basis.size()) == dim, Errc::internal,
          "orbit span has unexpected dimension");
  return basis;
}

// Column j holds the coordinates of act(sigma, basis[j]) in basis.
QMat rep_matrix(const std::vector<Poly>& basis, const SignedPermutation& sigma) {
  int m = static_cast<int>(basis.size());
  std::vector<Poly> all = basis;
  for (const auto& b : basis) all.push_back(act(sigma, b));
  auto pos = support_index(all);
  QMat mat = qmat(static_cast<int>(pos.size()), m);
  for (int j = 0; j < m; ++j) {
    QVec col = coord_vector(pos, basis[j]);
    for (size_t r = 0; r < col.size(); ++r) mat[r][j] = col[r];
  }
  QMat rep = qmat(m, m);
  for (int j = 0; j < m; ++j) {
    auto sol = qsolve(mat, coord_vector(pos, all[basis.size() + j]));
    require(sol.has_value(), Errc::internal, "group image left the module span");
    for (int i = 0; i < m; ++i) rep[i][j] = (*sol)[i];
  }
  return rep;
}

// Carries `target`'s module onto the model vector of `model`'s module: the
// space of equivariant maps between the two is one-dimensional, so the image
// of `model` under any nonzero map is determined up to scale.
Poly phi_align(const ReflectionGroup& g, const Poly& model, const Poly& target, long long dim) {
  int m = static_cast<int>(dim);
  std::vector<Poly> ba = orbit_basis(g, model, dim);
  std::vector<Poly> bb = orbit_basis(g, target, dim);
  QMat sys;
  for (const auto& sigma : group_generators(g)) {
    QMat ra = rep_matrix(ba, sigma), rb = rep_matrix(bb, sigma);
    // phi * ra - rb * phi = 0, phi flattened row-major
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        QVec row(static_cast<size_t>(m) * m, Rat(0));
        for (int k = 0; k < m; ++k) {
          row[static_cast<size_t>(i) * m + k] += ra[k][j];
          row[static_cast<size_t>(k) * m + j] -= rb[i][k];
        }
        sys.push_back(std::move(row));
      }
  }
  auto ker = qkernel(sys);
  require(ker.size() == 1, Errc::internal, "equivariant alignment space must be one-dimensional");
  Poly out(bb[0].nvars());
  for (int i = 0; i < m; ++i) out += ker[0][static_cast<size_t>(i) * m] * bb[i];
  require(!out.is_zero(), Errc::internal, "alignment produced the zero vector");
  return out.primitive();
}

mpz_class forms_dim(int n, int d) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n + d - 1), static_cast<unsigned long>(d));
  return r;
}

}  // namespace

long long multiplicity(const ReflectionGroup& g, const IsotypeLabel& label, int d) {
  require(d >= 0, Errc::invalid_argument, "degree must be nonnegative");
  std::vector<int> h = h_table(g, label, d);
  long long q = 0;
  for (int k = 0; k <= d; ++k)
    if (h[k]) q += invariant_dim(g, d - k) * h[k];
  return q;
}

Decomposition symmetry_adapted_basis(const ReflectionGroup& g, int d, BasisNaming naming) {
  require(d >= 0, Errc::invalid_argument, "degree must be nonnegative");
  require(d <= 16, Errc::budget_exceeded, "degree beyond the supported range");
  Decomposition dec;
  dec.group = g;
  dec.basis = fundamental_basis(g, naming);
  dec.d = d;
  dec.form_dim = forms_dim(g.n, d);

  Catalog cat = coinvariant_catalog(g, d, DegreeParity::any);
  mpz_class covered = 0;
  for (size_t li = 0; li < cat.labels.size(); ++li) {
    const auto& items = cat.items[li];
    if (items.empty()) continue;
    IsotypeBlock blk;
    blk.label = cat.labels[li];
    blk.dim = isotype_dim(g, blk.label);
    const MultiPartition& anchor = items.front().label.shape;
    std::vector<Poly> gens;
    gens.reserve(items.size());
    for (const auto& it : items)
      gens.push_back(it.label.shape == anchor
                         ? it.poly
                         : phi_align(g, items.front().poly, it.poly, blk.dim));
    for (size_t ii = 0; ii < items.size(); ++ii) {
      int k = items[ii].degree;
      for (const auto& [expo, mono] : invariant_monomial_basis(g, dec.basis, d - k)) {
        blk.generators.push_back(mono * gens[ii]);
        blk.gen_degree.push_back(k);
        blk.gen_monomial.push_back(expo);
      }
    }
    if (blk.generators.empty()) continue;
    covered += mpz_class(static_cast<long>(blk.size())) * mpz_class(static_cast<long>(blk.dim));
    dec.h.push_back(cat.h[li]);
    dec.blocks.push_back(std::move(blk));
  }
  require(covered == dec.form_dim, Errc::internal,
          "block multiplicities fail the dimension count of the form space");
  return dec;
}

void block_matrices(Decomposition& dec) {
  for (auto& blk : dec.blocks) {
    int q = static_cast<int>(blk.size());
    blk.B.assign(q, std::vector<Poly>(q));
    for (int v = 0; v < q; ++v)
      for (int u = v; u < q; ++u) {
        Poly avg = reynolds(dec.group, blk.generators[v] * blk.generators[u]);
        Poly z = rewrite_in_fundamentals(dec.group, dec.basis, avg);
        blk.B[v][u] = z;
        blk.B[u][v] = std::move(z);
      }
  }
  for (size_t i = 0; i < dec.blocks.size(); ++i)
    for (size_t j = i + 1; j < dec.blocks.size(); ++j) {
      Poly cross = reynolds(dec.group, dec.blocks[i].generators.front() *
                                           dec.blocks[j].generators.front());
      require(cross.is_zero(), Errc::internal,
              "product across distinct blocks failed to average to zero");
    }
}

StabilizationReport stabilization_report(GroupFamily family, const MultiPartition& seed,
                                         int d, int n_from, int n_to) {
  require(n_from >= 1 && n_to >= n_from, Errc::invalid_argument, "bad rank range");
  require(n_to <= 64, Errc::budget_exceeded, "rank beyond the supported range");
  require(d >= 0 && d <= 16, Errc::budget_exceeded, "degree beyond the supported range");
  require(seed.size() == n_from, Errc::dimension_mismatch,
          "seed shape must have n_from boxes");
  require(family != GroupFamily::S || seed.second.empty(), Errc::invalid_argument,
          "symmetric-family shapes have an empty second component");

  StabilizationReport rep;
  rep.family = family;
  rep.d = d;

  MultiPartition shape = seed;
  for (int n = n_from; n <= n_to; ++n) {
    ReflectionGroup g = make_group(family, n);
    IsotypeLabel lab{shape, 0};
    if (family == GroupFamily::D && shape.first == shape.second) lab.dn_sign = 1;
    StabilizationRow row;
    row.n = n;
    row.shape = shape;
    row.h = h_table(g, lab, d);
    row.q = multiplicity(g, lab, d);
    rep.rows.push_back(std::move(row));
    if (n < n_to) shape = shape_plus_one(shape);
  }

  rep.stable = true;
  std::ostringstream note;
  for (size_t i = 1; i < rep.rows.size(); ++i) {
    const auto& a = rep.rows[i - 1];
    const auto& b = rep.rows[i];
    if (a.q == b.q && a.h == b.h) continue;
    if (rep.stable) {
      rep.stable = false;
      note << "multiplicity table changes from n=" << a.n << " to n=" << b.n
           << " (q " << a.q << " -> " << b.q;
      for (int k = 0; k <= d; ++k)
        if (a.h[k] != b.h[k])
          note << ", h_" << k << " " << a.h[k] << " -> " << b.h[k];
      note << ")";
    }
  }

  rep.rho_audit_ok = true;
  shape = seed;
  for (int n = n_from; n < n_to && rep.rho_audit_ok; ++n) {
    MultiPartition next = shape_plus_one(shape);
    for (int k = 0; k <= d && rep.rho_audit_ok; ++k) {
      for (const auto& t : pi_set(shape, k)) {
        StandardTableau img = rho_step(t);
        if (!(img.shape == next) || !in_pi_set(img, k + 1) || charge(img) != charge(t)) {
          rep.rho_audit_ok = false;
          if (!note.str().empty()) note << "; ";
          note << "rank-raising map failed at n=" << n << ", prefix " << k;
          break;
        }
      }
    }
    shape = next;
  }
  rep.note = note.str();
  return rep;
}

std::string stabilization_str(const StabilizationReport& rep) {
  std::ostringstream os;
  for (const auto& row : rep.rows) {
    os << family_str(rep.family) << row.n << " shape=" << shape_str(row.shape)
       << " q=" << row.q << " h=[";
    for (size_t k = 0; k < row.h.size(); ++k) os << (k ? "," : "") << row.h[k];
    os << "]\n";
  }
  os << (rep.stable ? "stable" : "not stable")
     << (rep.rho_audit_ok ? ", tableau map checked" : ", tableau map FAILED");
  if (!rep.note.empty()) os << ": " << rep.note;
  os << "\n";
  return os.str();
}

}  // namespace rsos
