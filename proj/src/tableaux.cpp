#include "reflsos/tableaux.hpp"

#include <algorithm>
#include <sstream>

namespace rsos {

int partition_sum(const Partition& p) {
  int s = 0;
  for (int x : p) s += x;
  return s;
}

bool is_partition(const Partition& p) {
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0) return false;
    if (i > 0 && p[i] > p[i - 1]) return false;
  }
  return true;
}

int StandardTableau::size() const {
  int s = 0;
  for (const auto& r : rows) s += static_cast<int>(r.size());
  for (const auto& r : rows2) s += static_cast<int>(r.size());
  return s;
}

namespace {

void partitions_rec(int rest, int maxpart, Partition& cur, std::vector<Partition>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_rec(rest - p, p, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n) {
  require(n >= 0, Errc::invalid_argument, "enumerate_partitions: n < 0");
  std::vector<Partition> out;
  Partition cur;
  partitions_rec(n, std::max(n, 1), cur, out);
  return out;
}

std::vector<MultiPartition> enumerate_multipartitions(int n) {
  require(n >= 0, Errc::invalid_argument, "enumerate_multipartitions: n < 0");
  std::vector<MultiPartition> out;
  for (int m = 0; m <= n; ++m)
    for (const auto& lam : enumerate_partitions(n - m))
      for (const auto& mu : enumerate_partitions(m)) out.push_back({lam, mu});
  return out;
}

bool is_standard(const StandardTableau& t) {
  const int n = t.size();
  // Shape agreement.
  auto check_comp = [](const std::vector<std::vector<int>>& rows, const Partition& shape) {
    if (rows.size() != shape.size()) return false;
    for (size_t i = 0; i < rows.size(); ++i)
      if (static_cast<int>(rows[i].size()) != shape[i]) return false;
    return true;
  };
  if (!check_comp(t.rows, t.shape.first) || !check_comp(t.rows2, t.shape.second)) return false;
  // Entries 1..n each once.
  std::vector<int> seen(n + 1, 0);
  for (const auto* comp : {&t.rows, &t.rows2})
    for (const auto& r : *comp)
      for (int v : r) {
        if (v < 1 || v > n || seen[v]) return false;
        seen[v] = 1;
      }
  // Rows and columns increase within each component.
  for (const auto* comp : {&t.rows, &t.rows2}) {
    const auto& rows = *comp;
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < rows[i].size(); ++j) {
        if (j > 0 && rows[i][j] <= rows[i][j - 1]) return false;
        if (i > 0 && j < rows[i - 1].size() && rows[i][j] <= rows[i - 1][j]) return false;
      }
  }
  return true;
}

namespace {

std::vector<int> reading_word(const StandardTableau& t) {
  std::vector<int> w;
  for (const auto& r : t.rows) w.insert(w.end(), r.begin(), r.end());
  for (const auto& r : t.rows2) w.insert(w.end(), r.begin(), r.end());
  return w;
}

// Backtracking fill: place 1..n into corner-available cells.
void syt_rec(const MultiPartition& shape, int v, int n, StandardTableau& cur,
             std::vector<StandardTableau>& out) {
  if (v > n) {
    out.push_back(cur);
    return;
  }
  auto try_component = [&](std::vector<std::vector<int>>& rows, const Partition& sh) {
    for (size_t i = 0; i < sh.size(); ++i) {
      size_t filled = rows[i].size();
      if (static_cast<int>(filled) >= sh[i]) continue;
      if (i > 0 && rows[i - 1].size() <= filled) continue;  // cell above not filled yet
      rows[i].push_back(v);
      syt_rec(shape, v + 1, n, cur, out);
      rows[i].pop_back();
    }
  };
  try_component(cur.rows, shape.first);
  try_component(cur.rows2, shape.second);
}

}  // namespace

std::vector<StandardTableau> enumerate_syt(const MultiPartition& shape) {
  require(is_partition(shape.first) && is_partition(shape.second), Errc::invalid_argument,
          "enumerate_syt: malformed shape");
  int n = shape.size();
  StandardTableau cur;
  cur.shape = shape;
  cur.rows.assign(shape.first.size(), {});
  cur.rows2.assign(shape.second.size(), {});
  std::vector<StandardTableau> out;
  syt_rec(shape, 1, n, cur, out);
  std::sort(out.begin(), out.end(), [](const StandardTableau& a, const StandardTableau& b) {
    return reading_word(a) < reading_word(b);
  });
  return out;
}

std::vector<StandardTableau> enumerate_syt(const Partition& shape) {
  return enumerate_syt(MultiPartition{shape, {}});
}

std::vector<int> word(const StandardTableau& t) {
  std::vector<int> w;
  auto comp_word = [&w](const std::vector<std::vector<int>>& rows) {
    size_t ncols = rows.empty() ? 0 : rows[0].size();
    for (size_t c = 0; c < ncols; ++c) {
      // Column c bottom to top.
      for (int r = static_cast<int>(rows.size()) - 1; r >= 0; --r)
        if (c < rows[r].size()) w.push_back(rows[r][c]);
    }
  };
  comp_word(t.rows);
  comp_word(t.rows2);
  return w;
}

ChargeData index_and_charge(const std::vector<int>& w) {
  int n = static_cast<int>(w.size());
  std::vector<int> pos(n + 1, -1);
  for (int i = 0; i < n; ++i) {
    require(w[i] >= 1 && w[i] <= n && pos[w[i]] < 0, Errc::invalid_argument,
            "index_and_charge: word is not a permutation");
    pos[w[i]] = i;
  }
  ChargeData cd;
  cd.index.assign(n, 0);
  int cur = 0;
  for (int k = 2; k <= n; ++k) {
    if (pos[k] < pos[k - 1]) ++cur;
    cd.index[pos[k]] = cur;
    cd.charge += cur;
  }
  return cd;
}

int charge(const StandardTableau& t) { return index_and_charge(word(t)).charge; }

int generator_degree_sym(const StandardTableau& s) { return charge(s); }

int generator_degree_signed(const StandardTableau& s) {
  return 2 * charge(s) + partition_sum(s.shape.second);
}

bool in_pi_set(const StandardTableau& t, int k) {
  require(k >= 0, Errc::invalid_argument, "in_pi_set: k < 0");
  if (k == 0) return true;
  if (t.rows.empty() || static_cast<int>(t.rows[0].size()) < k) return false;
  if (t.shape.second.empty()) {
    // Single shape: first row starts 1..k literally.
    for (int j = 0; j < k; ++j)
      if (t.rows[0][j] != j + 1) return false;
    return true;
  }
  // Pair shape: first row of the first component holds its k smallest entries.
  std::vector<int> entries;
  for (const auto& r : t.rows) entries.insert(entries.end(), r.begin(), r.end());
  std::sort(entries.begin(), entries.end());
  if (static_cast<int>(entries.size()) < k) return false;
  for (int j = 0; j < k; ++j)
    if (t.rows[0][j] != entries[j]) return false;
  return true;
}

std::vector<StandardTableau> pi_set(const MultiPartition& shape, int k) {
  std::vector<StandardTableau> out;
  for (const auto& t : enumerate_syt(shape))
    if (in_pi_set(t, k)) out.push_back(t);
  return out;
}

MultiPartition shape_plus_one(const MultiPartition& shape) {
  MultiPartition s = shape;
  if (s.first.empty())
    s.first = {1};
  else
    s.first[0] += 1;
  require(is_partition(s.first), Errc::internal, "shape_plus_one: malformed result");
  return s;
}

StandardTableau rho_step(const StandardTableau& t) {
  require(is_standard(t), Errc::precondition, "rho_step: input is not standard");
  // Minimal i >= 1 with first-row entry at position i different from i.  Every value
  // below i then sits in that prefix, so "shift the remainder" is "shift values >= i".
  int row1_len = t.rows.empty() ? 0 : static_cast<int>(t.rows[0].size());
  int i = row1_len + 1;
  for (int j = 0; j < row1_len; ++j)
    if (t.rows[0][j] != j + 1) {
      i = j + 1;
      break;
    }
  StandardTableau out;
  out.shape = shape_plus_one(t.shape);
  auto shift = [i](int v) { return v >= i ? v + 1 : v; };
  out.rows = t.rows;
  out.rows2 = t.rows2;
  if (out.rows.empty()) out.rows.push_back({});
  for (auto& r : out.rows)
    for (auto& v : r) v = shift(v);
  for (auto& r : out.rows2)
    for (auto& v : r) v = shift(v);
  out.rows[0].insert(out.rows[0].begin() + (i - 1), i);
  require(is_standard(out), Errc::precondition, "rho_step: image is not standard");
  return out;
}

StandardTableau swap_components(const StandardTableau& t) {
  StandardTableau s;
  s.shape = {t.shape.second, t.shape.first};
  s.rows = t.rows2;
  s.rows2 = t.rows;
  return s;
}

std::string partition_str(const Partition& p) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
  os << ")";
  return os.str();
}

std::string shape_str(const MultiPartition& s) {
  if (s.second.empty() && !s.first.empty()) return partition_str(s.first);
  return "[" + partition_str(s.first) + "," + partition_str(s.second) + "]";
}

}  // namespace rsos
