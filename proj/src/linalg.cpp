#include "reflsos/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <sstream>

namespace rsos {

QMat qmat(int rows, int cols) { return QMat(rows, QVec(cols, Rat(0))); }

namespace {

// Row echelon with partial pivoting by first nonzero; returns pivot columns.
// Operates in place; optional rhs is carried along.
std::vector<int> echelon(QMat& a, QVec* rhs) {
  int m = static_cast<int>(a.size());
  int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < n && row < m; ++col) {
    int pr = -1;
    for (int r = row; r < m; ++r)
      if (a[r][col] != 0) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(a[pr], a[row]);
    if (rhs) std::swap((*rhs)[pr], (*rhs)[row]);
    Rat inv = Rat(1) / a[row][col];
    for (int c = col; c < n; ++c) a[row][c] *= inv;
    if (rhs) (*rhs)[row] *= inv;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[row][c];
      if (rhs) (*rhs)[r] -= f * (*rhs)[row];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

int qrank(QMat a) { return static_cast<int>(echelon(a, nullptr).size()); }

std::optional<QVec> qsolve(QMat a, QVec b) {
  int m = static_cast<int>(a.size());
  require(static_cast<int>(b.size()) == m, Errc::dimension_mismatch, "qsolve: rhs size");
  int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivots = echelon(a, &b);
  // Inconsistent if a zero row has nonzero rhs.
  for (int r = static_cast<int>(pivots.size()); r < m; ++r)
    if (b[r] != 0) return std::nullopt;
  QVec x(n, Rat(0));
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i) x[pivots[i]] = b[i];
  return x;
}

std::vector<QVec> qkernel(const QMat& a0) {
  QMat a = a0;
  int m = static_cast<int>(a.size());
  int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivots = echelon(a, nullptr);
  std::vector<bool> is_piv(n, false);
  for (int c : pivots) is_piv[c] = true;
  std::vector<QVec> basis;
  for (int c = 0; c < n; ++c) {
    if (is_piv[c]) continue;
    QVec v(n, Rat(0));
    v[c] = 1;
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i) v[pivots[i]] = -a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

PsdReport qpsd(const QMat& a0) {
  int n = static_cast<int>(a0.size());
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(a0[i].size()) == n, Errc::dimension_mismatch, "qpsd: not square");
    for (int j = 0; j < n; ++j)
      require(a0[i][j] == a0[j][i], Errc::invalid_argument, "qpsd: not symmetric");
  }
  QMat a = a0;
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  PsdReport rep;
  rep.psd = true;
  std::optional<Rat> min_pivot;
  for (int k = 0; k < n; ++k) {
    int best = k;
    for (int i = k; i < n; ++i)
      if (a[idx[i]][idx[i]] > a[idx[best]][idx[best]]) best = i;
    std::swap(idx[k], idx[best]);
    Rat d = a[idx[k]][idx[k]];
    if (d < 0) {
      std::ostringstream os;
      os << "negative diagonal pivot " << rat_str(d);
      return {false, rep.rank, 0, os.str()};
    }
    if (d == 0) {
      // All remaining diagonals are <= 0 hence 0 by symmetry of the pivot choice;
      // the remaining block must vanish entirely.
      for (int i = k; i < n; ++i)
        for (int j = k; j < n; ++j)
          if (a[idx[i]][idx[j]] != 0)
            return {false, rep.rank, 0, "zero diagonal with nonzero residual block"};
      break;
    }
    rep.rank += 1;
    if (!min_pivot || d < *min_pivot) min_pivot = d;
    for (int i = k + 1; i < n; ++i) {
      Rat f = a[idx[i]][idx[k]] / d;
      if (f == 0) continue;
      for (int j = k + 1; j < n; ++j) a[idx[i]][idx[j]] -= f * a[idx[k]][idx[j]];
      a[idx[i]][idx[k]] = 0;
    }
  }
  rep.min_pivot = min_pivot.value_or(Rat(0));
  return rep;
}

namespace {

Eigen::MatrixXd to_eigen(const std::vector<std::vector<double>>& a) {
  int m = static_cast<int>(a.size());
  int n = m == 0 ? 0 : static_cast<int>(a[0].size());
  Eigen::MatrixXd e(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = a[i][j];
  return e;
}

}  // namespace

double dsym_min_eig(const std::vector<std::vector<double>>& a) {
  if (a.empty()) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(a));
  require(es.info() == Eigen::Success, Errc::internal, "eigensolver failed");
  return es.eigenvalues().minCoeff();
}

int drank(const std::vector<std::vector<double>>& a, double tol) {
  if (a.empty()) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
  const auto& sv = svd.singularValues();
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return r;
}

}  // namespace rsos
