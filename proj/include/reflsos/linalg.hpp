#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reflsos/rational.hpp"

namespace rsos {

using QVec = std::vector<Rat>;
using QMat = std::vector<std::vector<Rat>>;  // row-major, rectangular

QMat qmat(int rows, int cols);

int qrank(QMat a);

// One exact solution of A x = b (free variables set to 0), or nullopt if inconsistent.
std::optional<QVec> qsolve(QMat a, QVec b);

// Basis of the right nullspace of A.
std::vector<QVec> qkernel(const QMat& a);

// Exact PSD decision for a symmetric rational matrix: LDL^T with symmetric pivoting
// on the largest remaining diagonal entry. A zero diagonal block must be identically
// zero, otherwise the matrix has a negative 2x2 principal minor.
struct PsdReport {
  bool psd = false;
  int rank = 0;
  Rat min_pivot = 0;  // least positive pivot when psd and rank > 0
  std::string why;    // failure description when !psd
};
PsdReport qpsd(const QMat& a);

// Floating helpers (Eigen-backed).
double dsym_min_eig(const std::vector<std::vector<double>>& a);
int drank(const std::vector<std::vector<double>>& a, double tol);

}  // namespace rsos
