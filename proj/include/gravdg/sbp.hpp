#pragma once

// Gauss-Lobatto summation-by-parts operators on the reference interval [-1, 1].

#include <vector>

namespace gravdg {

/// Small dense row-major matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  double& operator()(int i, int j) { return a_[i * cols_ + j]; }
  double operator()(int i, int j) const { return a_[i * cols_ + j]; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const double* row(int i) const { return a_.data() + i * cols_; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

struct LobattoOperators {
  int k = 0;                    ///< polynomial degree; k+1 nodes
  std::vector<double> nodes;    ///< X_0 = -1 < ... < X_k = 1
  std::vector<double> weights;  ///< quadrature weights, diagonal of the mass matrix
  DenseMatrix diff;             ///< D_jl = L_l'(X_j)
  DenseMatrix stiffness;        ///< S = M D
  std::vector<double> boundary; ///< diag(-1, 0, ..., 0, 1)

  int size() const { return k + 1; }
};

constexpr int kMaxDegree = 8;

/// Nodes, weights and operators for degree k in [1, 8]; throws ConfigError otherwise.
LobattoOperators build_operators(int k);

/// Legendre polynomial P_n(x) and derivative, by three-term recurrence.
void legendre(int n, double x, double& p, double& dp);

/// Values of the k+1 Lagrange basis polynomials at X.
std::vector<double> lagrange_basis(const LobattoOperators& ops, double X);

}  // namespace gravdg
