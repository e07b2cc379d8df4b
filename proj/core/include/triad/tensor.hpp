#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "triad/errors.hpp"
#include "triad/tolerances.hpp"

namespace triad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Square complex matrix acting on a single factor C^n.
class LocalOperator {
 public:
  LocalOperator() = default;
  explicit LocalOperator(Matrix entries);

  static LocalOperator identity(int n);
  static LocalOperator zero(int n);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const noexcept { return entries_; }

  Complex operator()(int row, int col) const { return entries_(row, col); }

 private:
  Matrix entries_;
};

/// Operator on C^k (x) C^m. The basis vector e_i (x) f_j sits at composite
/// index i*m + j; every index formula in the library assumes this ordering.
class BipartiteOperator {
 public:
  BipartiteOperator() = default;
  BipartiteOperator(int dim_a, int dim_b, Matrix entries);

  static BipartiteOperator identity(int dim_a, int dim_b);
  static BipartiteOperator zero(int dim_a, int dim_b);

  int dim_a() const noexcept { return dim_a_; }
  int dim_b() const noexcept { return dim_b_; }
  int size() const noexcept { return dim_a_ * dim_b_; }
  const Matrix& matrix() const noexcept { return entries_; }

  int index(int i, int j) const noexcept { return i * dim_b_ + j; }

  /// Entry <e_i f_j| op |e_p f_q>.
  Complex operator()(int i, int j, int p, int q) const {
    return entries_(index(i, j), index(p, q));
  }

  /// Same factor dimensions, different entries.
  BipartiteOperator with_matrix(Matrix entries) const;

 private:
  int dim_a_ = 0;
  int dim_b_ = 0;
  Matrix entries_;
};

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct SpectralData {
  RealVector eigenvalues;
  Matrix eigenvectors;  ///< unitary, column i pairs with eigenvalues[i]

  Matrix reconstruct() const;
};

struct Norms {
  double trace_norm = 0.0;
  double frobenius_norm = 0.0;
  double operator_norm = 0.0;
};

struct PsdReport {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
};

/// One term w * (a (x) b) of a separable decomposition.
struct ProductTerm {
  double weight = 0.0;
  LocalOperator a;
  LocalOperator b;
};

/// sum_i w_i a_i (x) b_i.
BipartiteOperator mixture(const std::vector<ProductTerm>& terms);

BipartiteOperator kron(const LocalOperator& a, const LocalOperator& b);
Matrix kron(const Matrix& a, const Matrix& b);

/// ||A - A*||_F relative to ||A||_F (0 for the zero matrix).
double hermiticity_residual(const Matrix& a);

SpectralData hermitian_eig(const Matrix& a, const Tolerances& tol = {});
SpectralData hermitian_eig(const LocalOperator& a, const Tolerances& tol = {});
SpectralData hermitian_eig(const BipartiteOperator& a, const Tolerances& tol = {});

RealVector singular_values(const Matrix& a);

Norms norms(const Matrix& a);
Norms norms(const LocalOperator& a);
Norms norms(const BipartiteOperator& a);

double operator_norm(const Matrix& a);
double trace_norm(const Matrix& a);

PsdReport psd_check(const Matrix& a, double tol, const Tolerances& tols = {});
PsdReport psd_check(const LocalOperator& a, double tol, const Tolerances& tols = {});
PsdReport psd_check(const BipartiteOperator& a, double tol, const Tolerances& tols = {});

/// Pseudo-inverse square root: eigenvalues above rank_tol * lambda_max map to
/// lambda^{-1/2}, the rest to zero.
LocalOperator inv_sqrt_psd(const LocalOperator& a, double rank_tol = Tolerances{}.rank);

/// f applied to the spectrum of a Hermitian matrix.
Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f,
                          const Tolerances& tol = {});

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
Matrix psd_projection(const Matrix& a);

/// Number of eigenvalues above rank_tol * lambda_max of a PSD matrix.
int numerical_rank(const Matrix& psd, double rank_tol = Tolerances{}.rank);

/// Orthonormal basis (columns) of the range of a PSD matrix.
Matrix range_basis(const Matrix& psd, double rank_tol = Tolerances{}.rank);

/// Orthogonal projection onto the range of a PSD matrix.
Matrix range_projection(const Matrix& psd, double rank_tol = Tolerances{}.rank);

Matrix hermitian_part(const Matrix& a);

}  // namespace triad
