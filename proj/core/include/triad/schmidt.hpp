#pragma once

#include <vector>

#include "triad/tensor.hpp"

namespace triad {

/// Partial trace over the second factor.
LocalOperator reduced_a(const BipartiteOperator& g);
/// Partial trace over the first factor.
LocalOperator reduced_b(const BipartiteOperator& g);

/// G(X) = sum_i tr(A_i X) B_i for g = sum_i A_i (x) B_i. X acts on the first
/// factor, the result on the second.
LocalOperator g_apply(const BipartiteOperator& g, const LocalOperator& x);
/// F(Y) = sum_i tr(B_i Y) A_i; the trace-adjoint of G for Hermitian g.
LocalOperator f_apply(const BipartiteOperator& g, const LocalOperator& y);
/// F(G(X)).
LocalOperator fg_apply(const BipartiteOperator& g, const LocalOperator& x);

/// g = sum_i s_i A_i (x) B_i with tr(A_i A_j*) = tr(B_i B_j*) = delta_ij.
struct SchmidtDecomposition {
  RealVector coefficients;
  std::vector<LocalOperator> left_ops;
  std::vector<LocalOperator> right_ops;

  int size() const noexcept { return static_cast<int>(coefficients.size()); }
  BipartiteOperator reconstruct() const;
};

/// Singular value decomposition of R(g). Coefficients below rank_tol * s_1
/// are dropped. The largest-modulus entry of each A_i is made real positive.
/// Accepts k != m as well, through the rectangular realignment.
SchmidtDecomposition schmidt(const BipartiteOperator& g, const Tolerances& tol = {});

/// Orthonormal Hermitian basis of M_k under tr(XY*), in this order:
///   Id/sqrt(k);
///   (E_pq + E_qp)/sqrt(2) for p < q, lexicographic in (p,q);
///   (-i E_pq + i E_qp)/sqrt(2) for p < q, same order;
///   (sum_{j<l} E_jj - l E_ll)/sqrt(l(l+1)) for l = 1..k-1.
/// For k = 2 this is (Id, sigma_x, sigma_y, sigma_z)/sqrt(2).
std::vector<Matrix> hermitian_basis(int k);

/// Real coordinates of a Hermitian matrix in hermitian_basis(k) and back.
RealVector hermitian_coordinates(const Matrix& h);
Matrix from_hermitian_coordinates(const RealVector& c, int k);

/// A real matrix representing a map between Hermitian spaces in the bases
/// above. rows = dim_out^2, cols = dim_in^2.
struct HermitianBasisMatrix {
  int dim_in = 0;
  int dim_out = 0;
  RealMatrix matrix;

  int dim() const noexcept { return dim_in; }
};

/// M[a][b] = tr(G(h_b) h_a).
HermitianBasisMatrix g_matrix(const BipartiteOperator& g, const Tolerances& tol = {});
/// Matrix of F o G, equal to M^t M.
HermitianBasisMatrix fg_matrix(const BipartiteOperator& g, const Tolerances& tol = {});

/// Schmidt decomposition with Hermitian local operators, from the real SVD of
/// the coefficient matrix of a Hermitian g. When Id/sqrt(k) lies in the left
/// span of the top singular cluster it is rotated to be the first left
/// operator; its partner is then rotated accordingly. Signs are fixed so that
/// tr(A_i) >= 0, or the largest-modulus entry is positive when tr(A_i) = 0.
SchmidtDecomposition hermitian_schmidt(const BipartiteOperator& g, const Tolerances& tol = {});

}  // namespace triad
