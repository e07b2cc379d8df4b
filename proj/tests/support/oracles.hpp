#pragma once

// Reference implementations built from matrix units, Kronecker products and
// partial traces only. They are slow and independent of the index formulas
// used inside the library.

#include <array>
#include <cmath>

#include "triad/rng.hpp"
#include "triad/tensor.hpp"

namespace triad::oracle {

inline Matrix unit(int rows, int cols, int r, int c) {
  Matrix e = Matrix::Zero(rows, cols);
  e(r, c) = 1.0;
  return e;
}

inline Matrix kr(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Coefficient of E_ip (x) E_jq in g.
inline Complex coefficient(const Matrix& g, int k, int m, int i, int p, int j, int q) {
  return (kr(unit(k, k, i, p), unit(m, m, j, q)).adjoint() * g).trace();
}

/// g^Gamma: E_ip (x) E_jq -> E_ip (x) E_qj.
inline Matrix partial_transpose(const Matrix& g, int k, int m) {
  Matrix out = Matrix::Zero(k * m, k * m);
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < m; ++j)
        for (int q = 0; q < m; ++q) out += coefficient(g, k, m, i, p, j, q) * kr(unit(k, k, i, p), unit(m, m, q, j));
  return out;
}

/// R(A (x) B) = vec(A) vec(B)^t with row-major vec.
inline Matrix realign(const Matrix& g, int k, int m) {
  Matrix out = Matrix::Zero(k * k, m * m);
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < m; ++j)
        for (int q = 0; q < m; ++q) out(i * k + p, j * m + q) += coefficient(g, k, m, i, p, j, q);
  return out;
}

inline Matrix flip(int k) {
  Matrix f = Matrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) f += kr(unit(k, k, i, j), unit(k, k, j, i));
  return f;
}

/// tr_B(g) = sum_j (Id (x) e_j^t) g (Id (x) e_j).
inline Matrix trace_b(const Matrix& g, int k, int m) {
  Matrix out = Matrix::Zero(k, k);
  for (int j = 0; j < m; ++j) {
    const Matrix s = kr(Matrix::Identity(k, k), unit(m, 1, j, 0));
    out += s.adjoint() * g * s;
  }
  return out;
}

inline Matrix trace_a(const Matrix& g, int k, int m) {
  Matrix out = Matrix::Zero(m, m);
  for (int i = 0; i < k; ++i) {
    const Matrix s = kr(unit(k, 1, i, 0), Matrix::Identity(m, m));
    out += s.adjoint() * g * s;
  }
  return out;
}

/// G(X) = tr_A(g (X (x) Id)).
inline Matrix g_map(const Matrix& g, int k, int m, const Matrix& x) {
  return trace_a(g * kr(x, Matrix::Identity(m, m)), k, m);
}

/// F(Y) = tr_B(g (Id (x) Y)).
inline Matrix f_map(const Matrix& g, int k, int m, const Matrix& y) {
  return trace_b(g * kr(Matrix::Identity(k, k), y), k, m);
}

/// (Id (x) u* (x) Id)(g (x) d)(Id (x) u (x) Id) with u = sum_x e_x (x) e_x.
inline Matrix star(const Matrix& g, const Matrix& d, int k) {
  Vector u = Vector::Zero(k * k);
  for (int x = 0; x < k; ++x) u(x * k + x) = 1.0;
  const Matrix t = kr(kr(Matrix::Identity(k, k), u), Matrix::Identity(k, k));
  return t.adjoint() * kr(g, d) * t;
}

/// L_sigma from the tensor picture g = sum c e_{s0} e_{s1}^t (x) e_{s2} e_{s3}^t:
/// slot s of each output matrix unit carries the index of input slot sigma(s).
inline Matrix contraction(const std::array<int, 4>& sigma, const Matrix& g, int k) {
  Matrix out = Matrix::Zero(k * k, k * k);
  std::array<int, 4> s{}, t{};
  for (s[0] = 0; s[0] < k; ++s[0])
    for (s[1] = 0; s[1] < k; ++s[1])
      for (s[2] = 0; s[2] < k; ++s[2])
        for (s[3] = 0; s[3] < k; ++s[3]) {
          for (std::size_t a = 0; a < 4; ++a) t[a] = s[static_cast<std::size_t>(sigma[a])];
          out += coefficient(g, k, k, s[0], s[1], s[2], s[3]) * kr(unit(k, k, t[0], t[1]), unit(k, k, t[2], t[3]));
        }
  return out;
}

}  // namespace triad::oracle

namespace triad::sample {

inline Matrix random_complex(Rng& rng, int rows, int cols) { return gaussian_matrix(rng, rows, cols); }

inline Matrix random_hermitian(Rng& rng, int n) {
  const Matrix a = gaussian_matrix(rng, n, n);
  return 0.5 * (a + a.adjoint());
}

inline Matrix random_psd(Rng& rng, int n, int rank) {
  const Matrix a = gaussian_matrix(rng, n, rank);
  const Matrix p = a * a.adjoint();
  return p / p.trace().real();
}

inline Vector random_vector(Rng& rng, int n) { return gaussian_matrix(rng, n, 1).col(0); }

inline BipartiteOperator rotated_classical(Rng& rng, int k) {
  Matrix d = Matrix::Zero(k * k, k * k);
  for (int i = 0; i < k; ++i) d(i * k + i, i * k + i) = 1.0 / k;
  const Matrix u = random_unitary(rng, k);
  const Matrix v = random_unitary(rng, k);
  const Matrix w = oracle::kr(u, v);
  return BipartiteOperator(k, k, w * d * w.adjoint());
}

}  // namespace triad::sample
