#include "triad/schmidt.hpp"

#include <cmath>

#include "triad/contractions.hpp"

namespace triad {

namespace {

void require_hermitian(const BipartiteOperator& g, const Tolerances& tol) {
  if (hermiticity_residual(g.matrix()) > tol.herm) {
    throw Error(ErrorCode::NotHermitian, "operator deviates from its adjoint beyond herm_tol");
  }
}

// Rotates the phase of a so its largest-modulus entry is real positive and
// applies the inverse phase to b.
void fix_pair_phase(Matrix& a, Matrix& b) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const double v = std::abs(a.data()[i]);
    if (v > best_abs * (1.0 + 1e-12) + 1e-15) {
      best_abs = v;
      best = i;
    }
  }
  if (best_abs <= 0.0) return;
  const Complex phase = a.data()[best] / best_abs;
  a *= std::conj(phase);
  b *= phase;
}

Matrix matrix_unit(int k, int p, int q) {
  Matrix e = Matrix::Zero(k, k);
  e(p, q) = 1.0;
  return e;
}

RealMatrix coefficient_matrix(const BipartiteOperator& g) {
  const std::vector<Matrix> ha = hermitian_basis(g.dim_a());
  const std::vector<Matrix> hb = hermitian_basis(g.dim_b());
  RealMatrix c(static_cast<Eigen::Index>(ha.size()), static_cast<Eigen::Index>(hb.size()));
  for (std::size_t b = 0; b < hb.size(); ++b) {
    const LocalOperator gb = f_apply(g, LocalOperator(hb[b]));
    for (std::size_t a = 0; a < ha.size(); ++a) {
      c(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = (gb.matrix() * ha[a]).trace().real();
    }
  }
  return c;
}

void fix_hermitian_sign(Eigen::Ref<RealVector> p, Eigen::Ref<RealVector> q, int k) {
  // p(0) is the coordinate along Id/sqrt(k), proportional to the trace.
  double ref = p(0);
  if (std::abs(ref) <= 1e-12) {
    Matrix a = from_hermitian_coordinates(p, k);
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double v = std::abs(a.data()[i]);
      if (v > best_abs * (1.0 + 1e-12) + 1e-15) {
        best_abs = v;
        best = i;
      }
    }
    ref = a.data()[best].real() != 0.0 ? a.data()[best].real() : a.data()[best].imag();
  }
  if (ref < 0.0) {
    p = -p;
    q = -q;
  }
}

}  // namespace

LocalOperator reduced_a(const BipartiteOperator& g) {
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out = Matrix::Zero(k, k);
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < k; ++p)
      for (int j = 0; j < m; ++j) out(i, p) += g(i, j, p, j);
  return LocalOperator(std::move(out));
}

LocalOperator reduced_b(const BipartiteOperator& g) {
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out = Matrix::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int q = 0; q < m; ++q)
      for (int i = 0; i < k; ++i) out(j, q) += g(i, j, i, q);
  return LocalOperator(std::move(out));
}

LocalOperator g_apply(const BipartiteOperator& g, const LocalOperator& x) {
  if (x.dim() != g.dim_a()) throw Error(ErrorCode::DimensionMismatch, "g_apply: X must act on the first factor");
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out = Matrix::Zero(m, m);
  for (int i = 0; i < k; ++i)
    for (int p = 0; p < k; ++p) {
      const Complex xp = x(p, i);
      if (xp == Complex(0.0)) continue;
      for (int j = 0; j < m; ++j)
        for (int q = 0; q < m; ++q) out(j, q) += g(i, j, p, q) * xp;
    }
  return LocalOperator(std::move(out));
}

LocalOperator f_apply(const BipartiteOperator& g, const LocalOperator& y) {
  if (y.dim() != g.dim_b()) throw Error(ErrorCode::DimensionMismatch, "f_apply: Y must act on the second factor");
  const int k = g.dim_a(), m = g.dim_b();
  Matrix out = Matrix::Zero(k, k);
  for (int j = 0; j < m; ++j)
    for (int q = 0; q < m; ++q) {
      const Complex yq = y(q, j);
      if (yq == Complex(0.0)) continue;
      for (int i = 0; i < k; ++i)
        for (int p = 0; p < k; ++p) out(i, p) += g(i, j, p, q) * yq;
    }
  return LocalOperator(std::move(out));
}

LocalOperator fg_apply(const BipartiteOperator& g, const LocalOperator& x) {
  return f_apply(g, g_apply(g, x));
}

BipartiteOperator SchmidtDecomposition::reconstruct() const {
  if (left_ops.empty()) throw Error(ErrorCode::InvalidArgument, "empty Schmidt decomposition");
  const int k = left_ops.front().dim(), m = right_ops.front().dim();
  Matrix out = Matrix::Zero(k * m, k * m);
  for (int i = 0; i < size(); ++i) {
    out += coefficients(i) * kron(left_ops[static_cast<std::size_t>(i)].matrix(),
                                  right_ops[static_cast<std::size_t>(i)].matrix());
  }
  return BipartiteOperator(k, m, std::move(out));
}

SchmidtDecomposition schmidt(const BipartiteOperator& g, const Tolerances& tol) {
  const int k = g.dim_a(), m = g.dim_b();
  const Matrix r = realign_rectangular(g);
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  SchmidtDecomposition out;
  const double top = s.size() ? s(0) : 0.0;
  Eigen::Index n = 0;
  if (top > 0.0) {
    while (n < s.size() && s(n) > tol.rank * top) ++n;
  }
  out.coefficients = s.head(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Matrix a(k, k), b(m, m);
    for (int x = 0; x < k; ++x)
      for (int y = 0; y < k; ++y) a(x, y) = svd.matrixU()(x * k + y, i);
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y) b(x, y) = std::conj(svd.matrixV()(x * m + y, i));
    fix_pair_phase(a, b);
    out.left_ops.emplace_back(std::move(a));
    out.right_ops.emplace_back(std::move(b));
  }
  return out;
}

std::vector<Matrix> hermitian_basis(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "hermitian_basis needs k >= 1");
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(k * k));
  out.push_back(Matrix::Identity(k, k) / std::sqrt(static_cast<double>(k)));
  const double r2 = std::sqrt(2.0);
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q) out.push_back((matrix_unit(k, p, q) + matrix_unit(k, q, p)) / r2);
  const Complex i(0.0, 1.0);
  for (int p = 0; p < k; ++p)
    for (int q = p + 1; q < k; ++q)
      out.push_back((-i * matrix_unit(k, p, q) + i * matrix_unit(k, q, p)) / r2);
  for (int l = 1; l < k; ++l) {
    Matrix h = Matrix::Zero(k, k);
    for (int j = 0; j < l; ++j) h(j, j) = 1.0;
    h(l, l) = -static_cast<double>(l);
    out.push_back(h / std::sqrt(static_cast<double>(l * (l + 1))));
  }
  return out;
}

RealVector hermitian_coordinates(const Matrix& h) {
  if (h.rows() != h.cols()) throw Error(ErrorCode::DimensionMismatch, "hermitian_coordinates: square input");
  const std::vector<Matrix> basis = hermitian_basis(static_cast<int>(h.rows()));
  RealVector c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    c(static_cast<Eigen::Index>(a)) = (h * basis[a]).trace().real();
  }
  return c;
}

Matrix from_hermitian_coordinates(const RealVector& c, int k) {
  if (c.size() != static_cast<Eigen::Index>(k) * k) {
    throw Error(ErrorCode::DimensionMismatch, "from_hermitian_coordinates: need k^2 coordinates");
  }
  const std::vector<Matrix> basis = hermitian_basis(k);
  Matrix out = Matrix::Zero(k, k);
  for (std::size_t a = 0; a < basis.size(); ++a) out += c(static_cast<Eigen::Index>(a)) * basis[a];
  return out;
}

HermitianBasisMatrix g_matrix(const BipartiteOperator& g, const Tolerances& tol) {
  require_hermitian(g, tol);
  HermitianBasisMatrix out;
  out.dim_in = g.dim_a();
  out.dim_out = g.dim_b();
  out.matrix = coefficient_matrix(g).transpose();
  return out;
}

HermitianBasisMatrix fg_matrix(const BipartiteOperator& g, const Tolerances& tol) {
  HermitianBasisMatrix m = g_matrix(g, tol);
  HermitianBasisMatrix out;
  out.dim_in = m.dim_in;
  out.dim_out = m.dim_in;
  out.matrix = m.matrix.transpose() * m.matrix;
  return out;
}

SchmidtDecomposition hermitian_schmidt(const BipartiteOperator& g, const Tolerances& tol) {
  require_hermitian(g, tol);
  const int k = g.dim_a(), m = g.dim_b();
  const RealMatrix c = coefficient_matrix(g);
  Eigen::JacobiSVD<RealMatrix> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  RealMatrix p = svd.matrixU();
  RealMatrix q = svd.matrixV();
  const double top = s.size() ? s(0) : 0.0;
  Eigen::Index n = 0;
  if (top > 0.0) {
    while (n < s.size() && s(n) > tol.rank * top) ++n;
  }

  Eigen::Index cluster = 0;
  while (cluster < n && s(0) - s(cluster) <= tol.rank * top) ++cluster;
  if (cluster > 1) {
    RealVector proj = p.block(0, 0, 1, cluster).transpose();
    const double len = proj.norm();
    if (len * len >= 1.0 - 1e-6) {
      RealVector u = proj / len;
      RealVector v = -u;
      v(0) += 1.0;
      const double vn = v.squaredNorm();
      if (vn > 1e-30) {
        RealMatrix h = RealMatrix::Identity(cluster, cluster) - 2.0 * v * v.transpose() / vn;
        p.leftCols(cluster) = p.leftCols(cluster) * h;
        q.leftCols(cluster) = q.leftCols(cluster) * h;
      }
    }
  }

  SchmidtDecomposition out;
  out.coefficients = s.head(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    RealVector pi = p.col(i);
    RealVector qi = q.col(i);
    fix_hermitian_sign(pi, qi, k);
    out.left_ops.emplace_back(from_hermitian_coordinates(pi, k));
    out.right_ops.emplace_back(from_hermitian_coordinates(qi, m));
  }
  return out;
}

}  // namespace triad
