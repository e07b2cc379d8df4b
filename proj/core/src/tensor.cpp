#include "triad/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

namespace triad {

namespace {

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + ": entries must be finite");
  }
}

// Rotate v so that its first (near-)largest entry is real and positive.
void fix_phase(Eigen::Ref<Vector> v) {
  double largest = v.cwiseAbs().maxCoeff();
  if (largest == 0.0) return;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= largest * (1.0 - 1e-9)) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
  }
}

double round_to_grid(double x) { return std::round(x * 1e8) / 1e8; }

bool lexicographically_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    double ar = round_to_grid(a(i).real()), br = round_to_grid(b(i).real());
    if (ar != br) return ar < br;
    double ai = round_to_grid(a(i).imag()), bi = round_to_grid(b(i).imag());
    if (ai != bi) return ai < bi;
  }
  return false;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotAState: return "NotAState";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorCode::MarginalRankDeficient: return "MarginalRankDeficient";
    case ErrorCode::WrongClassForMode: return "WrongClassForMode";
    case ErrorCode::FullRankEigenvector: return "FullRankEigenvector";
    case ErrorCode::CompleteReducibilityViolation: return "CompleteReducibilityViolation";
    case ErrorCode::NumericalDegeneracy: return "NumericalDegeneracy";
    case ErrorCode::PowerIterationStall: return "PowerIterationStall";
    case ErrorCode::BadRank: return "BadRank";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
    case ErrorCode::FixedPointNotReached: return "FixedPointNotReached";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

LocalOperator::LocalOperator(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "local operator must be square");
  }
  require_finite(entries_, "local operator");
}

LocalOperator LocalOperator::identity(int n) { return LocalOperator(Matrix::Identity(n, n)); }

LocalOperator LocalOperator::zero(int n) { return LocalOperator(Matrix::Zero(n, n)); }

BipartiteOperator::BipartiteOperator(int dim_a, int dim_b, Matrix entries)
    : dim_a_(dim_a), dim_b_(dim_b), entries_(std::move(entries)) {
  if (dim_a <= 0 || dim_b <= 0) {
    throw Error(ErrorCode::InvalidArgument, "factor dimensions must be positive");
  }
  const Eigen::Index side = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (entries_.rows() != side || entries_.cols() != side) {
    throw Error(ErrorCode::DimensionMismatch,
                "bipartite operator must be " + std::to_string(side) + "x" + std::to_string(side));
  }
  require_finite(entries_, "bipartite operator");
}

BipartiteOperator BipartiteOperator::identity(int dim_a, int dim_b) {
  return BipartiteOperator(dim_a, dim_b, Matrix::Identity(dim_a * dim_b, dim_a * dim_b));
}

BipartiteOperator BipartiteOperator::zero(int dim_a, int dim_b) {
  return BipartiteOperator(dim_a, dim_b, Matrix::Zero(dim_a * dim_b, dim_a * dim_b));
}

BipartiteOperator BipartiteOperator::with_matrix(Matrix entries) const {
  return BipartiteOperator(dim_a_, dim_b_, std::move(entries));
}

Matrix SpectralData::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index p = 0; p < a.cols(); ++p) {
      out.block(i * b.rows(), p * b.cols(), b.rows(), b.cols()) = a(i, p) * b;
    }
  }
  return out;
}

BipartiteOperator kron(const LocalOperator& a, const LocalOperator& b) {
  return BipartiteOperator(a.dim(), b.dim(), kron(a.matrix(), b.matrix()));
}

BipartiteOperator mixture(const std::vector<ProductTerm>& terms) {
  if (terms.empty()) throw Error(ErrorCode::InvalidArgument, "mixture of zero terms");
  const int k = terms.front().a.dim(), m = terms.front().b.dim();
  Matrix out = Matrix::Zero(k * m, k * m);
  for (const ProductTerm& t : terms) {
    if (t.a.dim() != k || t.b.dim() != m) {
      throw Error(ErrorCode::DimensionMismatch, "mixture terms have different shapes");
    }
    out += t.weight * kron(t.a.matrix(), t.b.matrix());
  }
  return BipartiteOperator(k, m, std::move(out));
}

double hermiticity_residual(const Matrix& a) {
  double scale = a.norm();
  if (scale == 0.0) return 0.0;
  return (a - a.adjoint()).norm() / scale;
}

Matrix hermitian_part(const Matrix& a) { return 0.5 * (a + a.adjoint()); }

SpectralData hermitian_eig(const Matrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hermitian_eig needs a square matrix");
  }
  if (hermiticity_residual(a) > tol.herm) {
    throw Error(ErrorCode::NotHermitian, "input deviates from its adjoint beyond herm_tol");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  const Eigen::Index n = a.rows();
  SpectralData out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order.
  for (Eigen::Index i = 0; i < n; ++i) {
    out.eigenvalues(i) = solver.eigenvalues()(n - 1 - i);
    out.eigenvectors.col(i) = solver.eigenvectors().col(n - 1 - i);
    fix_phase(out.eigenvectors.col(i));
  }

  // Deterministic order inside degenerate clusters.
  const double scale = std::max(1.0, n > 0 ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index stop = start + 1;
    while (stop < n && out.eigenvalues(stop - 1) - out.eigenvalues(stop) <= 1e-10 * scale) ++stop;
    if (stop - start > 1) {
      std::vector<Eigen::Index> order(static_cast<std::size_t>(stop - start));
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return lexicographically_less(out.eigenvectors.col(x), out.eigenvectors.col(y));
      });
      Matrix block(n, stop - start);
      for (std::size_t c = 0; c < order.size(); ++c) block.col(c) = out.eigenvectors.col(order[c]);
      out.eigenvectors.middleCols(start, stop - start) = block;
    }
    start = stop;
  }
  return out;
}

SpectralData hermitian_eig(const LocalOperator& a, const Tolerances& tol) {
  return hermitian_eig(a.matrix(), tol);
}

SpectralData hermitian_eig(const BipartiteOperator& a, const Tolerances& tol) {
  return hermitian_eig(a.matrix(), tol);
}

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector();
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues();
}

Norms norms(const Matrix& a) {
  RealVector s = singular_values(a);
  Norms out;
  if (s.size() == 0) return out;
  out.trace_norm = s.sum();
  out.frobenius_norm = std::sqrt(s.squaredNorm());
  out.operator_norm = s.maxCoeff();
  return out;
}

Norms norms(const LocalOperator& a) { return norms(a.matrix()); }

Norms norms(const BipartiteOperator& a) { return norms(a.matrix()); }

double operator_norm(const Matrix& a) {
  RealVector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s.maxCoeff();
}

double trace_norm(const Matrix& a) { return singular_values(a).sum(); }

PsdReport psd_check(const Matrix& a, double tol, const Tolerances& tols) {
  SpectralData spec = hermitian_eig(a, tols);
  PsdReport out;
  const Eigen::Index n = spec.eigenvalues.size();
  if (n == 0) {
    out.is_psd = true;
    return out;
  }
  out.min_eigenvalue = spec.eigenvalues(n - 1);
  const double op = spec.eigenvalues.cwiseAbs().maxCoeff();
  out.is_psd = out.min_eigenvalue >= -tol * std::max(1.0, op);
  return out;
}

PsdReport psd_check(const LocalOperator& a, double tol, const Tolerances& tols) {
  return psd_check(a.matrix(), tol, tols);
}

PsdReport psd_check(const BipartiteOperator& a, double tol, const Tolerances& tols) {
  return psd_check(a.matrix(), tol, tols);
}

Matrix hermitian_function(const Matrix& a, const std::function<double(double)>& f,
                          const Tolerances& tol) {
  SpectralData spec = hermitian_eig(a, tol);
  RealVector mapped = spec.eigenvalues.unaryExpr(f);
  return spec.eigenvectors * mapped.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
}

LocalOperator inv_sqrt_psd(const LocalOperator& a, double rank_tol) {
  SpectralData spec = hermitian_eig(a.matrix());
  const double top = spec.eigenvalues.size() ? spec.eigenvalues(0) : 0.0;
  if (!(top > 0.0)) {
    throw Error(ErrorCode::ZeroMatrix, "inv_sqrt_psd: no eigenvalue above the rank threshold");
  }
  const double cut = rank_tol * top;
  RealVector mapped = spec.eigenvalues.unaryExpr(
      [cut](double lambda) { return lambda > cut ? 1.0 / std::sqrt(lambda) : 0.0; });
  Matrix out = spec.eigenvectors * mapped.cast<Complex>().asDiagonal() * spec.eigenvectors.adjoint();
  return LocalOperator(hermitian_part(out));
}

Matrix psd_projection(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
  RealVector clipped = solver.eigenvalues().cwiseMax(0.0);
  return solver.eigenvectors() * clipped.cast<Complex>().asDiagonal() *
         solver.eigenvectors().adjoint();
}

int numerical_rank(const Matrix& psd, double rank_tol) {
  if (psd.size() == 0) return 0;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(psd), Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0)) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > rank_tol * top) ++r;
  }
  return r;
}

Matrix range_basis(const Matrix& psd, double rank_tol) {
  SpectralData spec = hermitian_eig(hermitian_part(psd));
  const Eigen::Index n = spec.eigenvalues.size();
  const double top = n ? spec.eigenvalues(0) : 0.0;
  Eigen::Index r = 0;
  if (top > 0.0) {
    while (r < n && spec.eigenvalues(r) > rank_tol * top) ++r;
  }
  return spec.eigenvectors.leftCols(r);
}

Matrix range_projection(const Matrix& psd, double rank_tol) {
  Matrix basis = range_basis(psd, rank_tol);
  return basis * basis.adjoint();
}

}  // namespace triad
