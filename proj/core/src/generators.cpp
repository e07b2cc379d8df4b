#include "triad/generators.hpp"

#include <cmath>
#include <cstdlib>

#include "triad/contractions.hpp"
#include "triad/schmidt.hpp"

namespace triad {

namespace {

constexpr int kRejectionBudget = 10000;

BipartiteOperator normalized(int k, const Matrix& m) {
  const double tr = m.trace().real();
  return BipartiteOperator(k, k, hermitian_part(m) / tr);
}

Vector random_unit_vector(Rng& rng, int k) {
  Vector v(k);
  for (int i = 0; i < k; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(0);
}

bool is_ppt_density(const BipartiteOperator& g) {
  Tolerances tol;
  return min_eigenvalue(partial_transpose(g).matrix()) >=
         -tol.psd * std::max(1.0, operator_norm(g.matrix()));
}

RealMatrix random_orthogonal(Rng& rng, int n) {
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

void require_k(int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "k must be positive");
}

}  // namespace

Vector max_entangled_vector(int k) {
  Vector u = Vector::Zero(k * k);
  for (int i = 0; i < k; ++i) u(i * k + i) = 1.0;
  return u;
}

Matrix random_invertible(Rng& rng, int k, double scale) {
  for (;;) {
    Matrix l = Matrix::Identity(k, k) + scale * gaussian_matrix(rng, k, k) / std::sqrt(static_cast<double>(k));
    const RealVector s = singular_values(l);
    if (s(s.size() - 1) > 0.0 && s(0) / s(s.size() - 1) < 1e3) return l;
  }
}

BipartiteOperator random_density(int k, int rank, std::uint64_t seed) {
  require_k(k);
  if (rank < 1 || rank > k * k) throw Error(ErrorCode::BadRank, "rank must lie in [1, k^2]");
  Rng rng(seed);
  const Matrix g = gaussian_matrix(rng, k * k, rank);
  return normalized(k, g * g.adjoint());
}

SeparableSample random_separable(int k, int terms, std::uint64_t seed) {
  require_k(k);
  if (terms < 1) throw Error(ErrorCode::InvalidArgument, "terms must be positive");
  Rng rng(seed);
  std::vector<double> w(static_cast<std::size_t>(terms));
  double total = 0.0;
  for (double& x : w) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x = -std::log(u);
    total += x;
  }
  SeparableSample out;
  Matrix state = Matrix::Zero(k * k, k * k);
  for (int t = 0; t < terms; ++t) {
    const Vector x = random_unit_vector(rng, k);
    const Vector y = random_unit_vector(rng, k);
    ProductTerm term{w[static_cast<std::size_t>(t)] / total, LocalOperator(x * x.adjoint()),
                     LocalOperator(y * y.adjoint())};
    state += term.weight * kron(term.a.matrix(), term.b.matrix());
    out.decomposition.push_back(std::move(term));
  }
  out.state = BipartiteOperator(k, k, hermitian_part(state));
  return out;
}

BipartiteOperator random_spc(int k, std::uint64_t seed) {
  require_k(k);
  Rng rng(seed);
  const int n = k * k;
  std::vector<Matrix> family;
  family.push_back(Matrix::Identity(k, k) / std::sqrt(static_cast<double>(k)));
  if (n > 1) {
    const RealMatrix o = random_orthogonal(rng, n - 1);
    for (int i = 0; i < n - 1; ++i) {
      RealVector c = RealVector::Zero(n);
      c.tail(n - 1) = o.col(i);
      family.push_back(from_hermitian_coordinates(c, k));
    }
  }
  double spread = 1.0;
  for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
    Matrix sum = Matrix::Zero(n, n);
    sum += kron(family[0], family[0]);
    for (std::size_t i = 1; i < family.size(); ++i) {
      sum += spread * rng.uniform() * kron(family[i], family[i]);
    }
    if (min_eigenvalue(sum) > 1e-6 * sum.trace().real() / n) {
      const Matrix l = random_invertible(rng, k);
      const Matrix ll = kron(l, l);
      return normalized(k, ll * sum * ll.adjoint());
    }
    spread *= 0.9;
  }
  throw Error(ErrorCode::RejectionBudgetExhausted, "random_spc: no PSD coefficient draw");
}

BipartiteOperator random_invariant(int k, std::uint64_t seed) {
  require_k(k);
  BipartiteOperator g = random_density(k, k * k, seed);
  Matrix x = g.matrix();
  auto residual = [k](const Matrix& y, Matrix& r) {
    r = realign(BipartiteOperator(k, k, y)).matrix();
    return (r - y).norm();
  };
  Matrix r;
  for (int sweep = 0; sweep < 5000; ++sweep) {
    if (residual(x, r) <= 1e-10) {
      // Polish inside the Hermitian invariant subspace; the PSD cone is not
      // revisited since each step moves x by less than the residual.
      for (int polish = 0; polish < 100 && residual(x, r) > 1e-13; ++polish) {
        x = hermitian_part(0.5 * (x + r));
      }
      return normalized(k, x);
    }
    x = hermitian_part(0.5 * (x + r));
    x = psd_projection(x);
    x /= x.trace().real();
  }
  throw Error(ErrorCode::FixedPointNotReached, "random_invariant: no fixed point within 5000 sweeps");
}

BipartiteOperator random_ppt(int k, std::uint64_t seed) {
  require_k(k);
  Rng rng(seed);
  if (k <= 3) {
    const int cols = k <= 2 ? k * k : 3 * k * k;
    for (int attempt = 0; attempt < kRejectionBudget; ++attempt) {
      const Matrix g = gaussian_matrix(rng, k * k, cols);
      BipartiteOperator cand = normalized(k, g * g.adjoint());
      if (is_ppt_density(cand)) return cand;
    }
    throw Error(ErrorCode::RejectionBudgetExhausted, "random_ppt: acceptance budget exhausted");
  }
  const SeparableSample sep = random_separable(k, 2 * k * k, rng.next_u64());
  const Matrix noise = gaussian_matrix(rng, k * k, k * k);
  Matrix x = sep.state.matrix() + 0.05 * noise * noise.adjoint() / (noise.squaredNorm());
  x = hermitian_part(x) / x.trace().real();
  for (int sweep = 0; sweep < 5000; ++sweep) {
    BipartiteOperator cand(k, k, x);
    if (min_eigenvalue(x) >= 0.0 && is_ppt_density(cand)) return normalized(k, x);
    x = partial_transpose(BipartiteOperator(k, k, psd_projection(partial_transpose(cand).matrix()))).matrix();
    x = psd_projection(x);
    x /= x.trace().real();
  }
  throw Error(ErrorCode::RejectionBudgetExhausted, "random_ppt: clipping did not settle");
}

BipartiteOperator werner(int k, double alpha) {
  require_k(k);
  if (!(alpha >= -1.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "werner parameter must lie in [-1, 1]");
  }
  const double kd = static_cast<double>(k);
  const double norm = kd * kd - alpha * kd;
  if (norm <= 0.0) throw Error(ErrorCode::InvalidArgument, "werner state not normalizable");
  Matrix m = (Matrix::Identity(k * k, k * k) - alpha * flip(k).matrix()) / norm;
  return BipartiteOperator(k, k, std::move(m));
}

BipartiteOperator canonical(const std::string& name, int k) {
  require_k(k);
  const int n = k * k;
  if (name == "classical_diag") {
    Matrix m = Matrix::Zero(n, n);
    for (int i = 0; i < k; ++i) m(i * k + i, i * k + i) = 1.0 / k;
    return BipartiteOperator(k, k, std::move(m));
  }
  if (name == "bell") {
    const Vector u = max_entangled_vector(k);
    return BipartiteOperator(k, k, u * u.adjoint() / static_cast<double>(k));
  }
  if (name == "identity_plus_u") {
    const Vector u = max_entangled_vector(k);
    Matrix m = (Matrix::Identity(n, n) + u * u.adjoint()) / static_cast<double>(n + k);
    return BipartiteOperator(k, k, std::move(m));
  }
  for (const char* prefix : {"werner(", "werner:"}) {
    const std::string p(prefix);
    if (name.rfind(p, 0) == 0) {
      std::string arg = name.substr(p.size());
      if (p.back() == '(') {
        if (arg.empty() || arg.back() != ')') throw Error(ErrorCode::UnknownName, "malformed " + name);
        arg.pop_back();
      }
      char* end = nullptr;
      const double alpha = std::strtod(arg.c_str(), &end);
      if (arg.empty() || end != arg.c_str() + arg.size()) {
        throw Error(ErrorCode::UnknownName, "malformed werner parameter in " + name);
      }
      return werner(k, alpha);
    }
  }
  throw Error(ErrorCode::UnknownName, "unknown canonical state " + name);
}

}  // namespace triad
