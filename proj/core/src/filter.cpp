#include "triad/filter.hpp"

#include <algorithm>
#include <cmath>

#include "triad/contractions.hpp"
#include "triad/criteria.hpp"
#include "triad/rng.hpp"

namespace triad {

namespace {

Matrix congruence(const Matrix& d, const Matrix& p, const Matrix& q) {
  const Matrix pq = kron(p, q);
  return hermitian_part(pq * d * pq.adjoint());
}

double marginal_residual(const LocalOperator& marginal) {
  const int n = marginal.dim();
  return (marginal.matrix() - Matrix::Identity(n, n) / static_cast<double>(n)).norm();
}

double log_abs_det(const Matrix& m) { return std::log(std::abs(m.determinant())); }

// Scaled marginal n * d_side raised to `power`, with the divergence guard.
Matrix marginal_power(const LocalOperator& marginal, double power, const FilterOptions& opt) {
  const int n = marginal.dim();
  const Matrix scaled = static_cast<double>(n) * marginal.matrix();
  SpectralData spec = hermitian_eig(hermitian_part(scaled), opt.tol);
  const double top = spec.eigenvalues(0);
  const double bottom = spec.eigenvalues(spec.eigenvalues.size() - 1);
  if (!(bottom > 0.0) || top / bottom > opt.max_condition) {
    throw Error(ErrorCode::MarginalRankDeficient,
                "marginal condition number exceeded the divergence guard during scaling");
  }
  RealVector mapped = spec.eigenvalues.unaryExpr([power](double x) { return std::pow(x, power); });
  return hermitian_part(spec.eigenvectors * mapped.cast<Complex>().asDiagonal() *
                        spec.eigenvectors.adjoint());
}

struct Scaling {
  Matrix fa, fb;
  int iterations = 0;
  bool converged = false;
  double max_increase = 0.0;
  std::vector<FilterIteration> log;
};

enum class Kind { Alternating, Symmetric, Conjugate };

Scaling run_scaling(const BipartiteOperator& g, Kind kind, const FilterOptions& opt) {
  const int k = g.dim_a(), m = g.dim_b();
  Scaling s;
  s.fa = Matrix::Identity(k, k);
  s.fb = Matrix::Identity(m, m);
  Matrix d = g.matrix();
  double potential = 0.0;
  double previous = 0.0;
  for (int it = 0;; ++it) {
    const BipartiteOperator cur(k, m, d);
    const LocalOperator da = reduced_a(cur);
    const LocalOperator db = reduced_b(cur);
    FilterIteration entry{it, marginal_residual(da), marginal_residual(db), potential};
    s.log.push_back(entry);
    if (it > 0) s.max_increase = std::max(s.max_increase, potential - previous);
    previous = potential;
    s.iterations = it;
    if (entry.residual_a <= opt.filter_tol && entry.residual_b <= opt.filter_tol) {
      s.converged = true;
      break;
    }
    if (it >= opt.max_iter) break;

    if (kind == Kind::Alternating) {
      const Matrix p = marginal_power(da, -0.5, opt);
      d = congruence(d, p, Matrix::Identity(m, m));
      s.fa = p * s.fa;
      const LocalOperator db2 = reduced_b(BipartiteOperator(k, m, d));
      const Matrix q = marginal_power(db2, -0.5, opt);
      d = congruence(d, Matrix::Identity(k, k), q);
      s.fb = q * s.fb;
    } else {
      const Matrix p = marginal_power(da, -0.25, opt);
      const Matrix q = kind == Kind::Symmetric ? p : Matrix(p.conjugate());
      d = congruence(d, p, q);
      const double t = d.trace().real();
      d /= t;
      const double scale = std::pow(t, -0.25);
      s.fa = scale * p * s.fa;
      s.fb = scale * q * s.fb;
    }
    potential = -2.0 * log_abs_det(s.fa) - 2.0 * log_abs_det(s.fb);
  }
  return s;
}

void require_full_marginals(const BipartiteOperator& g, const Tolerances& tol) {
  if (numerical_rank(reduced_a(g).matrix(), tol.rank) < g.dim_a() ||
      numerical_rank(reduced_b(g).matrix(), tol.rank) < g.dim_b()) {
    throw Error(ErrorCode::MarginalRankDeficient, "filtering needs full-rank marginals");
  }
}

double spc_residual(const BipartiteOperator& d, const Tolerances& tol) {
  const Matrix r = realign(partial_transpose(d)).matrix();
  const double herm = (r - r.adjoint()).norm();
  const PsdReport psd = psd_check(hermitian_part(r), tol.psd, tol);
  return herm + std::max(0.0, -psd.min_eigenvalue);
}

}  // namespace

std::string_view to_string(FilterMode mode) {
  switch (mode) {
    case FilterMode::General: return "general";
    case FilterMode::Symmetric: return "symmetric";
    case FilterMode::Conjugate: return "conjugate";
    case FilterMode::Left: return "left";
  }
  return "general";
}

FilterMode parse_filter_mode(const std::string& name) {
  if (name == "general") return FilterMode::General;
  if (name == "symmetric") return FilterMode::Symmetric;
  if (name == "conjugate") return FilterMode::Conjugate;
  if (name == "left") return FilterMode::Left;
  throw Error(ErrorCode::UnknownName, "unknown filter mode " + name);
}

FilterResult sinkhorn_filter(const BipartiteOperator& g, FilterMode mode, const FilterOptions& opt) {
  const Tolerances& tol = opt.tol;
  if (!psd_check(g, tol.psd, tol).is_psd) throw Error(ErrorCode::NotPSD, "filter input must be PSD");
  const double trace = g.matrix().trace().real();
  if (!(trace > 0.0)) throw Error(ErrorCode::ZeroMatrix, "filter input has zero trace");
  const BipartiteOperator gh = g.with_matrix(hermitian_part(g.matrix()) / trace);
  require_full_marginals(gh, tol);
  if (mode != FilterMode::General && gh.dim_a() != gh.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "symmetric, conjugate and left modes need dim_a == dim_b");
  }
  if (mode == FilterMode::Symmetric && !classify(gh, tol).spc) {
    throw Error(ErrorCode::WrongClassForMode, "symmetric mode needs an SPC input");
  }
  if (mode == FilterMode::Conjugate && !classify(gh, tol).invariant) {
    throw Error(ErrorCode::WrongClassForMode, "conjugate mode needs a realignment-invariant input");
  }

  FilterResult out;
  out.mode = mode;
  const int k = gh.dim_a(), m = gh.dim_b();

  Scaling s;
  if (mode == FilterMode::Left) {
    const Matrix f = flip(k).matrix();
    const BipartiteOperator conj_side(k, k, f * gh.matrix().conjugate() * f);
    Matrix eta = star_product(gh, conj_side).matrix();
    eta = hermitian_part(eta) / eta.trace().real();
    const BipartiteOperator eta_op(k, k, eta);
    require_full_marginals(eta_op, tol);
    s = run_scaling(eta_op, Kind::Conjugate, opt);
    const BipartiteOperator eta_nf(k, k, congruence(eta, s.fa, s.fb));
    out.marginal_residual_a = marginal_residual(reduced_a(eta_nf));
    out.marginal_residual_b = marginal_residual(reduced_b(eta_nf));
    Matrix fa = s.fa;
    Matrix d = congruence(gh.matrix(), fa, Matrix::Identity(k, k));
    fa /= std::sqrt(d.trace().real());
    out.filter_a = LocalOperator(fa);
    out.filter_b = LocalOperator::identity(k);
    out.normal_form = BipartiteOperator(k, k, congruence(gh.matrix(), fa, Matrix::Identity(k, k)));
  } else {
    const Kind kind = mode == FilterMode::General     ? Kind::Alternating
                      : mode == FilterMode::Symmetric ? Kind::Symmetric
                                                      : Kind::Conjugate;
    s = run_scaling(gh, kind, opt);
    Matrix fa = s.fa, fb = s.fb;
    const double t = congruence(gh.matrix(), fa, fb).trace().real();
    const double scale = std::pow(t, -0.25);
    fa *= scale;
    fb *= scale;
    out.filter_a = LocalOperator(fa);
    out.filter_b = LocalOperator(fb);
    out.normal_form = BipartiteOperator(k, m, congruence(gh.matrix(), fa, fb));
    out.marginal_residual_a = marginal_residual(reduced_a(out.normal_form));
    out.marginal_residual_b = marginal_residual(reduced_b(out.normal_form));
  }
  out.iterations = s.iterations;
  out.converged = s.converged && out.marginal_residual_a <= opt.filter_tol &&
                  out.marginal_residual_b <= opt.filter_tol;
  out.max_potential_increase = s.max_increase;
  out.log = std::move(s.log);

  if (mode == FilterMode::Symmetric) {
    out.shape_residual = spc_residual(out.normal_form, tol);
  } else if (mode == FilterMode::Conjugate) {
    out.shape_residual = (realign(out.normal_form).matrix() - out.normal_form.matrix()).norm();
  }
  if (k == m) out.schmidt_of_normal_form = hermitian_schmidt(out.normal_form, tol);
  return out;
}

StochasticityReport doubly_stochastic_check(const BipartiteOperator& g, const Tolerances& tol) {
  if (hermiticity_residual(g.matrix()) > tol.herm) {
    throw Error(ErrorCode::NotHermitian, "doubly_stochastic_check needs a Hermitian input");
  }
  if (g.dim_a() != g.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "doubly_stochastic_check needs dim_a == dim_b");
  }
  const int k = g.dim_a();
  const double trace = g.matrix().trace().real();
  if (trace == 0.0) throw Error(ErrorCode::ZeroMatrix, "zero-trace input");
  const BipartiteOperator gh = g.with_matrix(g.matrix() / trace);
  const LocalOperator v(Matrix::Identity(k, k) / std::sqrt(static_cast<double>(k)));
  const Matrix target = v.matrix() / static_cast<double>(k);
  StochasticityReport r;
  r.forward_residual = (g_apply(gh, v).matrix() - target).norm();
  r.adjoint_residual = (f_apply(gh, v).matrix() - target).norm();
  r.doubly_stochastic = r.forward_residual <= tol.ds && r.adjoint_residual <= tol.ds;
  return r;
}

std::string_view to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::IndecomposableLikely: return "indecomposable_likely";
    case ProbeVerdict::DecomposableWitness: return "decomposable_witness";
    case ProbeVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

// Projections of rank 1..k-1 derived from a Hermitian matrix: each eigenspace
// cluster, the positive and negative parts, and cumulative sums in
// descending eigenvalue order.
void spectral_projections(const Matrix& h, std::vector<Matrix>& out) {
  const int k = static_cast<int>(h.rows());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h));
  const RealVector& ev = solver.eigenvalues();
  const Matrix& u = solver.eigenvectors();
  const double scale = std::max(1e-300, ev.cwiseAbs().maxCoeff());
  auto add = [&](const std::vector<int>& cols) {
    const int r = static_cast<int>(cols.size());
    if (r < 1 || r >= k) return;
    Matrix p = Matrix::Zero(k, k);
    for (int c : cols) p += u.col(c) * u.col(c).adjoint();
    out.push_back(hermitian_part(p));
  };
  std::vector<int> pos, neg;
  for (int i = 0; i < k; ++i) {
    if (ev(i) > 1e-8 * scale) pos.push_back(i);
    if (ev(i) < -1e-8 * scale) neg.push_back(i);
  }
  add(pos);
  add(neg);
  std::vector<int> cumulative;
  int start = k - 1;
  while (start >= 0) {
    std::vector<int> cluster{start};
    int next = start - 1;
    while (next >= 0 && ev(next + 1) - ev(next) <= 1e-8 * scale) cluster.push_back(next--);
    add(cluster);
    cumulative.insert(cumulative.end(), cluster.begin(), cluster.end());
    add(cumulative);
    start = next;
  }
}

}  // namespace

ProbeReport fully_indecomposable_probe(const BipartiteOperator& g, int trials, std::uint64_t seed,
                                       const Tolerances& tol) {
  if (!psd_check(g, tol.psd, tol).is_psd) throw Error(ErrorCode::NotPSD, "probe input must be PSD");
  if (g.dim_a() != g.dim_b()) throw Error(ErrorCode::DimensionMismatch, "probe needs dim_a == dim_b");
  const int k = g.dim_a();

  std::vector<Matrix> candidates;
  const HermitianBasisMatrix fg = fg_matrix(g, tol);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(0.5 * (fg.matrix + fg.matrix.transpose()));
  for (Eigen::Index i = solver.eigenvalues().size() - 1; i >= 0; --i) {
    spectral_projections(from_hermitian_coordinates(solver.eigenvectors().col(i), k), candidates);
  }
  Rng rng(seed);
  for (int t = 0; t < trials && k > 1; ++t) {
    const int r = 1 + rng.uniform_int(k - 1);
    const Matrix u = random_unitary(rng, k).leftCols(r);
    candidates.push_back(hermitian_part(u * u.adjoint()));
  }

  ProbeReport report;
  bool ambiguous = false;
  for (const Matrix& x : candidates) {
    ++report.probes;
    const int rx = numerical_rank(x, tol.rank);
    const LocalOperator gx = g_apply(g, LocalOperator(x));
    SpectralData spec = hermitian_eig(hermitian_part(gx.matrix()), tol);
    const double top = std::max(spec.eigenvalues(0), 0.0);
    int strict = 0, loose = 0;
    for (Eigen::Index i = 0; i < spec.eigenvalues.size(); ++i) {
      if (spec.eigenvalues(i) > tol.rank * top) ++strict;
      if (spec.eigenvalues(i) > 1e-4 * top) ++loose;
    }
    if (top <= 0.0) strict = loose = 0;
    if (strict <= rx) {
      const int ry = k - rx;
      const Matrix kernel = spec.eigenvectors.rightCols(ry);
      DecomposabilityWitness w{LocalOperator(x), LocalOperator(hermitian_part(kernel * kernel.adjoint())),
                               rx, ry, 0.0};
      w.overlap = (gx.matrix() * w.y.matrix()).trace().real();
      report.witness = std::move(w);
      report.verdict = ProbeVerdict::DecomposableWitness;
      return report;
    }
    if (loose <= rx) ambiguous = true;
  }
  report.verdict = ambiguous ? ProbeVerdict::Inconclusive : ProbeVerdict::IndecomposableLikely;
  return report;
}

}  // namespace triad
