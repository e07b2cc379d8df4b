#include "triad/reducibility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "triad/contractions.hpp"
#include "triad/filter.hpp"
#include "triad/schmidt.hpp"

namespace triad {

namespace {

bool is_singular_psd(const Matrix& h, int k, const Tolerances& tol, int* rank_out = nullptr) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  const double top = ev(k - 1);
  if (!(top > 0.0)) return false;
  if (ev(0) < -tol.psd * top) return false;
  int rank = 0;
  for (int i = 0; i < k; ++i)
    if (ev(i) > tol.rank * top) ++rank;
  if (rank_out) *rank_out = rank;
  return rank < k;
}

Matrix normalized_frobenius(const Matrix& x) { return x / x.norm(); }

Matrix compress(const Matrix& state, const Matrix& ba, const Matrix& bb) {
  const Matrix e = kron(ba, bb);
  return hermitian_part(e.adjoint() * state * e);
}

int first_support_index(const Matrix& m) {
  const RealVector diag = m.diagonal().real();
  const double top = diag.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < diag.size(); ++i)
    if (std::abs(diag(i)) > 1e-12 * top) return static_cast<int>(i);
  return static_cast<int>(diag.size());
}

struct Context {
  int max_depth = 0;
  double root_norm = 0.0;
  Tolerances tol;
};

std::optional<DecompositionTree> build_node(const Matrix& state, int ka, int kb, const Matrix& ea,
                                            const Matrix& eb, int depth, const Context& ctx) {
  if (state.norm() <= 1e-13 * ctx.root_norm) return std::nullopt;
  const BipartiteOperator local(ka, kb, state);
  const Matrix ba = range_basis(reduced_a(local).matrix(), ctx.tol.rank);
  const Matrix bb = range_basis(reduced_b(local).matrix(), ctx.tol.rank);
  if (ba.cols() == 0 || bb.cols() == 0) return std::nullopt;

  DecompositionTree node;
  const int ra = static_cast<int>(ba.cols()), rb = static_cast<int>(bb.cols());
  node.state = BipartiteOperator(ra, rb, compress(state, ba, bb));
  node.embed_a = ea * ba;
  node.embed_b = eb * bb;
  node.depth = depth;

  const SchmidtDecomposition sd = schmidt(node.state, ctx.tol);
  if (sd.size() == 1) {
    const double w = node.state.matrix().trace().real();
    const Matrix rho = reduced_a(node.state).matrix() / w;
    const Matrix sigma = reduced_b(node.state).matrix() / w;
    ProductTerm term{w, LocalOperator(hermitian_part(node.embed_a * rho * node.embed_a.adjoint())),
                     LocalOperator(hermitian_part(node.embed_b * sigma * node.embed_b.adjoint()))};
    node.separable_decomposition = std::vector<ProductTerm>{std::move(term)};
    node.status = LeafStatus::WeaklyIrreducible;
    return node;
  }
  if (depth >= ctx.max_depth) {
    node.status = LeafStatus::NotSplitFound;
    return node;
  }
  const PsdEigenvector pe = find_psd_eigenvector(node.state, ctx.tol);
  if (!pe.found) {
    node.status = LeafStatus::WeaklyIrreducible;
    return node;
  }
  SplitCertificate cert = split(node.state, pe.x, ctx.tol);
  const Matrix p1 = kron(cert.proj_v.matrix(), cert.proj_w.matrix());
  const Matrix p2 = kron(cert.proj_v_perp.matrix(), cert.proj_w_perp.matrix());
  const Matrix s = node.state.matrix();
  std::vector<DecompositionTree> kids;
  for (const auto& [proj, pv, pw] :
       {std::tuple{p1, cert.proj_v.matrix(), cert.proj_w.matrix()},
        std::tuple{p2, cert.proj_v_perp.matrix(), cert.proj_w_perp.matrix()}}) {
    const Matrix bv = range_basis(pv, ctx.tol.rank);
    const Matrix bw = range_basis(pw, ctx.tol.rank);
    if (bv.cols() == 0 || bw.cols() == 0) continue;
    const Matrix part = compress(proj * s * proj, bv, bw);
    auto child = build_node(part, static_cast<int>(bv.cols()), static_cast<int>(bw.cols()),
                            node.embed_a * bv, node.embed_b * bw, depth + 1, ctx);
    if (child) kids.push_back(std::move(*child));
  }
  std::stable_sort(kids.begin(), kids.end(), [](const DecompositionTree& x, const DecompositionTree& y) {
    return first_support_index(x.embedded()) < first_support_index(y.embedded());
  });
  node.certificate = std::move(cert);
  node.status = LeafStatus::Internal;
  node.children = std::move(kids);
  return node;
}

struct Extraction {
  std::vector<ProductTerm> terms;
  std::optional<FailureReport> failure;
};

FailureReport failure(std::string step, std::string message, std::map<std::string, double> residuals = {}) {
  return FailureReport{std::move(step), std::move(message), std::move(residuals)};
}

Matrix conjugate_by(const Matrix& a, const Matrix& m) { return hermitian_part(m * a * m.adjoint()); }

// Normalized vector in span(v1, v2) whose reshape is singular, as a root of
// det(V1 + a V2) = 0 found through the eigenvalues of V2^{-1} V1.
std::optional<Vector> singular_combination(const Vector& v1, const Vector& v2, int k) {
  const Matrix m1 = reshape_to_matrix(v1, k);
  const Matrix m2 = reshape_to_matrix(v2, k);
  for (int swap = 0; swap < 2; ++swap) {
    const Matrix& a = swap ? m2 : m1;
    const Matrix& b = swap ? m1 : m2;
    const Vector& va = swap ? v2 : v1;
    const Vector& vb = swap ? v1 : v2;
    Eigen::FullPivLU<Matrix> lu(b);
    if (!lu.isInvertible()) continue;
    Eigen::ComplexEigenSolver<Matrix> solver(lu.solve(a));
    if (solver.info() != Eigen::Success) continue;
    std::optional<Vector> best;
    double best_ratio = 1.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
      Vector v = va - solver.eigenvalues()(i) * vb;
      const double n = v.norm();
      if (n < 1e-8) continue;
      v /= n;
      const RealVector s = singular_values(reshape_to_matrix(v, k));
      const double ratio = s(s.size() - 1) / s(0);
      if (ratio < best_ratio) {
        best_ratio = ratio;
        best = v;
      }
    }
    if (best && best_ratio <= 1e-7) return best;
  }
  return std::nullopt;
}

Extraction extract_recursive(const Matrix& state, int k, const Tolerances& tol, int depth) {
  Extraction out;
  const double w = state.trace().real();
  if (k == 1) {
    out.terms.push_back(ProductTerm{w, LocalOperator::identity(1), LocalOperator::identity(1)});
    return out;
  }
  FilterOptions fopt;
  fopt.tol = tol;
  fopt.filter_tol = 1e-12;
  const FilterResult fr = sinkhorn_filter(BipartiteOperator(k, k, state), FilterMode::General, fopt);
  if (!fr.converged && std::max(fr.marginal_residual_a, fr.marginal_residual_b) > 1e-10) {
    out.failure = failure("filter", "marginal scaling did not converge",
                          {{"marginal_residual_a", fr.marginal_residual_a},
                           {"marginal_residual_b", fr.marginal_residual_b}});
    return out;
  }
  const Matrix& d = fr.normal_form.matrix();
  SpectralData spec = hermitian_eig(d, tol);
  const double target = 1.0 / k;
  double spread = 0.0, tail = 0.0;
  for (int i = 0; i < k; ++i) spread = std::max(spread, std::abs(spec.eigenvalues(i) - target) / target);
  for (Eigen::Index i = k; i < spec.eigenvalues.size(); ++i) tail = std::max(tail, std::abs(spec.eigenvalues(i)));
  if (spread > tol.eq || tail > tol.eq * target) {
    out.failure = failure("eigenvalues", "normal form does not have k eigenvalues equal to 1/k",
                          {{"relative_spread", spread}, {"tail", tail}, {"depth", depth}});
    return out;
  }

  std::optional<Vector> v;
  for (int i = 0; i < k && !v; ++i) {
    const RealVector s = singular_values(reshape_to_matrix(spec.eigenvectors.col(i), k));
    if (s(s.size() - 1) <= 1e-7 * s(0)) v = spec.eigenvectors.col(i);
  }
  for (int i = 0; i < k && !v; ++i)
    for (int j = i + 1; j < k && !v; ++j)
      v = singular_combination(spec.eigenvectors.col(i), spec.eigenvectors.col(j), k);
  if (!v) {
    throw Error(ErrorCode::NumericalDegeneracy,
                "no pair of eigenvectors produced a rank-deficient combination");
  }

  Eigen::JacobiSVD<Matrix> svd(reshape_to_matrix(*v, k), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  int m = 0;
  while (m < k && sv(m) > 1e-7 * sv(0)) ++m;
  const Matrix um = svd.matrixU().leftCols(m);
  const Matrix x = um * sv.head(m).cast<Complex>().asDiagonal() * um.adjoint();

  SplitCertificate cert;
  try {
    cert = split(fr.normal_form, LocalOperator(hermitian_part(x) / x.norm()), tol);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::CompleteReducibilityViolation) throw;
    out.failure = failure("split", e.what());
    return out;
  }
  const Matrix bv = range_basis(cert.proj_v.matrix(), tol.rank);
  const Matrix bw = range_basis(cert.proj_w.matrix(), tol.rank);
  const Matrix bvp = range_basis(cert.proj_v_perp.matrix(), tol.rank);
  const Matrix bwp = range_basis(cert.proj_w_perp.matrix(), tol.rank);
  if (bv.cols() != m || bw.cols() != m || bvp.cols() != k - m || bwp.cols() != k - m) {
    out.failure = failure("split", "split supports do not have matching ranks",
                          {{"rank_v", static_cast<double>(bv.cols())},
                           {"rank_w", static_cast<double>(bw.cols())},
                           {"m", static_cast<double>(m)}});
    return out;
  }

  const Matrix finv_a = fr.filter_a.matrix().inverse();
  const Matrix finv_b = fr.filter_b.matrix().inverse();
  for (int part = 0; part < 2; ++part) {
    const Matrix& ba = part == 0 ? bv : bvp;
    const Matrix& bb = part == 0 ? bw : bwp;
    const int size = static_cast<int>(ba.cols());
    const Matrix child = compress(d, ba, bb);
    Extraction sub = extract_recursive(child / child.trace().real(), size, tol, depth + 1);
    if (sub.failure) return sub;
    const double share = child.trace().real();
    for (ProductTerm& t : sub.terms) {
      Matrix a = conjugate_by(conjugate_by(t.a.matrix(), ba), finv_a);
      Matrix b = conjugate_by(conjugate_by(t.b.matrix(), bb), finv_b);
      const double ta = a.trace().real(), tb = b.trace().real();
      out.terms.push_back(ProductTerm{t.weight * share * ta * tb * w, LocalOperator(a / ta), LocalOperator(b / tb)});
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(LeafStatus s) {
  switch (s) {
    case LeafStatus::Internal: return "internal";
    case LeafStatus::WeaklyIrreducible: return "weakly_irreducible";
    case LeafStatus::NotSplitFound: return "not_split_found";
  }
  return "internal";
}

PsdEigenvector find_psd_eigenvector(const BipartiteOperator& g, const Tolerances& tol) {
  if (!psd_check(g, tol.psd, tol).is_psd) throw Error(ErrorCode::NotPSD, "input must be PSD");
  const int k = g.dim_a();
  const HermitianBasisMatrix fg = fg_matrix(g, tol);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(0.5 * (fg.matrix + fg.matrix.transpose()));
  const Eigen::Index n = solver.eigenvalues().size();
  RealVector ev = solver.eigenvalues().reverse();
  RealMatrix u = solver.eigenvectors().rowwise().reverse();
  const double top = ev(0);
  if (!(top > 0.0)) throw Error(ErrorCode::ZeroMatrix, "F o G vanishes");

  PsdEigenvector out;
  const double gap = n > 1 ? ev(0) - ev(1) : top;
  Matrix x;
  if (gap > 1e-12 * top) {
    x = Matrix::Identity(k, k) / std::sqrt(static_cast<double>(k));
    bool settled = false;
    for (int it = 1; it <= 20000; ++it) {
      Matrix y = hermitian_part(fg_apply(g, LocalOperator(x)).matrix());
      y /= y.norm();
      out.power_iterations = it;
      const double step = (y - x).norm();
      x = std::move(y);
      if (step <= 1e-14) {
        settled = true;
        break;
      }
    }
    if (!settled) out.dense_fallback = true;
  } else {
    out.dense_fallback = true;
  }
  Eigen::Index cluster = 1;
  while (cluster < n && ev(0) - ev(cluster) <= 1e-9 * top) ++cluster;
  if (out.dense_fallback) {
    RealVector id = RealVector::Zero(n);
    id(0) = std::sqrt(static_cast<double>(k));
    RealVector c = u.leftCols(cluster) * (u.leftCols(cluster).transpose() * id);
    x = normalized_frobenius(from_hermitian_coordinates(c, k));
  }
  x = hermitian_part(x);
  out.eigenvalue = (x * fg_apply(g, LocalOperator(x)).matrix()).trace().real() / x.squaredNorm();

  int rank = 0;
  if (is_singular_psd(x, k, tol, &rank)) {
    out.found = true;
    out.x = LocalOperator(x);
    out.rank = rank;
    return out;
  }
  out.top_positive_definite = true;
  out.x = LocalOperator(x);
  out.rank = k;

  for (Eigen::Index i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      const Matrix h = from_hermitian_coordinates(sign * u.col(i), k);
      if (is_singular_psd(h, k, tol, &rank)) {
        out.found = true;
        out.x = LocalOperator(hermitian_part(h));
        out.eigenvalue = ev(i);
        out.rank = rank;
        return out;
      }
    }
  }

  // A PSD eigenvector outside the top eigenspace would be trace-orthogonal to
  // the positive definite x, so only the top cluster needs searching.
  if (cluster > 1) {
    const RealVector cx = hermitian_coordinates(x);
    RealMatrix basis = u.leftCols(cluster);
    RealMatrix comp = basis - cx * (cx.transpose() * basis) / cx.squaredNorm();
    Eigen::JacobiSVD<RealMatrix> svd(comp, Eigen::ComputeThinU);
    const RealMatrix& q = svd.matrixU();
    const Matrix xh = hermitian_function(x, [](double l) { return l > 0.0 ? 1.0 / std::sqrt(l) : 0.0; }, tol);
    for (Eigen::Index j = 0; j + 1 < cluster; ++j) {
      const Matrix h = from_hermitian_coordinates(q.col(j), k);
      const Matrix mm = hermitian_part(xh * h * xh);
      Eigen::SelfAdjointEigenSolver<Matrix> ms(mm, Eigen::EigenvaluesOnly);
      const double mu = ms.eigenvalues()(0);
      if (!(mu < 0.0)) continue;
      const Matrix cand = hermitian_part(x - h / mu);
      if (is_singular_psd(cand, k, tol, &rank)) {
        const Matrix cn = normalized_frobenius(cand);
        out.found = true;
        out.x = LocalOperator(cn);
        out.eigenvalue = (cn * fg_apply(g, LocalOperator(cn)).matrix()).trace().real();
        out.rank = rank;
        return out;
      }
    }
  }
  return out;
}

SplitCertificate split(const BipartiteOperator& g, const LocalOperator& x, const Tolerances& tol) {
  const int k = g.dim_a(), m = g.dim_b();
  if (x.dim() != k) throw Error(ErrorCode::DimensionMismatch, "split: x must act on the first factor");
  const int rank = numerical_rank(x.matrix(), tol.rank);
  if (rank >= k) throw Error(ErrorCode::FullRankEigenvector, "split needs a singular eigenvector");
  if (rank == 0) throw Error(ErrorCode::InvalidArgument, "split needs a nonzero eigenvector");

  SplitCertificate c;
  c.x = x;
  const LocalOperator fgx = fg_apply(g, x);
  c.eigenvalue = (x.matrix().adjoint() * fgx.matrix()).trace().real() / x.matrix().squaredNorm();
  c.eigen_residual = (fgx.matrix() - c.eigenvalue * x.matrix()).norm();
  const Matrix v = range_projection(x.matrix(), tol.rank);
  const Matrix w = range_projection(g_apply(g, x).matrix(), tol.rank);
  c.proj_v = LocalOperator(v);
  c.proj_w = LocalOperator(w);
  c.proj_v_perp = LocalOperator(Matrix::Identity(k, k) - v);
  c.proj_w_perp = LocalOperator(Matrix::Identity(m, m) - w);
  const Matrix p1 = kron(v, w);
  const Matrix p2 = kron(c.proj_v_perp.matrix(), c.proj_w_perp.matrix());
  const Matrix& s = g.matrix();
  c.residual = (s - p1 * s * p1 - p2 * s * p2).norm();
  c.cross_residual = (p1 * s * p2).norm();
  if (c.residual > tol.split * s.norm()) {
    std::ostringstream msg;
    msg << "split residual " << c.residual << " exceeds split_tol * ||g||";
    throw Error(ErrorCode::CompleteReducibilityViolation, msg.str());
  }
  return c;
}

Matrix DecompositionTree::embedded() const {
  const Matrix e = kron(embed_a, embed_b);
  return e * state.matrix() * e.adjoint();
}

std::vector<const DecompositionTree*> DecompositionTree::leaves() const {
  std::vector<const DecompositionTree*> out;
  if (is_leaf()) {
    out.push_back(this);
    return out;
  }
  for (const DecompositionTree& c : children) {
    auto sub = c.leaves();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

DecompositionTree decompose(const BipartiteOperator& g, int max_depth, const Tolerances& tol) {
  const TriadClassification c = classify(g, tol);
  if (!c.any_triad() || !psd_check(g, tol.psd, tol).is_psd) {
    throw Error(ErrorCode::PreconditionNotMet, "decompose needs a PSD PPT, SPC or invariant input");
  }
  Context ctx;
  ctx.max_depth = max_depth > 0 ? max_depth : g.dim_a();
  ctx.root_norm = g.matrix().norm();
  ctx.tol = tol;
  auto root = build_node(hermitian_part(g.matrix()), g.dim_a(), g.dim_b(),
                         Matrix::Identity(g.dim_a(), g.dim_a()), Matrix::Identity(g.dim_b(), g.dim_b()),
                         0, ctx);
  if (!root) throw Error(ErrorCode::ZeroMatrix, "decompose: zero input");
  return std::move(*root);
}

double tree_reconstruction_residual(const DecompositionTree& tree) {
  Matrix sum = Matrix::Zero(tree.embed_a.rows() * tree.embed_b.rows(), tree.embed_a.rows() * tree.embed_b.rows());
  for (const DecompositionTree* leaf : tree.leaves()) sum += leaf->embedded();
  return (sum - tree.embedded()).norm();
}

EqualSchmidtCertificate equal_schmidt_certificate(const BipartiteOperator& g, const TriadClassification& c,
                                                  const Tolerances& tol) {
  EqualSchmidtCertificate out;
  const SchmidtDecomposition sd = schmidt(g, tol);
  out.coefficient_count = sd.size();
  if (sd.size() == 0) return out;
  const double s1 = sd.coefficients(0);
  out.coefficient_spread = (sd.coefficients.maxCoeff() - sd.coefficients.minCoeff()) / s1;
  out.applies = c.any_triad() && out.coefficient_spread <= tol.eq;
  if (out.applies) {
    out.certificate = "separable: triad state with equal non-null Schmidt coefficients";
  }
  return out;
}

RankBoundReport rank_bound_check(const BipartiteOperator& g, const TriadClassification& c, const Tolerances& tol) {
  RankBoundReport out;
  out.rank = numerical_rank(g.matrix(), tol.rank);
  out.rank_a = numerical_rank(reduced_a(g).matrix(), tol.rank);
  out.rank_b = numerical_rank(reduced_b(g).matrix(), tol.rank);
  out.applies = c.any_triad();
  out.bound_holds = out.rank >= std::max(out.rank_a, out.rank_b);
  return out;
}

ExtractionResult minimal_rank_extract(const BipartiteOperator& g, const TriadClassification& c,
                                      const Tolerances& tol) {
  if (!c.any_triad()) throw Error(ErrorCode::PreconditionNotMet, "minimal_rank_extract needs a triad state");
  if (g.dim_a() != g.dim_b()) throw Error(ErrorCode::DimensionMismatch, "minimal_rank_extract needs dim_a == dim_b");
  const int k = g.dim_a();
  if (!psd_check(g, tol.psd, tol).is_psd) throw Error(ErrorCode::NotPSD, "input must be PSD");
  const int r = numerical_rank(g.matrix(), tol.rank);
  const int ra = numerical_rank(reduced_a(g).matrix(), tol.rank);
  const int rb = numerical_rank(reduced_b(g).matrix(), tol.rank);
  if (r != k || ra != k || rb != k) {
    std::ostringstream msg;
    msg << "needs rank(g) = rank(g_A) = rank(g_B) = k = " << k << ", got " << r << ", " << ra << ", " << rb;
    throw Error(ErrorCode::PreconditionNotMet, msg.str());
  }
  const double trace = g.matrix().trace().real();
  Extraction ex = extract_recursive(hermitian_part(g.matrix()) / trace, k, tol, 0);
  ExtractionResult out;
  if (ex.failure) {
    out.failure = std::move(ex.failure);
    return out;
  }
  for (ProductTerm& t : ex.terms) t.weight *= trace;
  out.decomposition = std::move(ex.terms);
  out.reconstruction_residual = (mixture(out.decomposition).matrix() - g.matrix()).norm();
  double min_eig = 0.0;
  for (const ProductTerm& t : out.decomposition) {
    min_eig = std::min({min_eig, psd_check(t.a, tol.psd, tol).min_eigenvalue,
                        psd_check(t.b, tol.psd, tol).min_eigenvalue});
  }
  if (out.reconstruction_residual > 1e-7 * std::max(1.0, g.matrix().norm()) || min_eig < -1e-9) {
    out.failure = failure("reconstruction", "decomposition does not reproduce the input",
                          {{"reconstruction_residual", out.reconstruction_residual}, {"min_factor_eigenvalue", min_eig}});
    return out;
  }
  out.ok = true;
  return out;
}

}  // namespace triad
