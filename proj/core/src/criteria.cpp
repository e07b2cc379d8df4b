#include "triad/criteria.hpp"

#include <algorithm>
#include <cmath>

#include "triad/contractions.hpp"
#include "triad/schmidt.hpp"

namespace triad {

namespace {

void require_square_factors(const BipartiteOperator& g) {
  if (g.dim_a() != g.dim_b()) {
    throw Error(ErrorCode::DimensionMismatch, "triad classes are defined for dim_a == dim_b");
  }
}

void require_psd(const BipartiteOperator& g, const Tolerances& tol) {
  const PsdReport r = psd_check(g, tol.psd, tol);
  if (!r.is_psd) throw Error(ErrorCode::NotPSD, "operator is not positive semidefinite");
}

bool holds(double margin, double rhs, const Tolerances& tol) {
  return margin >= -tol.bound * std::max(1.0, std::abs(rhs));
}

BoundReport local_norms(const BipartiteOperator& g) {
  BoundReport r;
  r.op_norm_a = operator_norm(reduced_a(g).matrix());
  r.op_norm_b = operator_norm(reduced_b(g).matrix());
  r.op_norm_realign = operator_norm(realign_rectangular(g));
  return r;
}

}  // namespace

TriadClassification classify(const BipartiteOperator& g, const Tolerances& tol) {
  require_square_factors(g);
  TriadClassification c;
  c.trace = g.matrix().trace().real();

  const PsdReport state = psd_check(g, tol.psd, tol);
  c.min_eig_state = state.min_eigenvalue;
  c.is_state = state.is_psd && std::abs(c.trace - 1.0) <= tol.trace;

  const BipartiteOperator pt = partial_transpose(g);
  const PsdReport ptr = psd_check(pt, tol.psd, tol);
  c.min_eig_partial_transpose = ptr.min_eigenvalue;
  c.ppt = ptr.is_psd;

  const BipartiteOperator rpt = realign(pt);
  c.realigned_pt_hermiticity = hermiticity_residual(rpt.matrix());
  const PsdReport rptr = psd_check(hermitian_part(rpt.matrix()), tol.psd, tol);
  c.min_eig_realigned_pt = rptr.min_eigenvalue;
  c.spc = rptr.is_psd && c.realigned_pt_hermiticity <= tol.herm;

  const BipartiteOperator r = realign(g);
  c.invariance_residual = (r.matrix() - g.matrix()).norm();
  c.invariant = c.invariance_residual <= tol.inv * g.matrix().norm();

  c.ccnr_value = trace_norm(r.matrix());
  return c;
}

bool ccnr_entanglement_flag(const BipartiteOperator& g, const Tolerances& tol) {
  require_square_factors(g);
  const PsdReport state = psd_check(g, tol.psd, tol);
  const double tr = g.matrix().trace().real();
  if (!state.is_psd || std::abs(tr - 1.0) > tol.trace) {
    throw Error(ErrorCode::NotAState, "CCNR flag needs a PSD trace-one input");
  }
  return trace_norm(realign(g).matrix()) > 1.0 + tol.ccnr;
}

BoundReport bound_gamma_pt(const BipartiteOperator& g, const Tolerances& tol) {
  require_psd(g, tol);
  BoundReport r = local_norms(g);
  r.kind = "gamma_pt";
  r.op_norm_state = operator_norm(partial_transpose(g).matrix());
  r.lhs = r.op_norm_state;
  r.rhs = std::min({r.op_norm_a, r.op_norm_b, r.op_norm_realign});
  r.margin = r.rhs - r.lhs;
  r.bound_holds = holds(r.margin, r.rhs, tol);
  return r;
}

BoundReport bound_realign_sq(const BipartiteOperator& g, const Tolerances& tol) {
  require_psd(g, tol);
  BoundReport r = local_norms(g);
  r.kind = "realign_sq";
  r.op_norm_state = operator_norm(g.matrix());
  r.lhs = r.op_norm_realign * r.op_norm_realign;
  r.rhs = r.op_norm_a * r.op_norm_b;
  r.margin = r.rhs - r.lhs;
  r.bound_holds = holds(r.margin, r.rhs, tol);
  return r;
}

BoundReport bound_triad(const BipartiteOperator& g, const TriadClassification& c,
                        const Tolerances& tol) {
  if (!c.any_triad()) {
    throw Error(ErrorCode::PreconditionNotMet, "bound_triad needs a PPT, SPC or invariant input");
  }
  BoundReport r = local_norms(g);
  r.kind = "triad";
  r.op_norm_state = operator_norm(g.matrix());
  r.lhs = r.op_norm_state;
  r.rhs = std::min({r.op_norm_a, r.op_norm_b, r.op_norm_realign});
  r.margin = r.rhs - r.lhs;
  r.bound_holds = holds(r.margin, r.rhs, tol);
  return r;
}

PptPairReport ppt_pair_forces_invariance(const BipartiteOperator& g, const Tolerances& tol) {
  require_square_factors(g);
  require_psd(g, tol);
  PptPairReport out;
  const BipartiteOperator r = realign(g);
  out.realign_distance = (r.matrix() - g.matrix()).norm();
  const double scale = g.matrix().norm();
  out.relative_distance = scale > 0.0 ? out.realign_distance / scale : 0.0;

  const bool g_ppt = psd_check(partial_transpose(g), tol.psd, tol).is_psd;
  bool r_ppt = false;
  if (hermiticity_residual(r.matrix()) <= tol.herm) {
    const bool r_psd = psd_check(r, tol.psd, tol).is_psd;
    const BipartiteOperator rpt = partial_transpose(r);
    r_ppt = r_psd && hermiticity_residual(rpt.matrix()) <= tol.herm &&
            psd_check(rpt, tol.psd, tol).is_psd;
  }
  out.both_ppt = g_ppt && r_ppt;
  return out;
}

}  // namespace triad
