#pragma once

#include <string>

#include "triad/tensor.hpp"

namespace triad {

struct TriadClassification {
  bool is_state = false;
  bool ppt = false;
  bool spc = false;
  bool invariant = false;
  double ccnr_value = 0.0;

  double trace = 0.0;
  double min_eig_state = 0.0;
  double min_eig_partial_transpose = 0.0;
  /// Minimum eigenvalue of the Hermitian part of R(g^Gamma).
  double min_eig_realigned_pt = 0.0;
  /// ||R(g^Gamma) - R(g^Gamma)*||_F / ||R(g^Gamma)||_F.
  double realigned_pt_hermiticity = 0.0;
  /// ||R(g) - g||_F.
  double invariance_residual = 0.0;

  bool any_triad() const noexcept { return ppt || spc || invariant; }
};

TriadClassification classify(const BipartiteOperator& g, const Tolerances& tol = {});

/// ||R(g)||_1 > 1 + tol.ccnr. Sound but incomplete entanglement test.
bool ccnr_entanglement_flag(const BipartiteOperator& g, const Tolerances& tol = {});

/// One spectral-norm inequality lhs <= rhs. For the three-way bounds rhs is
/// min(op_norm_a, op_norm_b, op_norm_realign) and lhs the norm of the state
/// (or of its partial transpose). For the realignment bound lhs is
/// ||R(g)||^2 and rhs is ||g_A|| ||g_B||.
struct BoundReport {
  std::string kind;
  double op_norm_state = 0.0;
  double op_norm_a = 0.0;
  double op_norm_b = 0.0;
  double op_norm_realign = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool bound_holds = false;
};

BoundReport bound_gamma_pt(const BipartiteOperator& g, const Tolerances& tol = {});
BoundReport bound_realign_sq(const BipartiteOperator& g, const Tolerances& tol = {});
BoundReport bound_triad(const BipartiteOperator& g, const TriadClassification& c,
                        const Tolerances& tol = {});

struct PptPairReport {
  bool both_ppt = false;
  double realign_distance = 0.0;
  /// realign_distance / ||g||_F.
  double relative_distance = 0.0;
};

PptPairReport ppt_pair_forces_invariance(const BipartiteOperator& g, const Tolerances& tol = {});

}  // namespace triad
