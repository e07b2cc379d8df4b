#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triad/schmidt.hpp"
#include "triad/tensor.hpp"

namespace triad {

enum class FilterMode { General, Symmetric, Conjugate, Left };

std::string_view to_string(FilterMode mode);
FilterMode parse_filter_mode(const std::string& name);

struct FilterIteration {
  int iteration = 0;
  double residual_a = 0.0;
  double residual_b = 0.0;
  /// -2 log|det filter_a| - 2 log|det filter_b|, before trace normalization.
  double potential = 0.0;
};

/// normal_form = (filter_a (x) filter_b) g (filter_a (x) filter_b)* / tr(g),
/// with the trace-one scalar already folded into the filters.
struct FilterResult {
  FilterMode mode = FilterMode::General;
  LocalOperator filter_a;
  LocalOperator filter_b;
  BipartiteOperator normal_form;
  double marginal_residual_a = 0.0;
  double marginal_residual_b = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Symmetric mode: ||R(d^Gamma) - R(d^Gamma)*||_F plus the negative part of
  /// its spectrum. Conjugate mode: ||R(d) - d||_F. Zero otherwise.
  double shape_residual = 0.0;
  /// Largest per-step increase of the potential (general mode is monotone).
  double max_potential_increase = 0.0;
  SchmidtDecomposition schmidt_of_normal_form;
  std::vector<FilterIteration> log;
};

struct FilterOptions {
  double filter_tol = 1e-9;
  int max_iter = 10000;
  double max_condition = 1e12;
  Tolerances tol{};
};

/// Local filtering to the normal form with both marginals Id/k.
///   general:   alternating (k d_A)^{-1/2} (x) Id and Id (x) (m d_B)^{-1/2};
///   symmetric: P (x) P with P = (k d_A)^{-1/4}, for SPC inputs;
///   conjugate: P (x) conj(P), same P, for realignment-invariant inputs;
///   left:      the conjugate scaling of g * F conj(g) F, applied to the first
///              factor of g only, then a Hermitian Schmidt form of the result.
/// In left mode the marginal residuals are those of the auxiliary scaling.
FilterResult sinkhorn_filter(const BipartiteOperator& g, FilterMode mode,
                             const FilterOptions& options = {});

struct StochasticityReport {
  double forward_residual = 0.0;
  double adjoint_residual = 0.0;
  bool doubly_stochastic = false;
};

/// With V = Id/sqrt(k) and g scaled to trace one: ||G(V) - V/k||_F and
/// ||F(V) - V/k||_F.
StochasticityReport doubly_stochastic_check(const BipartiteOperator& g, const Tolerances& tol = {});

enum class ProbeVerdict { IndecomposableLikely, DecomposableWitness, Inconclusive };

std::string_view to_string(ProbeVerdict v);

struct DecomposabilityWitness {
  LocalOperator x;
  LocalOperator y;
  int rank_x = 0;
  int rank_y = 0;
  double overlap = 0.0;  ///< tr(G(X) Y)
};

struct ProbeReport {
  ProbeVerdict verdict = ProbeVerdict::Inconclusive;
  std::optional<DecomposabilityWitness> witness;
  int probes = 0;
};

/// Randomized search for PSD X, Y != 0 with tr(G(X) Y) = 0 and
/// rank X + rank Y = k. Candidates are spectral projections built from the
/// eigenvectors of the F o G matrix plus `trials` random projections.
ProbeReport fully_indecomposable_probe(const BipartiteOperator& g, int trials,
                                       std::uint64_t seed = 0, const Tolerances& tol = {});

}  // namespace triad
