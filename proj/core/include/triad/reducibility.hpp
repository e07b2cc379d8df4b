#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "triad/criteria.hpp"
#include "triad/tensor.hpp"

namespace triad {

struct PsdEigenvector {
  bool found = false;          ///< a singular PSD eigenvector was found
  LocalOperator x;             ///< the eigenvector, or the PD top eigenvector when !found
  double eigenvalue = 0.0;
  int rank = 0;
  bool top_positive_definite = false;
  int power_iterations = 0;
  bool dense_fallback = false;
};

/// PSD eigenvector of F o G. Starts with power iteration from Id/sqrt(k);
/// falls back to the projection of Id onto the top eigenspace of the dense
/// F o G matrix when the spectral gap is below 1e-12. When the top eigenvector
/// is positive definite every PSD eigenvector lies in the top eigenspace, which
/// is then searched for a singular PSD element; if there is none the result
/// has found = false and the top eigenvector serves as the full-rank witness.
PsdEigenvector find_psd_eigenvector(const BipartiteOperator& g, const Tolerances& tol = {});

struct SplitCertificate {
  LocalOperator x;
  double eigenvalue = 0.0;
  /// ||F(G(x)) - eigenvalue x||_F
  double eigen_residual = 0.0;
  LocalOperator proj_v, proj_w, proj_v_perp, proj_w_perp;
  /// ||g - (V(x)W) g (V(x)W) - (V'(x)W') g (V'(x)W')||_F
  double residual = 0.0;
  /// ||(V(x)W) g (V'(x)W')||_F
  double cross_residual = 0.0;
};

/// Complete-reducibility split along Im(x) and Im(G(x)). Throws
/// FullRankEigenvector for rank(x) = k and CompleteReducibilityViolation when
/// the residual exceeds split * ||g||_F.
SplitCertificate split(const BipartiteOperator& g, const LocalOperator& x, const Tolerances& tol = {});

enum class LeafStatus { Internal, WeaklyIrreducible, NotSplitFound };

std::string_view to_string(LeafStatus s);

struct DecompositionTree {
  /// Node state in local coordinates: the compression of the root component
  /// to the supports of its marginals.
  BipartiteOperator state;
  /// Isometries from the local coordinates into the root factors.
  Matrix embed_a;
  Matrix embed_b;
  int depth = 0;
  LeafStatus status = LeafStatus::WeaklyIrreducible;
  std::optional<SplitCertificate> certificate;
  std::vector<DecompositionTree> children;
  /// Present on leaves that are product states; operators in root coordinates.
  std::optional<std::vector<ProductTerm>> separable_decomposition;

  bool is_leaf() const noexcept { return children.empty(); }
  /// (Ea (x) Eb) state (Ea (x) Eb)* in root coordinates.
  Matrix embedded() const;
  std::vector<const DecompositionTree*> leaves() const;
};

/// Recursive splitting of a triad-flagged state. max_depth <= 0 means k.
DecompositionTree decompose(const BipartiteOperator& g, int max_depth = 0, const Tolerances& tol = {});

/// ||sum of embedded leaves - root||_F.
double tree_reconstruction_residual(const DecompositionTree& tree);

struct EqualSchmidtCertificate {
  bool applies = false;
  double coefficient_spread = 0.0;
  int coefficient_count = 0;
  /// Set when applies: the criterion that certifies separability.
  std::optional<std::string> certificate;
};

EqualSchmidtCertificate equal_schmidt_certificate(const BipartiteOperator& g,
                                                  const TriadClassification& c,
                                                  const Tolerances& tol = {});

struct RankBoundReport {
  int rank = 0;
  int rank_a = 0;
  int rank_b = 0;
  bool applies = false;  ///< a triad flag is set
  bool bound_holds = false;
};

/// rank(g) >= max(rank(g_A), rank(g_B)).
RankBoundReport rank_bound_check(const BipartiteOperator& g, const TriadClassification& c,
                                 const Tolerances& tol = {});

struct FailureReport {
  std::string step;
  std::string message;
  std::map<std::string, double> residuals;
};

struct ExtractionResult {
  bool ok = false;
  std::vector<ProductTerm> decomposition;
  double reconstruction_residual = 0.0;
  std::optional<FailureReport> failure;
};

/// Separable decomposition of a triad state with rank(g) = rank(g_A) =
/// rank(g_B) = k. Filters to marginals Id/k, picks a rank-deficient vector in
/// the 1/k eigenspace as a root of det(V1 + a V2), splits along it and
/// recurses; the filters are undone at the end. Throws PreconditionNotMet
/// when the class or rank conditions fail.
ExtractionResult minimal_rank_extract(const BipartiteOperator& g, const TriadClassification& c,
                                      const Tolerances& tol = {});

}  // namespace triad
