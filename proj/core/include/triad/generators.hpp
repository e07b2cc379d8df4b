#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "triad/rng.hpp"
#include "triad/tensor.hpp"

namespace triad {

/// G G* / tr(G G*) with G a k^2 x rank complex Gaussian matrix.
BipartiteOperator random_density(int k, int rank, std::uint64_t seed);

struct SeparableSample {
  BipartiteOperator state;
  std::vector<ProductTerm> decomposition;
};

/// sum_i w_i x_i x_i* (x) y_i y_i* with Dirichlet(1,...,1) weights and
/// unit vectors x_i, y_i.
SeparableSample random_separable(int k, int terms, std::uint64_t seed);

/// (L (x) L)(sum_i a_i B_i (x) B_i)(L (x) L)* / trace with an orthonormal
/// Hermitian family B_1 = Id/sqrt(k), B_2, ..., positive a_i resampled until
/// the sum is PSD, and a random invertible L.
BipartiteOperator random_spc(int k, std::uint64_t seed);

/// Cyclic projection onto {Hermitian}, {R(g) = g}, the PSD cone and trace
/// one, started at random_density(k, k^2, seed). Stops at ||R(g) - g||_F
/// <= 1e-10 or after 5000 sweeps.
BipartiteOperator random_invariant(int k, std::uint64_t seed);

/// Rejection sampling of full-rank densities on the PPT test for k <= 3.
/// For k = 3 the Gaussian factor is k^2 x 3k^2 (induced measure). For
/// k >= 4 a separable mixture plus Gaussian PSD noise is clipped alternately
/// onto the PSD and PPT cones.
BipartiteOperator random_ppt(int k, std::uint64_t seed);

/// classical_diag, bell, identity_plus_u, werner(alpha) (also werner:alpha).
BipartiteOperator canonical(const std::string& name, int k);

/// Werner-type state (Id - alpha F)/(k^2 - alpha k), alpha in [-1, 1].
BipartiteOperator werner(int k, double alpha);

/// Random invertible matrix Id + scale * Gaussian / sqrt(k), redrawn until its
/// condition number is below 1e3.
Matrix random_invertible(Rng& rng, int k, double scale = 0.5);

/// Unnormalized u = sum_i e_i (x) e_i.
Vector max_entangled_vector(int k);

}  // namespace triad
