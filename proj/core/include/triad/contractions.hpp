#pragma once

#include <array>
#include <string>
#include <vector>

#include "triad/tensor.hpp"

namespace triad {

/// gamma^Gamma: transpose of the second factor.
/// out[(i,j),(p,q)] = in[(i,q),(p,j)].
BipartiteOperator partial_transpose(const BipartiteOperator& g);

/// Transpose of the first factor. out[(i,j),(p,q)] = in[(p,j),(i,q)].
BipartiteOperator left_transpose(const BipartiteOperator& g);

/// Realignment R, defined for k = m. out[(i,j),(p,q)] = in[(i,p),(j,q)], so
/// R(ab^t (x) cd^t) = ac^t (x) bd^t.
BipartiteOperator realign(const BipartiteOperator& g);

/// Rectangular realignment of a k x m operator: a k^2 x m^2 matrix whose rows
/// are indexed by (i,p) and columns by (j,q). Coincides with realign() for
/// k = m; used for CCNR on unequal factors.
Matrix realign_rectangular(const BipartiteOperator& g);

/// Swap operator on C^k (x) C^k.
BipartiteOperator flip(int k);

/// Generalised Hadamard product. g lives on M_m (x) M_k, d on M_k (x) M_s and
/// the result on M_m (x) M_s:
///   (g * d)[(a,b),(c,e)] = sum_{x,y} g[(a,x),(c,y)] d[(x,b),(y,e)].
BipartiteOperator star_product(const BipartiteOperator& g, const BipartiteOperator& d);

/// Permutation of the four tensor slots (row A, column A, row B, column B).
/// images[s] is the 0-based slot whose vector lands in slot s, so that
/// L(v0 v1^t (x) v2 v3^t) = v_{img[0]} v_{img[1]}^t (x) v_{img[2]} v_{img[3]}^t.
class SlotPermutation {
 public:
  SlotPermutation() = default;
  explicit SlotPermutation(std::array<int, 4> images);

  static SlotPermutation identity() { return SlotPermutation(); }
  /// Transposition of 1-based slots a and b, matching cycle notation (ab).
  static SlotPermutation transposition(int a, int b);
  /// Parses cycle notation such as "(23)", "(12)(34)", "(234)" or "e".
  static SlotPermutation parse(const std::string& cycles);
  static std::vector<SlotPermutation> all();

  const std::array<int, 4>& images() const noexcept { return images_; }
  int operator[](int slot) const { return images_.at(static_cast<std::size_t>(slot)); }

  /// (this o other)(s) = this(other(s)).
  SlotPermutation compose(const SlotPermutation& other) const;

  std::string to_string() const;

  friend bool operator==(const SlotPermutation&, const SlotPermutation&) = default;

 private:
  std::array<int, 4> images_{0, 1, 2, 3};
};

/// The linear contraction L_sigma as a direct index permutation. Requires the
/// resulting blocks to be square; for k != m only permutations that keep the
/// slot pairs inside their factor are admissible.
BipartiteOperator contraction_by_permutation(const SlotPermutation& sigma,
                                             const BipartiteOperator& g);

/// Residual of one realignment identity, in Frobenius norm.
struct IdentityCheck {
  std::string name;
  double residual = 0.0;
};

/// Inputs for the nine realignment identities. All operators act on
/// M_k (x) M_k; v and w live in C^k (x) C^k.
struct IdentityInputs {
  BipartiteOperator gamma;
  BipartiteOperator delta;
  LocalOperator v_op, w_op, m_op, n_op;
  Vector v, w;
};

/// Evaluates, in order:
///  1. R(v w^t) = V (x) W              2. R(R(g)) = g
///  3. R((V(x)W) g (M(x)N)) = (V(x)M^t) R(g) (W^t(x)N)
///  4. R(gF)F = g^Gamma                5. R(g^Gamma) = R(g)F
///  6. R(gF) = R(g)^Gamma              7. R(g^Gamma)^Gamma = gF
///  8. R(g * d) = R(g) R(d)            9. R(F conj(g) F) = R(g)*
std::vector<IdentityCheck> realignment_identities(const IdentityInputs& in);

/// Row-major reshape of a vector in C^k (x) C^k into a k x k matrix.
Matrix reshape_to_matrix(const Vector& v, int k);
Vector reshape_to_vector(const Matrix& m);

}  // namespace triad
