#pragma once

// The Z/4-valued character of the theta group.
//
// Strategy: reduce gamma mod 2 into the orthogonal group of (Vbar, q),
// factor the reduction into orthogonal transvections, lift the factors,
// and absorb the level-2 remainder through the linear form induced by q
// on symmetric 2-tensors. The character is pinned by three properties:
// it restricts to 2*qtilde on the kernel of reduction, it reduces to the
// Dickson invariant mod 2, and every anisotropic transvection maps to 1.

#include <cstdint>
#include <vector>

#include "thetamult/symplectic.hpp"

namespace thetamult {

struct TransvectionWord {
  // Ordered list; the associated element is the product t_{v1} ... t_{vk}.
  std::vector<Z4Vector> vectors;
  int length() const { return static_cast<int>(vectors.size()); }
};

// Element of Sigma^2(Vbar) in the basis {e_i . e_j}, stored as a symmetric
// matrix. Construction enforces symmetry.
struct SymmetricTensor2 {
  F2Matrix M;
  explicit SymmetricTensor2(const F2Matrix& m);
};

// Factor an orthogonal t on Vbar into transvections tau_v (q(v) = 1),
// tau_{v1} ... tau_{vk} = t. Breadth-first search over the Cayley graph,
// memoized, for g <= 3; a fixed-space-increasing greedy reduction beyond.
// The generator_order_seed shuffles the generator list, giving independent
// factorizations of the same element for cross-checks.
//
// Throws NotOrthogonal if t does not preserve q, SearchExhausted if t is
// not a product of transvections. The latter is a genuine phenomenon in
// exactly one case in the envelope: the rank-4 plus-type group over F2,
// where the transvections generate an index-2 subgroup.
std::vector<F2Vector> factor_orthogonal(const QuadraticForm& form,
                                        const F2Matrix& t,
                                        uint64_t generator_order_seed = 0);

// Size of the transvection-generated subgroup of O(Vbar, q); exposed for
// the coverage diagnostics (g <= 3).
size_t transvection_subgroup_order(const QuadraticForm& form);

// Linear form on symmetric 2-tensors induced by q:
// sum_i M_ii q(e_i) + sum_{i<j} M_ij psibar(e_i, e_j).
int qtilde(const QuadraticForm& form, const SymmetricTensor2& tensor);

// Character on the level-2 kernel: delta = I + 2 beta maps to
// 2 * qtilde(beta Jbar). Returns 0 or 2. Throws NotInGamma2 when delta is
// not congruent to I mod 2, AsymmetricTensor when beta Jbar fails the
// symmetry that psi-preservation forces.
int lambda_gamma2(const SymplecticSpace& space, const QuadraticForm& form,
                  const Z4Matrix& delta);

// The character itself. Throws NotMember on non-members. When the mod-2
// reduction is outside the transvection-generated subgroup (the rank-4
// plus-type exception), the value is computed through the direct-sum
// embedding gamma (+) I, which leaves the character unchanged.
int lambda(const SymplecticSpace& space, const QuadraticForm& form,
           const Z4Matrix& gamma);

struct LambdaReport {
  int lambda = 0;
  int dickson = 0;
  TransvectionWord word;  // factorization actually used (possibly embedded)
};

// lambda plus the data the CLI reports.
LambdaReport lambda_report(const SymplecticSpace& space,
                           const QuadraticForm& form, const Z4Matrix& gamma);

struct CharacterTable {
  // Entries sorted by matrix bytes; lambda values alongside.
  std::vector<std::pair<Z4Matrix, int>> entries;
  // -1 when the matrix is not in the table.
  int lambda_of(const Z4Matrix& m) const;
  size_t size() const { return entries.size(); }
};

// Full table at g = 1: the 16-element even group (closure of S, T^2 and
// the transvection at (1,1)) or the 48-element odd group (closure of S, T).
CharacterTable character_table_g1(Parity parity);

// lambda of the block-diagonal sum acting on (V1 (+) V2, q1 (+) q2).
// Equals lambda(gamma1) + lambda(gamma2) mod 4.
int lambda_direct_sum(const SymplecticSpace& space1, const QuadraticForm& form1,
                      const Z4Matrix& gamma1, const SymplecticSpace& space2,
                      const QuadraticForm& form2, const Z4Matrix& gamma2);

}  // namespace thetamult
