// Oriented isotropic lagrangians over Z/4 and the Johnson-Millson pairing.
//
// A lagrangian here is a rank-g direct summand of (Z/4)^{2g} on which the
// symplectic form vanishes and whose mod-2 reduction is isotropic for the
// quadratic form (even parity only; odd forms admit none). An orientation is
// the class of its ordered bases under determinant-1 change of basis.
#pragma once

#include <vector>

#include "thetamult/errors.hpp"
#include "thetamult/linalg.hpp"
#include "thetamult/symplectic.hpp"

namespace thetamult {

struct OrientedLagrangian {
  SymplecticSpace space;
  QuadraticForm form;
  std::vector<Z4Vector> basis;

  // Validates every invariant; throws std::invalid_argument on failure.
  OrientedLagrangian(const SymplecticSpace& space_, const QuadraticForm& form_,
                     std::vector<Z4Vector> basis_);

  int g() const { return space.g; }

  // Rows are the mod-2 reductions of the basis vectors.
  F2Matrix reduced_rows() const;
};

bool is_oriented_lagrangian(const SymplecticSpace& space,
                            const QuadraticForm& form,
                            const std::vector<Z4Vector>& basis);

// The y-coordinate span <f_1, ..., f_g> with its natural orientation.
OrientedLagrangian standard_lagrangian(const SymplecticSpace& space,
                                       const QuadraticForm& form);

// Change of basis: new_basis_j = sum_i C(i,j) * basis_i. C must be invertible
// mod 4; det(C) = 1 preserves the orientation, det(C) = 3 reverses it.
OrientedLagrangian rebased(const OrientedLagrangian& L, const Z4Matrix& C);

// Image lagrangian gamma L, basis mapped in order (orientation transported).
OrientedLagrangian apply(const ThetaGroupElement& gamma,
                         const OrientedLagrangian& L);

// Some group element carrying L1 onto L2, basis to basis in order. Found by
// extending each basis to a full symplectic frame compatible with q
// (exhaustive dual-vector search; exact for g <= 3) and composing the two
// frame maps. Throws ExtensionFailed if no frame extension is found.
ThetaGroupElement transport_gamma(const OrientedLagrangian& L1,
                                  const OrientedLagrangian& L2);

// Sign of a transversal pair: the determinant over Z/4 of the pairing matrix
// with entries psi(w_j, v_i), where (v_i) orients L1 and (w_j) orients L2.
// The argument order is calibrated so that m_jm below matches the character
// on transport elements, and is frozen. Throws std::invalid_argument unless
// L1 and L2 are transversal.
int sigma_transversal(const OrientedLagrangian& L1,
                      const OrientedLagrangian& L2);

// General sign. Transversal pairs use the determinant directly. When the
// reduced intersection dimension d has the same parity as g (same ruling
// family), the sign is (-1)^{(g-d)/2} * sigma(L1,D) * sigma(L2,D) for a
// common transversal D found by moving the standard lagrangian with seeded
// random group elements; NoCommonTransversal if that bounded search fails.
// For opposite parities no common transversal exists at all, and the sign is
// recovered from the character of a transport element instead.
int sigma(const OrientedLagrangian& L1, const OrientedLagrangian& L2);

// Johnson-Millson pairing: sigma(L1,L2) + (g - dim(L1bar n L2bar)) - 1 mod 4,
// with sigma entering as +1 or 3.
int m_jm(const OrientedLagrangian& L1, const OrientedLagrangian& L2);

// Character value of gamma computed through the pairing: m_jm(L0, gamma L0).
int lambda_jm(const ThetaGroupElement& gamma, const OrientedLagrangian& L0);

}  // namespace thetamult
