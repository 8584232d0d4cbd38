#pragma once

#include <stdexcept>

namespace thetamult {

// Failure modes of the exact-arithmetic algorithms. Each condition gets its
// own type so callers can distinguish "bad input" from "search gave up".

struct NotInvertible : std::domain_error {
  using std::domain_error::domain_error;
};

// transvection() requires an anisotropic vector.
struct IsotropicVector : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotSymmetric : std::domain_error {
  using std::domain_error::domain_error;
};

// Element is not congruent to the identity mod 2.
struct NotInGamma2 : std::domain_error {
  using std::domain_error::domain_error;
};

// The tensor associated to a level-2 element failed its symmetry invariant,
// which means the input did not preserve the symplectic form.
struct AsymmetricTensor : std::domain_error {
  using std::domain_error::domain_error;
};

struct NotMember : std::domain_error {
  using std::domain_error::domain_error;
};

// Input to the orthogonal factorizer does not preserve the quadratic form.
struct NotOrthogonal : std::domain_error {
  using std::domain_error::domain_error;
};

// The factorization search ran out of moves. For the one genuinely
// exceptional orthogonal group (rank 4, plus type, over F2) this is a real
// mathematical obstruction, not a resource limit; see lambda.cpp.
struct SearchExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No extension of a lagrangian basis to a compatible symplectic frame found.
struct ExtensionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoCommonTransversal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPositiveDefinite : std::domain_error {
  using std::domain_error::domain_error;
};

struct SingularDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotInThetaGroup : std::domain_error {
  using std::domain_error::domain_error;
};

// An integer theta-group element reduced mod 4 must always be a member of
// the finite theta group; hitting this indicates an internal inconsistency.
struct ReductionNotMember : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace thetamult
