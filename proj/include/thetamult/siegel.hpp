// Numerical side: Siegel upper half-space points, integer symplectic
// matrices, theta series evaluation with a rigorous tail bound, and the
// residual of the squared functional equation against the algebraic
// character.
#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "thetamult/errors.hpp"
#include "thetamult/lambda.hpp"
#include "thetamult/linalg.hpp"

namespace thetamult {

using Complex = std::complex<double>;
using ComplexMatrix = std::vector<std::vector<Complex>>;
using RealMatrix = std::vector<std::vector<double>>;
using IntMatrix = std::vector<std::vector<int64_t>>;

// A point of the genus-g Siegel upper half-space: tau symmetric with
// positive-definite imaginary part. The constructor symmetrizes tau and
// throws NotPositiveDefinite if Im(tau) fails its definiteness check.
struct SiegelPoint {
  int g;
  ComplexMatrix tau;

  SiegelPoint(int g_, ComplexMatrix tau_);

  RealMatrix im() const;
};

// Integer symplectic matrix in g x g blocks [[A,B],[C,D]]; the constructor
// verifies M^T J M = J exactly in integer arithmetic.
struct IntSymplectic {
  int g;
  IntMatrix A, B, C, D;

  IntSymplectic(int g_, IntMatrix a, IntMatrix b, IntMatrix c, IntMatrix d);

  static IntSymplectic identity(int g);
  IntSymplectic operator*(const IntSymplectic& rhs) const;

  // The 2g x 2g matrix reduced into Z/4.
  Z4Matrix mod4() const;
};

struct ThetaValue {
  Complex value;
  int truncation_radius;
  double error_bound;  // rigorous bound on the discarded tail
};

// True iff the diagonals of A B^T and C D^T are even.
bool is_theta_group_int(const IntSymplectic& m);

// (A tau + B)(C tau + D)^{-1}, symmetrized. Throws SingularDenominator if
// the solve hits a negligible pivot (cannot happen for valid inputs).
SiegelPoint mobius_act(const IntSymplectic& m, const SiegelPoint& tau);

// Smallest N whose tail bound for sum_{|n|_inf > N} e^{-pi n^T Y n} is below
// tol, using a certified lower bound mu on the least eigenvalue of Y and a
// geometric-series comparison. Throws NotPositiveDefinite.
int truncation_radius(const RealMatrix& im_tau, double tol);

// Lattice sum of e^{pi i n^T tau n} over the box |n|_inf <= N in a fixed
// lexicographic order, N chosen so the tail bound is below tol.
ThetaValue theta_value(const SiegelPoint& tau, double tol);

// The same lattice sum at an explicit radius, for stability checks.
Complex theta_partial_sum(const SiegelPoint& tau, int radius);

// Relative residual of theta(M tau)^2 = i^lambda * det(C tau + D) * theta(tau)^2,
// with lambda computed algebraically from M mod 4 against the standard even
// form. Throws NotInThetaGroup if M fails the even-diagonal test and
// ReductionNotMember if the mod-4 reduction were somehow outside the group.
double functional_equation_residual(const IntSymplectic& m,
                                    const SiegelPoint& tau, double tol);

// Seeded random word in the generators {swap, translation by an integer
// symmetric B, GL-block diag(U, U^-T)}, redrawn until the product passes
// is_theta_group_int.
IntSymplectic random_theta_group_element(int g, int word_length,
                                         uint64_t seed);

// Seeded random Siegel point: X symmetric with entries in [-1,1],
// Y = Q^T Q + I/2.
SiegelPoint random_siegel_point(int g, uint64_t seed);

// det(C tau + D) for the automorphy factor; exposed for cocycle checks.
Complex denominator_det(const IntSymplectic& m, const SiegelPoint& tau);

}  // namespace thetamult
