#pragma once

// Symplectic 4-groups with a theta characteristic.
//
// V = (Z/4)^{2g} carries a non-degenerate alternating form psi with Gram
// matrix J (vectors are columns, psi(u,x) = u^T J x). The reduction
// Vbar = V/2V carries the reduced pairing psibar and a quadratic form q
// with polarization q(u+v) - q(u) - q(v) = psibar(u,v). The theta group
// is the group of automorphisms of V preserving psi whose mod-2 reduction
// preserves q.
//
// Coordinate convention: v = (x_1..x_g, y_1..y_g) and J = [[0,I],[-I,0]],
// so psi(e_i, e_{g+i}) = +1. The standard even form is q = sum x_i y_i;
// the standard odd form adds x_1^2 + y_1^2.

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "thetamult/linalg.hpp"

namespace thetamult {

enum class Parity { even, odd };

const char* to_string(Parity p);

struct SymplecticSpace {
  int g = 0;
  Z4Matrix J;     // Gram of psi, invertible mod 4, J^T = -J
  F2Matrix Jbar;  // J mod 2; symmetric, zero diagonal, Jbar^2 = I

  static SymplecticSpace standard(int g);
  int dim() const { return 2 * g; }
};

class QuadraticForm {
 public:
  // U must be upper triangular with U + U^T equal to the standard Jbar of
  // the matching genus. The parity field is computed, not chosen.
  QuadraticForm(int g, const F2Matrix& U);

  static QuadraticForm standard(int g, Parity parity);

  int g() const { return g_; }
  int dim() const { return 2 * g_; }
  const F2Matrix& U() const { return U_; }
  const F2Matrix& jbar() const { return Jbar_; }
  Parity parity() const { return parity_; }

 private:
  int g_;
  F2Matrix U_;
  F2Matrix Jbar_;
  Parity parity_;
};

std::pair<SymplecticSpace, QuadraticForm> make_standard(int g, Parity parity);

// q(v) = v^T U v over F2.
int eval_q(const QuadraticForm& form, const F2Vector& v);
// psi(u,x) = u^T J x mod 4.
int eval_psi(const SymplecticSpace& space, const Z4Vector& u,
             const Z4Vector& x);
// psibar(u,x) = u^T Jbar x over F2.
int eval_psibar(const F2Matrix& jbar, const F2Vector& u, const F2Vector& x);

// Exhaustive zero count over F2^{2g}: q is even iff the count equals
// 2^{2g-1} + 2^{g-1}.
Parity arf_parity(const QuadraticForm& form);

struct ThetaGroupElement {
  SymplecticSpace space;
  QuadraticForm form;
  Z4Matrix mat;

  ThetaGroupElement(SymplecticSpace s, QuadraticForm f, Z4Matrix m)
      : space(std::move(s)), form(std::move(f)), mat(std::move(m)) {}
};

// m^T J m = J mod 4 and q(m e_i mod 2) = q(e_i) on basis vectors. Together
// with psibar-preservation the basis check pins q on all of Vbar.
bool is_member(const SymplecticSpace& space, const QuadraticForm& form,
               const Z4Matrix& m);

// t_v(x) = x + psi(v,x) v as the matrix I + v (v^T J) mod 4.
// Requires q(v mod 2) = 1.
ThetaGroupElement transvection(const SymplecticSpace& space,
                               const QuadraticForm& form, const Z4Vector& v);

/// Dickson invariant of an orthogonal t on Vbar: rank(I + t) mod 2.
int dickson(const QuadraticForm& form, const F2Matrix& t);

// Level-2 element I + 2 lift(Jbar M) for symmetric M; these exhaust the
// kernel of reduction mod 2 as M runs over symmetric matrices.
ThetaGroupElement gamma2_element(const SymplecticSpace& space,
                                 const QuadraticForm& form, const F2Matrix& M);

// Product of word_length factors, each a fresh random anisotropic
// transvection or a random level-2 element. Deterministic in the seed.
ThetaGroupElement random_element(const SymplecticSpace& space,
                                 const QuadraticForm& form, int word_length,
                                 uint64_t seed);

// All vbar with q(vbar) = 1. Count is 2^{2g-1} -+ 2^{g-1} (even/odd).
std::vector<F2Vector> anisotropic_vectors(const QuadraticForm& form);

// Uniform anisotropic vector of V (by rejection on the reduction).
Z4Vector random_anisotropic(const QuadraticForm& form, std::mt19937_64& rng);

// Random symmetric F2 matrix of size 2g.
F2Matrix random_symmetric_f2(int n, std::mt19937_64& rng);

// Direct sum of two standard-shape groups, with coordinates interleaved so
// that the result is standard-shape again: the x-blocks of both summands
// come first, then both y-blocks. Parities compose like Arf invariants
// (odd + odd = even).
std::pair<SymplecticSpace, QuadraticForm> direct_sum(const QuadraticForm& f1,
                                                     const QuadraticForm& f2);

// The same coordinate interleaving applied to a pair of elements.
Z4Matrix direct_sum_element(int g1, int g2, const Z4Matrix& m1,
                            const Z4Matrix& m2);

}  // namespace thetamult
