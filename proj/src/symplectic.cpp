#include "thetamult/symplectic.hpp"

#include <bit>
#include <stdexcept>

namespace thetamult {

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

SymplecticSpace SymplecticSpace::standard(int g) {
  if (g < 1) throw std::invalid_argument("SymplecticSpace: g must be >= 1");
  if (g > 10)
    throw std::invalid_argument("SymplecticSpace: g exceeds the g <= 10 envelope");
  SymplecticSpace s;
  s.g = g;
  s.J = Z4Matrix(2 * g);
  for (int i = 0; i < g; ++i) {
    s.J.set(i, g + i, 1);
    s.J.set(g + i, i, 3);  // -1 mod 4
  }
  s.Jbar = s.J.mod2();
  return s;
}

QuadraticForm::QuadraticForm(int g, const F2Matrix& U) : g_(g), U_(U) {
  if (U.rows() != 2 * g || U.cols() != 2 * g)
    throw std::invalid_argument("QuadraticForm: U must have size 2g");
  for (int i = 0; i < 2 * g; ++i)
    for (int j = 0; j < i; ++j)
      if (U.at(i, j))
        throw std::invalid_argument("QuadraticForm: U must be upper triangular");
  Jbar_ = U + U.transposed();
  const F2Matrix expected = SymplecticSpace::standard(g).Jbar;
  if (!(Jbar_ == expected))
    throw std::invalid_argument(
        "QuadraticForm: polarization U + U^T does not match the standard pairing");
  parity_ = arf_parity(*this);
}

QuadraticForm QuadraticForm::standard(int g, Parity parity) {
  F2Matrix U(2 * g, 2 * g);
  for (int i = 0; i < g; ++i) U.set(i, g + i, 1);
  if (parity == Parity::odd) {
    U.set(0, 0, 1);
    U.set(g, g, 1);
  }
  return QuadraticForm(g, U);
}

std::pair<SymplecticSpace, QuadraticForm> make_standard(int g, Parity parity) {
  return {SymplecticSpace::standard(g), QuadraticForm::standard(g, parity)};
}

int eval_q(const QuadraticForm& form, const F2Vector& v) {
  if (v.size() != form.dim())
    throw std::invalid_argument("eval_q: vector length must be 2g");
  const F2Vector uv = form.U() * v;
  return std::popcount(v.bits() & uv.bits()) & 1;
}

int eval_psi(const SymplecticSpace& space, const Z4Vector& u,
             const Z4Vector& x) {
  if (u.size() != space.dim() || x.size() != space.dim())
    throw std::invalid_argument("eval_psi: vector length must be 2g");
  const Z4Vector jx = space.J * x;
  int acc = 0;
  for (int i = 0; i < space.dim(); ++i) acc += u.at(i) * jx.at(i);
  return Z4Vector::reduce4(acc);
}

int eval_psibar(const F2Matrix& jbar, const F2Vector& u, const F2Vector& x) {
  const F2Vector jx = jbar * x;
  return std::popcount(u.bits() & jx.bits()) & 1;
}

Parity arf_parity(const QuadraticForm& form) {
  const int n = form.dim();
  long long zeros = 0;
  for (uint32_t bits = 0; bits < (1u << n); ++bits)
    if (eval_q(form, F2Vector(n, bits)) == 0) ++zeros;
  const long long even_count = (1ll << (n - 1)) + (1ll << (form.g() - 1));
  return zeros == even_count ? Parity::even : Parity::odd;
}

bool is_member(const SymplecticSpace& space, const QuadraticForm& form,
               const Z4Matrix& m) {
  if (m.size() != space.dim())
    throw std::invalid_argument("is_member: matrix must have size 2g");
  if (!(m.transposed() * space.J * m == space.J)) return false;
  const F2Matrix mbar = m.mod2();
  for (int i = 0; i < space.dim(); ++i) {
    F2Vector col(space.dim());
    for (int r = 0; r < space.dim(); ++r) col.set(r, mbar.at(r, i));
    F2Vector ei(space.dim());
    ei.set(i, 1);
    if (eval_q(form, col) != eval_q(form, ei)) return false;
  }
  return true;
}

ThetaGroupElement transvection(const SymplecticSpace& space,
                               const QuadraticForm& form, const Z4Vector& v) {
  if (v.size() != space.dim())
    throw std::invalid_argument("transvection: vector length must be 2g");
  if (eval_q(form, v.mod2()) != 1)
    throw IsotropicVector("transvection: q(v mod 2) must be 1");
  const int n = space.dim();
  // row covector v^T J
  Z4Vector vj(n);
  for (int j = 0; j < n; ++j) {
    int acc = 0;
    for (int k = 0; k < n; ++k) acc += v.at(k) * space.J.at(k, j);
    vj.set(j, acc);
  }
  Z4Matrix t = Z4Matrix::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.set(i, j, t.at(i, j) + v.at(i) * vj.at(j));
  return ThetaGroupElement(space, form, t);
}

int dickson(const QuadraticForm& form, const F2Matrix& t) {
  if (t.rows() != form.dim() || t.cols() != form.dim())
    throw std::invalid_argument("dickson: matrix must have size 2g");
  return rank_f2(F2Matrix::identity(form.dim()) + t) & 1;
}

ThetaGroupElement gamma2_element(const SymplecticSpace& space,
                                 const QuadraticForm& form,
                                 const F2Matrix& M) {
  if (M.rows() != space.dim() || M.cols() != space.dim())
    throw std::invalid_argument("gamma2_element: matrix must have size 2g");
  if (!M.is_symmetric())
    throw NotSymmetric("gamma2_element: M must be symmetric");
  const Z4Matrix beta = Z4Matrix::lift(space.Jbar * M);
  const Z4Matrix m = Z4Matrix::identity(space.dim()) + beta.scaled(2);
  return ThetaGroupElement(space, form, m);
}

std::vector<F2Vector> anisotropic_vectors(const QuadraticForm& form) {
  const int n = form.dim();
  std::vector<F2Vector> out;
  for (uint32_t bits = 1; bits < (1u << n); ++bits) {
    F2Vector v(n, bits);
    if (eval_q(form, v) == 1) out.push_back(v);
  }
  return out;
}

Z4Vector random_anisotropic(const QuadraticForm& form, std::mt19937_64& rng) {
  const int n = form.dim();
  std::uniform_int_distribution<int> entry(0, 3);
  for (;;) {
    Z4Vector v(n);
    for (int i = 0; i < n; ++i) v.set(i, entry(rng));
    if (eval_q(form, v.mod2()) == 1) return v;
  }
}

F2Matrix random_symmetric_f2(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  F2Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int b = bit(rng);
      m.set(i, j, b);
      m.set(j, i, b);
    }
  return m;
}

ThetaGroupElement random_element(const SymplecticSpace& space,
                                 const QuadraticForm& form, int word_length,
                                 uint64_t seed) {
  if (word_length < 0)
    throw std::invalid_argument("random_element: word_length must be >= 0");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  Z4Matrix acc = Z4Matrix::identity(space.dim());
  for (int i = 0; i < word_length; ++i) {
    if (coin(rng) == 0) {
      acc = acc * transvection(space, form, random_anisotropic(form, rng)).mat;
    } else {
      acc = acc * gamma2_element(space, form,
                                 random_symmetric_f2(space.dim(), rng))
                      .mat;
    }
  }
  return ThetaGroupElement(space, form, acc);
}

namespace {

// Index maps realizing V1 (+) V2 with both x-blocks first, then both
// y-blocks, so the sum of standard-shape data is standard-shape.
int embed_index(int g1, int g2, int summand, int idx) {
  const int g = g1 + g2;
  if (summand == 1)
    return idx < g1 ? idx : g + (idx - g1);
  return idx < g2 ? g1 + idx : g + g1 + (idx - g2);
}

}  // namespace

std::pair<SymplecticSpace, QuadraticForm> direct_sum(const QuadraticForm& f1,
                                                     const QuadraticForm& f2) {
  const int g1 = f1.g(), g2 = f2.g(), g = g1 + g2;
  F2Matrix U(2 * g, 2 * g);
  for (int a = 0; a < 2 * g1; ++a)
    for (int b = 0; b < 2 * g1; ++b)
      if (f1.U().at(a, b))
        U.set(embed_index(g1, g2, 1, a), embed_index(g1, g2, 1, b), 1);
  for (int a = 0; a < 2 * g2; ++a)
    for (int b = 0; b < 2 * g2; ++b)
      if (f2.U().at(a, b))
        U.set(embed_index(g1, g2, 2, a), embed_index(g1, g2, 2, b), 1);
  return {SymplecticSpace::standard(g), QuadraticForm(g, U)};
}

Z4Matrix direct_sum_element(int g1, int g2, const Z4Matrix& m1,
                            const Z4Matrix& m2) {
  if (m1.size() != 2 * g1 || m2.size() != 2 * g2)
    throw std::invalid_argument("direct_sum_element: size mismatch");
  Z4Matrix m = Z4Matrix(2 * (g1 + g2));
  for (int a = 0; a < 2 * g1; ++a)
    for (int b = 0; b < 2 * g1; ++b)
      m.set(embed_index(g1, g2, 1, a), embed_index(g1, g2, 1, b), m1.at(a, b));
  for (int a = 0; a < 2 * g2; ++a)
    for (int b = 0; b < 2 * g2; ++b)
      m.set(embed_index(g1, g2, 2, a), embed_index(g1, g2, 2, b), m2.at(a, b));
  return m;
}

}  // namespace thetamult
