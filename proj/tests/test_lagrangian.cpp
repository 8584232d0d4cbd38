#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "thetamult/lagrangian.hpp"
#include "thetamult/lambda.hpp"
#include "thetamult/symplectic.hpp"

using namespace thetamult;

namespace {

OrientedLagrangian span_of(const SymplecticSpace& space,
                           const QuadraticForm& form,
                           const std::vector<std::vector<long long>>& rows) {
  std::vector<Z4Vector> basis;
  for (const auto& r : rows) basis.push_back(Z4Vector::from_ints(r));
  return OrientedLagrangian(space, form, std::move(basis));
}

OrientedLagrangian random_lagrangian(const SymplecticSpace& space,
                                     const QuadraticForm& form,
                                     std::mt19937_64& rng) {
  return apply(random_element(space, form, 6, rng()),
               standard_lagrangian(space, form));
}

Z4Matrix random_det1(int g, std::mt19937_64& rng) {
  Z4Matrix c = Z4Matrix::identity(g);
  for (int step = 0; step < 6; ++step) {
    const int i = static_cast<int>(rng() % g);
    const int j = static_cast<int>(rng() % g);
    if (i == j) continue;
    Z4Matrix shear = Z4Matrix::identity(g);
    shear.set(i, j, static_cast<int>(rng() % 4));
    c = c * shear;
  }
  return c;
}

}  // namespace

TEST_CASE("membership of candidate bases") {
  const auto [space, form] = make_standard(1, Parity::even);
  CHECK(is_oriented_lagrangian(space, form, {Z4Vector::from_ints({1, 0})}));
  CHECK(is_oriented_lagrangian(space, form, {Z4Vector::from_ints({0, 1})}));
  // q(1,1) = 1: the span is psi-isotropic but not q-isotropic.
  CHECK_FALSE(is_oriented_lagrangian(space, form, {Z4Vector::from_ints({1, 1})}));
  // Not a direct summand: (2,0) reduces to zero.
  CHECK_FALSE(is_oriented_lagrangian(space, form, {Z4Vector::from_ints({2, 0})}));
  // Odd forms admit none at all.
  const auto [space_odd, odd] = make_standard(1, Parity::odd);
  for (uint64_t idx = 1; idx < 16; ++idx) {
    Z4Vector v(2);
    v.set(0, static_cast<int>(idx & 3));
    v.set(1, static_cast<int>((idx >> 2) & 3));
    CHECK_FALSE(is_oriented_lagrangian(space_odd, odd, {v}));
  }
}

TEST_CASE("six isotropic lagrangian planes at g=2, in two rulings") {
  const auto [space, form] = make_standard(2, Parity::even);
  // Enumerate mod-2 planes via the group orbit of the standard lagrangian and
  // of <e1,e2>; count distinct reduced row spaces among random images.
  std::mt19937_64 rng(3);
  std::set<uint64_t> planes;
  for (int k = 0; k < 200; ++k) {
    const OrientedLagrangian img = random_lagrangian(space, form, rng);
    planes.insert(rref_f2(img.reduced_rows()).packed_key());
  }
  // The swap (outside the transvection span) reaches the rest.
  const Z4Matrix swap = Z4Matrix::from_ints(
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const ThetaGroupElement gswap(space, form, swap);
  for (int k = 0; k < 200; ++k) {
    std::mt19937_64 rng2(k);
    const OrientedLagrangian img =
        apply(gswap, random_lagrangian(space, form, rng2));
    planes.insert(rref_f2(img.reduced_rows()).packed_key());
  }
  CHECK(planes.size() == 6);
}

TEST_CASE("orientation flips exactly with the determinant of the rebasing") {
  std::mt19937_64 rng(5);
  const auto [space, form] = make_standard(2, Parity::even);
  for (int k = 0; k < 10; ++k) {
    const OrientedLagrangian L = random_lagrangian(space, form, rng);
    const Z4Matrix c = random_det1(2, rng);
    CHECK(m_jm(L, rebased(L, c)) == 0);
    Z4Matrix flip = c;
    // Scale one column by 3 = -1: determinant flips sign.
    for (int i = 0; i < 2; ++i) flip.set(i, 0, (3 * flip.at(i, 0)) % 4);
    CHECK(m_jm(L, rebased(L, flip)) == 2);
  }
}

TEST_CASE("transport maps the first lagrangian onto the second") {
  std::mt19937_64 rng(7);
  for (const int g : {1, 2, 3}) {
    const auto [space, form] = make_standard(g, Parity::even);
    for (int k = 0; k < 6; ++k) {
      const OrientedLagrangian a = random_lagrangian(space, form, rng);
      const OrientedLagrangian b = random_lagrangian(space, form, rng);
      const ThetaGroupElement gamma = transport_gamma(a, b);
      CHECK(is_member(space, form, gamma.mat));
      // Image of a under gamma spans b with determinant-1 change of basis.
      const OrientedLagrangian image = apply(gamma, a);
      CHECK(m_jm(image, b) == 0);
    }
  }
}

TEST_CASE("transport character is independent of the element chosen") {
  // Anchor: <e> -> <f> at g=1 must give lambda(S) = 3; enumerate every group
  // element realizing the map and confirm the value is constant on the coset.
  const auto [space, form] = make_standard(1, Parity::even);
  const OrientedLagrangian le = span_of(space, form, {{1, 0}});
  const OrientedLagrangian lf = span_of(space, form, {{0, 1}});
  const CharacterTable table = character_table_g1(Parity::even);
  int realized = 0;
  for (const auto& [mat, value] : table.entries) {
    const ThetaGroupElement gamma(space, form, mat);
    const OrientedLagrangian image = apply(gamma, le);
    // Same span and same orientation as lf?
    if (rref_f2(image.reduced_rows()) != rref_f2(lf.reduced_rows())) continue;
    if (m_jm(image, lf) != 0) continue;
    ++realized;
    CHECK(value == 3);
  }
  CHECK(realized == 4);
}

TEST_CASE("sign convention anchors") {
  const auto [space, form] = make_standard(1, Parity::even);
  const OrientedLagrangian le = span_of(space, form, {{1, 0}});
  const OrientedLagrangian lf = span_of(space, form, {{0, 1}});
  // psi(f, e) = -1 under the frozen slot order.
  CHECK(sigma_transversal(le, lf) == -1);
  CHECK(sigma_transversal(lf, le) == 1);
  CHECK(m_jm(le, lf) == 3);
  CHECK(m_jm(lf, le) == 1);
  SUBCASE("equal and opposite orientations") {
    CHECK(sigma(le, le) == 1);
    CHECK(m_jm(le, le) == 0);
    const OrientedLagrangian le_rev = span_of(space, form, {{3, 0}});
    CHECK(sigma(le, le_rev) == -1);
    CHECK(m_jm(le, le_rev) == 2);
  }
}

TEST_CASE("higher-genus anchors against the character") {
  for (const int g : {2, 3}) {
    const auto [space, form] = make_standard(g, Parity::even);
    const OrientedLagrangian l0 = standard_lagrangian(space, form);
    // S acting blockwise: e_i -> f_i, f_i -> -e_i; lambda = 3g mod 4.
    Z4Matrix s(2 * g);
    for (int i = 0; i < g; ++i) {
      s.set(g + i, i, 1);
      s.set(i, g + i, 3);
    }
    const ThetaGroupElement gs(space, form, s);
    CHECK(lambda(space, form, s) == (3 * g) % 4);
    CHECK(lambda_jm(gs, l0) == (3 * g) % 4);
    CHECK(m_jm(l0, apply(gs, l0)) == (3 * g) % 4);
  }
}

TEST_CASE("sigma via a common transversal does not depend on the choice") {
  std::mt19937_64 rng(11);
  const auto [space, form] = make_standard(2, Parity::even);
  const OrientedLagrangian start = standard_lagrangian(space, form);
  int tested = 0;
  for (int draw = 0; draw < 200 && tested < 12; ++draw) {
    const OrientedLagrangian l1 = random_lagrangian(space, form, rng);
    const OrientedLagrangian l2 =
        draw % 2 ? random_lagrangian(space, form, rng)
                 : rebased(l1, random_det1(2, rng));
    const int inter = intersect_dim_f2(l1.reduced_rows(), l2.reduced_rows());
    if (inter == 0 || (space.g - inter) % 2 != 0) continue;
    int reference = 0;
    int found = 0;
    for (int attempt = 0; attempt < 128 && found < 5; ++attempt) {
      const OrientedLagrangian d =
          apply(random_element(space, form, 7, rng()), start);
      if (intersect_dim_f2(d.reduced_rows(), l1.reduced_rows()) != 0) continue;
      if (intersect_dim_f2(d.reduced_rows(), l2.reduced_rows()) != 0) continue;
      const int product = sigma_transversal(l1, d) * sigma_transversal(l2, d);
      if (found == 0)
        reference = product;
      else
        CHECK(product == reference);
      ++found;
    }
    CHECK(found >= 2);
    ++tested;
  }
  CHECK(tested == 12);
}

TEST_CASE("no common transversal exists across rulings at g=2") {
  // <f1,f2> and <e1,f2> intersect in a line and lie in opposite rulings:
  // exhaustively, every isotropic lagrangian meets one of them, so the
  // pairing must fall back to the transport evaluation (which still works).
  const auto [space, form] = make_standard(2, Parity::even);
  const OrientedLagrangian l1 = standard_lagrangian(space, form);
  const OrientedLagrangian l2 = span_of(space, form, {{1, 0, 0, 0}, {0, 0, 0, 1}});
  CHECK(intersect_dim_f2(l1.reduced_rows(), l2.reduced_rows()) == 1);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 400; ++k) {
    const OrientedLagrangian d = random_lagrangian(space, form, rng);
    const bool clears_both =
        intersect_dim_f2(d.reduced_rows(), l1.reduced_rows()) == 0 &&
        intersect_dim_f2(d.reduced_rows(), l2.reduced_rows()) == 0;
    CHECK_FALSE(clears_both);
  }
  const int m = m_jm(l1, l2);
  CHECK(m == lambda(space, form, transport_gamma(l1, l2).mat));
}

TEST_CASE("pairing agrees with the character on random pairs") {
  std::mt19937_64 rng(17);
  for (const int g : {2, 3}) {
    const auto [space, form] = make_standard(g, Parity::even);
    for (int k = 0; k < (g == 2 ? 25 : 10); ++k) {
      const OrientedLagrangian l1 = random_lagrangian(space, form, rng);
      const OrientedLagrangian l2 = random_lagrangian(space, form, rng);
      CHECK(m_jm(l1, l2) ==
            lambda(space, form, transport_gamma(l1, l2).mat));
    }
  }
}

TEST_CASE("pairing character equals lambda on random elements") {
  std::mt19937_64 rng(19);
  for (const int g : {2, 3}) {
    const auto [space, form] = make_standard(g, Parity::even);
    const OrientedLagrangian l0 = standard_lagrangian(space, form);
    for (int k = 0; k < (g == 2 ? 25 : 10); ++k) {
      const ThetaGroupElement gamma = random_element(space, form, 7, rng());
      CHECK(lambda_jm(gamma, l0) == lambda(space, form, gamma.mat));
    }
  }
}

TEST_CASE("pairing character covers the exceptional coset") {
  const auto [space, form] = make_standard(2, Parity::even);
  const OrientedLagrangian l0 = standard_lagrangian(space, form);
  const Z4Matrix swap = Z4Matrix::from_ints(
      {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const ThetaGroupElement gswap(space, form, swap);
  // The swap stabilizes <f1,f2> but reverses its orientation.
  CHECK(lambda_jm(gswap, l0) == 2);
  std::mt19937_64 rng(23);
  for (int k = 0; k < 10; ++k) {
    const ThetaGroupElement r = random_element(space, form, 6, rng());
    const ThetaGroupElement composite(space, form, r.mat * swap);
    CHECK(lambda_jm(composite, l0) ==
          lambda(space, form, composite.mat));
  }
}

TEST_CASE("composition identity across three lagrangians") {
  std::mt19937_64 rng(29);
  const auto [space, form] = make_standard(2, Parity::even);
  for (int k = 0; k < 15; ++k) {
    const OrientedLagrangian a = random_lagrangian(space, form, rng);
    const OrientedLagrangian b = random_lagrangian(space, form, rng);
    const OrientedLagrangian c = random_lagrangian(space, form, rng);
    CHECK((m_jm(a, b) + m_jm(b, c)) % 4 == m_jm(a, c));
  }
}

TEST_CASE("g=1 agreement between the pairing and the character, measured") {
  // The pairing's defining construction is usually quoted for higher genus;
  // at g=1 the agreement with the character is an observation, reported
  // rather than assumed. It held on every sample at the time of writing.
  const auto [space, form] = make_standard(1, Parity::even);
  const OrientedLagrangian l0 = standard_lagrangian(space, form);
  const CharacterTable table = character_table_g1(Parity::even);
  int agree = 0, total = 0;
  for (const auto& [mat, value] : table.entries) {
    const ThetaGroupElement gamma(space, form, mat);
    ++total;
    if (lambda_jm(gamma, l0) == value) ++agree;
  }
  MESSAGE("g=1 even pairing/character agreement: ", agree, "/", total);
  WARN(agree == total);
}

TEST_CASE("serialization round-trips do not disturb the pairing inputs") {
  std::mt19937_64 rng(31);
  const auto [space, form] = make_standard(2, Parity::even);
  const OrientedLagrangian L = random_lagrangian(space, form, rng);
  // Rebuild from raw entries.
  std::vector<Z4Vector> copy;
  for (const Z4Vector& v : L.basis) {
    Z4Vector w(v.size());
    for (int i = 0; i < v.size(); ++i) w.set(i, v.at(i));
    copy.push_back(w);
  }
  const OrientedLagrangian M(space, form, copy);
  CHECK(m_jm(L, M) == 0);
}
