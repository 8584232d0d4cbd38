#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "thetamult/lambda.hpp"
#include "thetamult/symplectic.hpp"

using namespace thetamult;

namespace {

const Z4Matrix kS = Z4Matrix::from_ints({{0, -1}, {1, 0}});
const Z4Matrix kT = Z4Matrix::from_ints({{1, 1}, {0, 1}});
const Z4Matrix kT2 = Z4Matrix::from_ints({{1, 2}, {0, 1}});

// Coordinate swap e1<->e2, f1<->f2 at g=2: a member whose mod-2 image lies
// outside the subgroup generated by transvections, so factorization must go
// through the genus-raising embedding.
const Z4Matrix kSwap = Z4Matrix::from_ints(
    {{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});

}  // namespace

TEST_CASE("g=1 even anchors: S, T^2, the transvection, and -I") {
  const auto [space, form] = make_standard(1, Parity::even);
  CHECK(lambda(space, form, kS) == 3);
  CHECK(lambda(space, form, kT2) == 0);
  const Z4Matrix t = transvection(space, form, Z4Vector::from_ints({1, 1})).mat;
  CHECK(t == Z4Matrix::from_ints({{0, 1}, {-1, 2}}));
  CHECK(lambda(space, form, t) == 1);
  // S * t = T^2 forces lambda(S) = -1 given lambda(t) = 1.
  CHECK(kS * t == kT2);
  CHECK(lambda(space, form, Z4Matrix::from_ints({{-1, 0}, {0, -1}})) == 2);
  // The other mod-4 lift of the same mod-2 transvection has the same value.
  const Z4Matrix t13 = transvection(space, form, Z4Vector::from_ints({1, 3})).mat;
  CHECK(lambda(space, form, t13) == 1);
}

TEST_CASE("g=1 odd anchors: T is a transvection and lambda(S) = 1") {
  const auto [space, form] = make_standard(1, Parity::odd);
  CHECK(kT == transvection(space, form, Z4Vector::from_ints({1, 0})).mat);
  CHECK(lambda(space, form, kT) == 1);
  CHECK(lambda(space, form, kS) == 1);
  CHECK(lambda(space, form, Z4Matrix::from_ints({{-1, 0}, {0, -1}})) == 2);
}

TEST_CASE("non-members are rejected") {
  const auto [space, form] = make_standard(1, Parity::even);
  CHECK_THROWS_AS(lambda(space, form, kT), NotMember);
  CHECK_THROWS_AS(lambda(space, form, Z4Matrix::from_ints({{2, 0}, {0, 1}})),
                  NotMember);
}

TEST_CASE("character table sizes and value distribution at g=1") {
  SUBCASE("even: 16 elements, values balanced 4/4/4/4") {
    const CharacterTable table = character_table_g1(Parity::even);
    CHECK(table.entries.size() == 16);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& [mat, value] : table.entries) ++counts[value];
    for (int c : counts) CHECK(c == 4);
  }
  SUBCASE("odd: 48 elements, values balanced 12/12/12/12") {
    const CharacterTable table = character_table_g1(Parity::odd);
    CHECK(table.entries.size() == 48);
    int counts[4] = {0, 0, 0, 0};
    for (const auto& [mat, value] : table.entries) ++counts[value];
    for (int c : counts) CHECK(c == 12);
  }
}

TEST_CASE("the table is a homomorphism on every ordered pair") {
  for (const Parity parity : {Parity::even, Parity::odd}) {
    const auto [space, form] = make_standard(1, parity);
    const CharacterTable table = character_table_g1(parity);
    for (const auto& [a, va] : table.entries)
      for (const auto& [b, vb] : table.entries) {
        const int direct = lambda(space, form, a * b);
        CHECK(direct == (va + vb) % 4);
      }
  }
}

TEST_CASE("level-2 restriction equals the symmetric-tensor form") {
  std::mt19937_64 rng(31);
  for (const int g : {1, 2, 3})
    for (const Parity parity : {Parity::even, Parity::odd}) {
      const auto [space, form] = make_standard(g, parity);
      for (int k = 0; k < 25; ++k) {
        const F2Matrix B = random_symmetric_f2(2 * g, rng);
        const ThetaGroupElement d = gamma2_element(space, form, B);
        const int via_tensor = lambda_gamma2(space, form, d.mat);
        CHECK(via_tensor % 2 == 0);
        CHECK(lambda(space, form, d.mat) == via_tensor);
      }
    }
}

TEST_CASE("level-2 values are invariant under conjugation") {
  std::mt19937_64 rng(37);
  const auto [space, form] = make_standard(2, Parity::even);
  for (int k = 0; k < 20; ++k) {
    const ThetaGroupElement d =
        gamma2_element(space, form, random_symmetric_f2(4, rng));
    const ThetaGroupElement g = random_element(space, form, 6, rng());
    const Z4Matrix conj = g.mat * d.mat * invert_z4(g.mat);
    CHECK(lambda_gamma2(space, form, conj) == lambda_gamma2(space, form, d.mat));
  }
}

TEST_CASE("parity of lambda is the dickson invariant") {
  std::mt19937_64 rng(41);
  for (const int g : {1, 2, 3})
    for (const Parity parity : {Parity::even, Parity::odd}) {
      const auto [space, form] = make_standard(g, parity);
      for (int k = 0; k < 40; ++k) {
        const ThetaGroupElement m = random_element(space, form, 6, rng());
        CHECK(lambda(space, form, m.mat) % 2 == dickson(form, m.mat.mod2()));
      }
    }
}

TEST_CASE("transvections all map to 1") {
  std::mt19937_64 rng(43);
  for (const int g : {1, 2, 3})
    for (const Parity parity : {Parity::even, Parity::odd}) {
      const auto [space, form] = make_standard(g, parity);
      for (int k = 0; k < 25; ++k) {
        const Z4Vector v = random_anisotropic(form, rng);
        CHECK(lambda(space, form, transvection(space, form, v).mat) == 1);
      }
    }
}

TEST_CASE("homomorphism and conjugation invariance on random members") {
  std::mt19937_64 rng(47);
  for (const int g : {1, 2, 3})
    for (const Parity parity : {Parity::even, Parity::odd}) {
      const auto [space, form] = make_standard(g, parity);
      for (int k = 0; k < 20; ++k) {
        const ThetaGroupElement a = random_element(space, form, 6, rng());
        const ThetaGroupElement b = random_element(space, form, 6, rng());
        const int la = lambda(space, form, a.mat);
        const int lb = lambda(space, form, b.mat);
        CHECK(lambda(space, form, a.mat * b.mat) == (la + lb) % 4);
        const Z4Matrix conj = b.mat * a.mat * invert_z4(b.mat);
        CHECK(lambda(space, form, conj) == la);
        CHECK(lambda(space, form, invert_z4(a.mat)) == (4 - la) % 4);
      }
    }
}

TEST_CASE("factorization length is reported and multiplies back") {
  std::mt19937_64 rng(53);
  const auto [space, form] = make_standard(2, Parity::odd);
  for (int k = 0; k < 10; ++k) {
    const ThetaGroupElement m = random_element(space, form, 5, rng());
    const LambdaReport rep = lambda_report(space, form, m.mat);
    CHECK(rep.lambda == lambda(space, form, m.mat));
    CHECK(rep.dickson == dickson(form, m.mat.mod2()));
    CHECK(rep.lambda % 2 == rep.dickson);
    // The reported word multiplies to the element's mod-2 image (when the
    // factorization happened in the original genus, the word lives there).
    if (!rep.word.vectors.empty() &&
        rep.word.vectors.front().size() == space.dim()) {
      F2Matrix prod = F2Matrix::identity(space.dim());
      for (const Z4Vector& v : rep.word.vectors)
        prod = prod * transvection(space, form, v).mat.mod2();
      CHECK(prod == m.mat.mod2());
    }
  }
}

TEST_CASE("lambda is independent of the factorization actually chosen") {
  // Different generator orderings in the mod-2 search give different words;
  // the character value must not depend on them.
  std::mt19937_64 rng(59);
  for (const Parity parity : {Parity::even, Parity::odd}) {
    const auto [space, form] = make_standard(2, parity);
    for (int k = 0; k < 15; ++k) {
      const ThetaGroupElement m = random_element(space, form, 6, rng());
      const F2Matrix image = m.mat.mod2();
      int values[2];
      int idx = 0;
      for (const uint64_t order_seed : {17ull, 91ull}) {
        std::vector<F2Vector> word;
        try {
          word = factor_orthogonal(form, image, order_seed);
        } catch (const SearchExhausted&) {
          values[idx++] = -1;
          continue;
        }
        // Recompose the character from this word by the definition.
        Z4Matrix lift = Z4Matrix::identity(space.dim());
        for (const F2Vector& v : word) {
          Z4Vector vz(space.dim());
          for (int i = 0; i < space.dim(); ++i) vz.set(i, v.at(i));
          lift = lift * transvection(space, form, vz).mat;
        }
        const Z4Matrix delta = invert_z4(lift) * m.mat;
        values[idx++] =
            (static_cast<int>(word.size()) + lambda_gamma2(space, form, delta)) %
            4;
      }
      if (values[0] >= 0 && values[1] >= 0) CHECK(values[0] == values[1]);
      if (values[0] >= 0) CHECK(values[0] == lambda(space, form, m.mat));
    }
  }
}

TEST_CASE("transvections generate only half the orthogonal image at g=2 even") {
  const auto [space, even] = make_standard(2, Parity::even);
  const auto [space_odd, odd] = make_standard(2, Parity::odd);
  // Full orthogonal group orders: O+(4,2) = 72, O-(4,2) = 120.
  CHECK(transvection_subgroup_order(even) == 36);
  CHECK(transvection_subgroup_order(odd) == 120);
  const auto [s1, even1] = make_standard(1, Parity::even);
  CHECK(transvection_subgroup_order(even1) == 2);
  const auto [s3, even3] = make_standard(3, Parity::even);
  CHECK(transvection_subgroup_order(even3) == 40320);
}

TEST_CASE("exceptional coset at g=2 even: the coordinate swap") {
  const auto [space, form] = make_standard(2, Parity::even);
  REQUIRE(is_member(space, form, kSwap));
  // Its mod-2 image cannot be written as a product of transvections.
  CHECK_THROWS_AS(factor_orthogonal(form, kSwap.mod2(), 1), SearchExhausted);
  // The character is still defined through the genus-raising embedding. The
  // value 2 is pinned independently: the swap fixes the theta series (it only
  // relabels the summation indices) while its denominator determinant is -1,
  // and it reverses the orientation of the standard lagrangian.
  CHECK(lambda(space, form, kSwap) == 2);
  CHECK(dickson(form, kSwap.mod2()) == 0);
  // Homomorphism property holds across the exceptional coset.
  std::mt19937_64 rng(61);
  for (int k = 0; k < 12; ++k) {
    const ThetaGroupElement r = random_element(space, form, 6, rng());
    const int lr = lambda(space, form, r.mat);
    CHECK(lambda(space, form, r.mat * kSwap) == (lr + 2) % 4);
    CHECK(lambda(space, form, kSwap * r.mat * kSwap) == lr);
  }
}

TEST_CASE("direct-sum additivity") {
  std::mt19937_64 rng(67);
  for (const Parity p1 : {Parity::even, Parity::odd})
    for (const Parity p2 : {Parity::even, Parity::odd})
      for (int k = 0; k < 12; ++k) {
        const auto [s1, f1] = make_standard(1, p1);
        const auto [s2, f2] = make_standard(2, p2);
        const ThetaGroupElement a = random_element(s1, f1, 5, rng());
        const ThetaGroupElement b = random_element(s2, f2, 5, rng());
        const int expected =
            (lambda(s1, f1, a.mat) + lambda(s2, f2, b.mat)) % 4;
        CHECK(lambda_direct_sum(s1, f1, a.mat, s2, f2, b.mat) == expected);
      }
}

TEST_CASE("padding with the identity never changes the value") {
  std::mt19937_64 rng(71);
  for (const Parity parity : {Parity::even, Parity::odd}) {
    const auto [space, form] = make_standard(1, parity);
    const auto [space_pad, form_pad] = make_standard(2, Parity::even);
    for (int k = 0; k < 10; ++k) {
      const ThetaGroupElement a = random_element(space, form, 5, rng());
      const auto [sum_space, sum_form] = direct_sum(form, form_pad);
      const Z4Matrix padded =
          direct_sum_element(1, 2, a.mat, Z4Matrix::identity(4));
      CHECK(lambda(sum_space, sum_form, padded) == lambda(space, form, a.mat));
    }
  }
}
