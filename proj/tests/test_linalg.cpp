#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "thetamult/linalg.hpp"

using namespace thetamult;

TEST_CASE("f2 vectors reduce integer input mod 2") {
  const F2Vector v = F2Vector::from_ints({3, -2, 1, 0});
  CHECK(v.at(0) == 1);
  CHECK(v.at(1) == 0);
  CHECK(v.at(2) == 1);
  CHECK(v.at(3) == 0);
  CHECK((v + v).is_zero());
}

TEST_CASE("f2 rank and rref") {
  const F2Matrix id = F2Matrix::identity(3);
  CHECK(rank_f2(id) == 3);
  CHECK(rref_f2(id) == id);

  const F2Matrix repeated = F2Matrix::from_ints({{1, 1, 0}, {1, 1, 0}});
  CHECK(rank_f2(repeated) == 1);

  const F2Matrix m = F2Matrix::from_ints({{1, 1, 0}, {0, 1, 1}});
  CHECK(rank_f2(m) == 2);
  std::vector<int> pivots;
  const F2Matrix r = rref_f2(m, &pivots);
  CHECK(pivots == std::vector<int>{0, 1});
  CHECK(r == F2Matrix::from_ints({{1, 0, 1}, {0, 1, 1}}));
  CHECK(rref_f2(r) == r);
}

TEST_CASE("intersection dimension of row spans") {
  const F2Matrix a = F2Matrix::from_ints({{1, 0, 0}, {0, 1, 0}});
  const F2Matrix b = F2Matrix::from_ints({{0, 1, 0}, {0, 0, 1}});
  CHECK(intersect_dim_f2(a, b) == 1);
  CHECK(intersect_dim_f2(b, a) == 1);
  CHECK(intersect_dim_f2(a, a) == 2);

  const F2Matrix disjoint = F2Matrix::from_ints({{0, 0, 1}});
  CHECK(intersect_dim_f2(a, disjoint) == 0);
}

TEST_CASE("matrix product over f2 acts like mod-2 integer product") {
  const F2Matrix a = F2Matrix::from_ints({{1, 1}, {0, 1}});
  const F2Matrix b = F2Matrix::from_ints({{1, 0}, {1, 1}});
  CHECK(a * b == F2Matrix::from_ints({{0, 1}, {1, 1}}));
  // Component i sits in bit i: (1,1) is 0b11 and the product (0,1) is 0b10.
  const F2Vector x(2, 0b11);
  CHECK((a * x) == F2Vector(2, 0b10));
}

TEST_CASE("packed keys separate small matrices") {
  const F2Matrix a = F2Matrix::from_ints({{1, 0}, {0, 1}});
  const F2Matrix b = F2Matrix::from_ints({{1, 1}, {0, 1}});
  CHECK(a.packed_key() != b.packed_key());
}

TEST_CASE("z4 arithmetic wraps residues") {
  CHECK(Z4Vector::reduce4(-1) == 3);
  CHECK(Z4Vector::reduce4(7) == 3);
  const Z4Vector v = Z4Vector::from_ints({-1, 2});
  CHECK(v.at(0) == 3);
  CHECK(v.scaled(2).at(0) == 2);
  CHECK(v.mod2().at(0) == 1);
  CHECK(v.mod2().at(1) == 0);
}

TEST_CASE("z4 inverse on frozen examples") {
  const Z4Matrix s = Z4Matrix::from_ints({{0, -1}, {1, 0}});
  CHECK(invert_z4(s) == Z4Matrix::from_ints({{0, 1}, {3, 0}}));

  const Z4Matrix t = Z4Matrix::from_ints({{0, 1}, {3, 2}});
  CHECK(invert_z4(t) == Z4Matrix::from_ints({{2, 3}, {1, 0}}));

  CHECK((invert_z4(t) * t).is_identity());
  CHECK((t * invert_z4(t)).is_identity());
}

TEST_CASE("z4 inverse rejects matrices singular mod 2") {
  const Z4Matrix bad = Z4Matrix::from_ints({{2, 0}, {0, 1}});
  CHECK_THROWS_AS(invert_z4(bad), NotInvertible);
}

TEST_CASE("z4 determinants") {
  CHECK(det_z4(Z4Matrix::identity(3)) == 1);
  CHECK(det_z4(Z4Matrix::from_ints({{0, -1}, {1, 0}})) == 1);
  CHECK(det_z4(Z4Matrix::from_ints({{3, 0}, {0, 1}})) == 3);
  CHECK(det_z4(Z4Matrix::from_ints({{2, 1}, {1, 2}})) == 3);
  CHECK(det_z4(Z4Matrix::from_ints({{2, 0}, {0, 2}})) == 0);
}

TEST_CASE("random inverses round-trip") {
  std::mt19937_64 rng(7);
  int produced = 0;
  while (produced < 50) {
    const int n = 2 + static_cast<int>(rng() % 4);
    Z4Matrix m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.set(i, j, static_cast<long long>(rng() & 3));
    try {
      const Z4Matrix inv = invert_z4(m);
      CHECK((inv * m).is_identity());
      CHECK((m * inv).is_identity());
      ++produced;
    } catch (const NotInvertible&) {
      // singular draw; try another
    }
  }
}

TEST_CASE("lift embeds f2 matrices with 0/1 entries") {
  const F2Matrix m = F2Matrix::from_ints({{1, 0}, {1, 1}});
  const Z4Matrix lifted = Z4Matrix::lift(m);
  CHECK(lifted.at(0, 0) == 1);
  CHECK(lifted.at(1, 0) == 1);
  CHECK(lifted.at(0, 1) == 0);
  CHECK(lifted.mod2() == m);
}
