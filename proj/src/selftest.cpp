#include "thetamult/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "thetamult/lagrangian.hpp"
#include "thetamult/lambda.hpp"
#include "thetamult/siegel.hpp"

namespace thetamult {

namespace {

struct Config {
  int g;
  Parity parity;
};

const std::vector<Config>& all_configs() {
  static const std::vector<Config> configs = {
      {1, Parity::even}, {1, Parity::odd},  {2, Parity::even},
      {2, Parity::odd},  {3, Parity::even}, {3, Parity::odd}};
  return configs;
}

std::string format_residual(double r) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", r);
  return buf;
}

F2Matrix random_f2(int rows, int cols, std::mt19937_64& rng) {
  F2Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<int>(rng() & 1));
  return m;
}

Z4Matrix random_z4(int n, std::mt19937_64& rng) {
  Z4Matrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, static_cast<long long>(rng() & 3));
  return m;
}

// Determinant-1 change of basis as a product of elementary shears.
Z4Matrix random_det1(int n, std::mt19937_64& rng) {
  Z4Matrix c = Z4Matrix::identity(n);
  for (int step = 0; step < 4; ++step) {
    if (n < 2) break;
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (j == i) j = (j + 1) % n;
    Z4Matrix shear = Z4Matrix::identity(n);
    shear.set(i, j, 1 + static_cast<long long>(rng() % 3));
    c = c * shear;
  }
  return c;
}

class Runner {
 public:
  explicit Runner(const SelftestOptions& options) : options_(options) {}

  std::vector<SelftestItem> take() { return std::move(items_); }

  template <typename Fn>
  void item(const std::string& name, Fn&& fn) {
    const int index = static_cast<int>(items_.size()) + 1;
    rng_.seed(options_.seed * 0x9e3779b97f4a7c15ull + index);
    SelftestItem entry{index, name, false, ""};
    try {
      std::string detail;
      entry.passed = fn(rng_, detail);
      entry.detail = detail;
    } catch (const std::exception& e) {
      entry.passed = false;
      entry.detail = std::string("exception: ") + e.what();
    }
    items_.push_back(std::move(entry));
  }

  int eval_lambda(const SymplecticSpace& space, const QuadraticForm& form,
                  const Z4Matrix& m) const {
    return options_.lambda_override ? options_.lambda_override(space, form, m)
                                    : lambda(space, form, m);
  }

 private:
  SelftestOptions options_;
  std::mt19937_64 rng_;
  std::vector<SelftestItem> items_;
};

OrientedLagrangian random_lagrangian(const SymplecticSpace& space,
                                     const QuadraticForm& form,
                                     std::mt19937_64& rng) {
  const ThetaGroupElement mover =
      random_element(space, form, 6, rng());
  return apply(mover, standard_lagrangian(space, form));
}

}  // namespace

bool all_passed(const std::vector<SelftestItem>& items) {
  return std::all_of(items.begin(), items.end(),
                     [](const SelftestItem& i) { return i.passed; });
}

std::vector<SelftestItem> run_selftest(const SelftestOptions& options) {
  Runner run(options);

  // --- residue linear algebra ---

  run.item("z4-inverse-roundtrip", [](std::mt19937_64& rng, std::string& detail) {
    int checked = 0;
    for (int k = 0; k < 20; ++k) {
      const int g = 1 + k % 3;
      const auto [space, form] =
          make_standard(g, k % 2 ? Parity::odd : Parity::even);
      const Z4Matrix m = random_element(space, form, 5, rng()).mat;
      const Z4Matrix inv = invert_z4(m);
      if (!(inv * m).is_identity() || !(m * inv).is_identity()) return false;
      ++checked;
    }
    detail = std::to_string(checked) + " matrices";
    return true;
  });

  run.item("f2-rank-row-ops", [](std::mt19937_64& rng, std::string& detail) {
    for (int k = 0; k < 25; ++k) {
      const int rows = 2 + static_cast<int>(rng() % 5);
      const int cols = 2 + static_cast<int>(rng() % 7);
      const F2Matrix m = random_f2(rows, cols, rng);
      const int base = rank_f2(m);
      std::vector<F2Vector> swapped;
      for (int i = 0; i < rows; ++i) swapped.push_back(m.row(i));
      std::swap(swapped[0], swapped[rows - 1]);
      if (rank_f2(F2Matrix::from_rows(swapped)) != base) return false;
      std::vector<F2Vector> added = swapped;
      added[0] = added[0] + added[rows - 1];
      if (rank_f2(F2Matrix::from_rows(added)) != base) return false;
    }
    detail = "25 matrices";
    return true;
  });

  run.item("intersect-dim-symmetry", [](std::mt19937_64& rng, std::string& detail) {
    for (int k = 0; k < 25; ++k) {
      const int cols = 3 + static_cast<int>(rng() % 6);
      const F2Matrix a = random_f2(1 + static_cast<int>(rng() % 4), cols, rng);
      const F2Matrix b = random_f2(1 + static_cast<int>(rng() % 4), cols, rng);
      if (intersect_dim_f2(a, b) != intersect_dim_f2(b, a)) return false;
      if (intersect_dim_f2(a, a) != rank_f2(a)) return false;
    }
    detail = "25 pairs";
    return true;
  });

  run.item("mod2-multiplicative", [](std::mt19937_64& rng, std::string& detail) {
    for (int k = 0; k < 25; ++k) {
      const int n = 2 + static_cast<int>(rng() % 4);
      const Z4Matrix a = random_z4(n, rng);
      const Z4Matrix b = random_z4(n, rng);
      if (!((a * b).mod2() == a.mod2() * b.mod2())) return false;
    }
    detail = "25 pairs";
    return true;
  });

  // --- symplectic core ---

  run.item("transvection-square-mod2", [](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 10; ++k) {
        const Z4Vector v = random_anisotropic(form, rng);
        const Z4Matrix t = transvection(space, form, v).mat;
        if (!(t * t).mod2().is_identity()) return false;
      }
    }
    detail = "10 per configuration";
    return true;
  });

  run.item("transvection-conjugation", [](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 8; ++k) {
        const Z4Matrix gamma = random_element(space, form, 5, rng()).mat;
        const Z4Vector v = random_anisotropic(form, rng);
        const Z4Matrix lhs = gamma * transvection(space, form, v).mat *
                             invert_z4(gamma);
        const Z4Matrix rhs = transvection(space, form, gamma * v).mat;
        if (!(lhs == rhs)) return false;
      }
    }
    detail = "8 per configuration";
    return true;
  });

  run.item("membership-closure", [](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 8; ++k) {
        const Z4Matrix a = random_element(space, form, 5, rng()).mat;
        const Z4Matrix b = random_element(space, form, 5, rng()).mat;
        if (!is_member(space, form, a * b)) return false;
        if (!is_member(space, form, invert_z4(a))) return false;
      }
    }
    detail = "8 per configuration";
    return true;
  });

  run.item("gamma2-image-size-g1", [](std::mt19937_64&, std::string& detail) {
    for (const Parity parity : {Parity::even, Parity::odd}) {
      const auto [space, form] = make_standard(1, parity);
      std::set<std::string> seen;
      for (int bits = 0; bits < 8; ++bits) {
        F2Matrix m(2, 2);
        m.set(0, 0, bits & 1);
        m.set(1, 1, (bits >> 1) & 1);
        m.set(0, 1, (bits >> 2) & 1);
        m.set(1, 0, (bits >> 2) & 1);
        seen.insert(gamma2_element(space, form, m).mat.key());
      }
      if (seen.size() != 8) return false;
    }
    detail = "8 = 2^{g(2g+1)} elements, both parities";
    return true;
  });

  run.item("arf-direct-sum", [](std::mt19937_64&, std::string& detail) {
    for (const Parity p1 : {Parity::even, Parity::odd})
      for (const Parity p2 : {Parity::even, Parity::odd}) {
        const auto f1 = QuadraticForm::standard(1, p1);
        const auto f2 = QuadraticForm::standard(1, p2);
        const Parity want = (p1 == p2) ? Parity::even : Parity::odd;
        if (arf_parity(direct_sum(f1, f2).second) != want) return false;
      }
    detail = "all four parity combinations";
    return true;
  });

  // --- the character ---

  run.item("lambda-homomorphism", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 15; ++k) {
        const Z4Matrix a = random_element(space, form, 6, rng()).mat;
        const Z4Matrix b = random_element(space, form, 6, rng()).mat;
        const int sum = (run.eval_lambda(space, form, a) +
                         run.eval_lambda(space, form, b)) % 4;
        if (run.eval_lambda(space, form, a * b) != sum) return false;
      }
    }
    detail = "15 pairs per configuration";
    return true;
  });

  run.item("lambda-dickson-parity", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 20; ++k) {
        const Z4Matrix m = random_element(space, form, 6, rng()).mat;
        if (run.eval_lambda(space, form, m) % 2 != dickson(form, m.mod2()))
          return false;
      }
    }
    detail = "20 members per configuration";
    return true;
  });

  run.item("lambda-conjugation", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 10; ++k) {
        const Z4Matrix gamma = random_element(space, form, 6, rng()).mat;
        const Z4Matrix delta = random_element(space, form, 6, rng()).mat;
        const Z4Matrix conj = gamma * delta * invert_z4(gamma);
        if (run.eval_lambda(space, form, conj) !=
            run.eval_lambda(space, form, delta))
          return false;
      }
    }
    detail = "10 pairs per configuration";
    return true;
  });

  run.item("lambda-gamma2-restriction", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 25; ++k) {
        const F2Matrix m = random_symmetric_f2(space.dim(), rng);
        const Z4Matrix element = gamma2_element(space, form, m).mat;
        const int want = (2 * qtilde(form, SymmetricTensor2(m))) % 4;
        if (run.eval_lambda(space, form, element) != want) return false;
      }
    }
    detail = "25 level-2 elements per configuration";
    return true;
  });

  run.item("lambda-transvection-value", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 20; ++k) {
        const Z4Vector v = random_anisotropic(form, rng);
        if (run.eval_lambda(space, form, transvection(space, form, v).mat) != 1)
          return false;
      }
    }
    detail = "20 transvections per configuration";
    return true;
  });

  run.item("lambda-factorization-independence", [](std::mt19937_64& rng, std::string& detail) {
    int checked = 0, skipped = 0;
    for (const Config& c : all_configs()) {
      const auto [space, form] = make_standard(c.g, c.parity);
      for (int k = 0; k < 10; ++k) {
        const Z4Matrix gamma = random_element(space, form, 6, rng()).mat;
        int values[2];
        bool usable = true;
        for (int s = 0; s < 2; ++s) {
          std::vector<F2Vector> word;
          try {
            word = factor_orthogonal(form, gamma.mod2(), s ? 91 : 17);
          } catch (const SearchExhausted&) {
            usable = false;  // the exceptional coset; counted, not hidden
            break;
          }
          Z4Matrix w = Z4Matrix::identity(space.dim());
          for (const F2Vector& vbar : word) {
            Z4Vector v(space.dim());
            for (int i = 0; i < space.dim(); ++i) v.set(i, vbar.at(i));
            w = w * transvection(space, form, v).mat;
          }
          const int k_len = static_cast<int>(word.size());
          values[s] =
              (k_len + lambda_gamma2(space, form, invert_z4(w) * gamma)) % 4;
        }
        if (!usable) {
          ++skipped;
          continue;
        }
        if (values[0] != values[1]) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " factored twice, " +
             std::to_string(skipped) + " outside the transvection subgroup";
    return true;
  });

  run.item("lambda-uniqueness-g1-even", [&run](std::mt19937_64&, std::string& detail) {
    const auto [space, form] = make_standard(1, Parity::even);
    const std::vector<Z4Matrix> gens = {
        Z4Matrix::from_ints({{0, -1}, {1, 0}}),
        Z4Matrix::from_ints({{1, 2}, {0, 1}}),
        transvection(space, form, Z4Vector::from_ints({1, 1})).mat};
    // Walk the Cayley graph once to list the group.
    std::map<std::string, Z4Matrix> group;
    {
      std::vector<Z4Matrix> queue{Z4Matrix::identity(2)};
      group.emplace(queue.front().key(), queue.front());
      while (!queue.empty()) {
        const Z4Matrix cur = queue.back();
        queue.pop_back();
        for (const Z4Matrix& gen : gens) {
          Z4Matrix next = cur * gen;
          if (group.emplace(next.key(), next).second) queue.push_back(next);
        }
      }
    }
    if (group.size() != 16) {
      detail = "group size " + std::to_string(group.size());
      return false;
    }
    // The transvection value alone leaves two characters alive (they agree on
    // every transvection, being conjugation-invariant); the restriction to the
    // level-2 subgroup is what separates them.
    int found = 0;
    std::map<std::string, int> unique_hom;
    for (int assignment = 0; assignment < 64; ++assignment) {
      const int a[3] = {assignment & 3, (assignment >> 2) & 3,
                        (assignment >> 4) & 3};
      if (a[2] != 1) continue;  // the transvection value pins the character
      std::map<std::string, int> value{{Z4Matrix::identity(2).key(), 0}};
      std::vector<Z4Matrix> queue{Z4Matrix::identity(2)};
      bool consistent = true;
      while (!queue.empty() && consistent) {
        const Z4Matrix cur = queue.back();
        queue.pop_back();
        const int base = value.at(cur.key());
        for (int i = 0; i < 3; ++i) {
          const Z4Matrix next = cur * gens[i];
          const int want = (base + a[i]) % 4;
          auto [it, inserted] = value.emplace(next.key(), want);
          if (inserted)
            queue.push_back(next);
          else if (it->second != want) {
            consistent = false;
            break;
          }
        }
      }
      if (!consistent) continue;
      bool level2_ok = true;
      for (const auto& [key, mat] : group) {
        bool in_gamma2 = true;
        for (int r = 0; r < 2 && in_gamma2; ++r)
          for (int c = 0; c < 2; ++c)
            if ((mat.at(r, c) - (r == c ? 1 : 0)) % 2 != 0) {
              in_gamma2 = false;
              break;
            }
        if (in_gamma2 && value.at(key) != lambda_gamma2(space, form, mat)) {
          level2_ok = false;
          break;
        }
      }
      if (level2_ok) {
        ++found;
        unique_hom = value;
      }
    }
    if (found != 1) {
      detail = std::to_string(found) +
               " homomorphisms with value 1 on transvections and the level-2 "
               "pattern";
      return false;
    }
    for (const auto& [key, mat] : group)
      if (run.eval_lambda(space, form, mat) != unique_hom.at(key)) {
        detail = "unique homomorphism disagrees with the computed character";
        return false;
      }
    detail = "exactly one homomorphism, equal to the character on all 16";
    return true;
  });

  run.item("lambda-direct-sum", [&run](std::mt19937_64& rng, std::string& detail) {
    for (int k = 0; k < 15; ++k) {
      const int g1 = 1 + static_cast<int>(rng() % 2);
      const int g2 = 1 + static_cast<int>(rng() % 2);
      const Parity p1 = rng() % 2 ? Parity::odd : Parity::even;
      const Parity p2 = rng() % 2 ? Parity::odd : Parity::even;
      const auto [s1, f1] = make_standard(g1, p1);
      const auto [s2, f2] = make_standard(g2, p2);
      const Z4Matrix m1 = random_element(s1, f1, 6, rng()).mat;
      const Z4Matrix m2 = random_element(s2, f2, 6, rng()).mat;
      const auto [ssum, fsum] = direct_sum(f1, f2);
      const Z4Matrix msum = direct_sum_element(g1, g2, m1, m2);
      const int want =
          (run.eval_lambda(s1, f1, m1) + run.eval_lambda(s2, f2, m2)) % 4;
      if (run.eval_lambda(ssum, fsum, msum) != want) return false;
      if (lambda_direct_sum(s1, f1, m1, s2, f2, m2) !=
          (lambda(s1, f1, m1) + lambda(s2, f2, m2)) % 4)
        return false;
    }
    detail = "15 random pairs, g parts in {1,2}";
    return true;
  });

  // --- lagrangian pairing ---

  run.item("jm-rebasing-invariance", [](std::mt19937_64& rng, std::string& detail) {
    const auto [space, form] = make_standard(2, Parity::even);
    for (int k = 0; k < 10; ++k) {
      const OrientedLagrangian l1 = random_lagrangian(space, form, rng);
      const OrientedLagrangian l2 = random_lagrangian(space, form, rng);
      const int base = m_jm(l1, l2);
      const OrientedLagrangian r1 = rebased(l1, random_det1(2, rng));
      const OrientedLagrangian r2 = rebased(l2, random_det1(2, rng));
      if (m_jm(r1, r2) != base) return false;
    }
    detail = "10 pairs at genus 2";
    return true;
  });

  run.item("jm-transversal-choice", [](std::mt19937_64& rng, std::string& detail) {
    const auto [space, form] = make_standard(2, Parity::even);
    const OrientedLagrangian start = standard_lagrangian(space, form);
    // A common transversal exists only when the reduced intersection has the
    // same parity as g (same ruling family); other pairs are skipped.
    int tested = 0;
    for (int draw = 0; draw < 64 && tested < 8; ++draw) {
      const OrientedLagrangian l1 = random_lagrangian(space, form, rng);
      const OrientedLagrangian l2 =
          draw % 2 ? random_lagrangian(space, form, rng)
                   : rebased(l1, random_det1(2, rng));
      const int inter = intersect_dim_f2(l1.reduced_rows(), l2.reduced_rows());
      if ((space.g - inter) % 2 != 0) continue;
      int reference = 0;
      int found = 0;
      for (int attempt = 0; attempt < 64 && found < 4; ++attempt) {
        const OrientedLagrangian d =
            apply(random_element(space, form, 7, rng()), start);
        if (intersect_dim_f2(d.reduced_rows(), l1.reduced_rows()) != 0)
          continue;
        if (intersect_dim_f2(d.reduced_rows(), l2.reduced_rows()) != 0)
          continue;
        const int product = sigma_transversal(l1, d) * sigma_transversal(l2, d);
        if (found == 0)
          reference = product;
        else if (product != reference) {
          detail = "convention defect: sigma depends on the transversal";
          return false;
        }
        ++found;
      }
      if (found < 2) {
        detail = "could not collect enough transversals";
        return false;
      }
      ++tested;
    }
    if (tested < 8) {
      detail = "could not collect enough same-family pairs";
      return false;
    }
    detail = "8 pairs, up to 4 transversals each";
    return true;
  });

  run.item("jm-lambda-agreement", [&run](std::mt19937_64& rng, std::string& detail) {
    for (const int g : {2, 3}) {
      const auto [space, form] = make_standard(g, Parity::even);
      const OrientedLagrangian l0 = standard_lagrangian(space, form);
      const int samples = g == 2 ? 10 : 4;
      for (int k = 0; k < samples; ++k) {
        const ThetaGroupElement gamma = random_element(space, form, 6, rng());
        if (lambda_jm(gamma, l0) != run.eval_lambda(space, form, gamma.mat))
          return false;
      }
    }
    detail = "10 elements at genus 2, 4 at genus 3";
    return true;
  });

  run.item("jm-composition", [](std::mt19937_64& rng, std::string& detail) {
    const auto [space, form] = make_standard(2, Parity::even);
    for (int k = 0; k < 8; ++k) {
      const OrientedLagrangian l1 = random_lagrangian(space, form, rng);
      const OrientedLagrangian l2 = random_lagrangian(space, form, rng);
      const OrientedLagrangian l3 = random_lagrangian(space, form, rng);
      if ((m_jm(l1, l2) + m_jm(l2, l3)) % 4 != m_jm(l1, l3)) return false;
    }
    detail = "8 triples at genus 2";
    return true;
  });

  // --- numerics ---

  run.item("theta-cocycle-dets", [](std::mt19937_64& rng, std::string& detail) {
    double worst = 0.0;
    for (const int g : {1, 2}) {
      for (int k = 0; k < 8; ++k) {
        const IntSymplectic m1 = random_theta_group_element(g, 5, rng());
        const IntSymplectic m2 = random_theta_group_element(g, 5, rng());
        const SiegelPoint tau = random_siegel_point(g, rng());
        const Complex chained = denominator_det(m1 * m2, tau);
        const Complex split =
            denominator_det(m1, mobius_act(m2, tau)) * denominator_det(m2, tau);
        worst = std::max(worst,
                         std::abs(chained - split) / std::abs(chained));
      }
    }
    detail = "max relative gap " + format_residual(worst);
    return worst < 1e-9;
  });

  run.item("theta-residual-sweep", [](std::mt19937_64& rng, std::string& detail) {
    double worst = 0.0;
    for (const int g : {1, 2}) {
      for (int k = 0; k < 6; ++k) {
        const IntSymplectic m = random_theta_group_element(g, 6, rng());
        const SiegelPoint tau = random_siegel_point(g, rng());
        worst = std::max(worst, functional_equation_residual(m, tau, 1e-10));
      }
    }
    detail = "max residual " + format_residual(worst);
    return worst < 1e-8;
  });

  run.item("theta-truncation-stability", [](std::mt19937_64& rng, std::string& detail) {
    for (const int g : {1, 2}) {
      for (int k = 0; k < 10; ++k) {
        const SiegelPoint tau = random_siegel_point(g, rng());
        const ThetaValue tv = theta_value(tau, 1e-10);
        const Complex wider =
            theta_partial_sum(tau, 2 * std::max(tv.truncation_radius, 1));
        if (std::abs(wider - tv.value) >= tv.error_bound) return false;
      }
    }
    detail = "10 points per genus in {1,2}";
    return true;
  });

  run.item("theta-mobius-composition", [](std::mt19937_64& rng, std::string& detail) {
    double worst = 0.0;
    for (const int g : {1, 2}) {
      for (int k = 0; k < 10; ++k) {
        const IntSymplectic m1 = random_theta_group_element(g, 5, rng());
        const IntSymplectic m2 = random_theta_group_element(g, 5, rng());
        const SiegelPoint tau = random_siegel_point(g, rng());
        const SiegelPoint once = mobius_act(m1 * m2, tau);
        const SiegelPoint twice = mobius_act(m1, mobius_act(m2, tau));
        for (int i = 0; i < g; ++i)
          for (int j = 0; j < g; ++j)
            worst = std::max(worst,
                             std::abs(once.tau[i][j] - twice.tau[i][j]));
      }
    }
    detail = "max entrywise gap " + format_residual(worst);
    return worst < 1e-10;
  });

  return run.take();
}

}  // namespace thetamult
