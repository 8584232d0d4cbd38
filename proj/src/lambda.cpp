#include "thetamult/lambda.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace thetamult {

SymmetricTensor2::SymmetricTensor2(const F2Matrix& m) : M(m) {
  if (m.rows() != m.cols() || !m.is_symmetric())
    throw NotSymmetric("SymmetricTensor2: matrix must be symmetric");
}

namespace {

// tau_v as a matrix: x |-> x + psibar(v,x) v, i.e. I + v (Jbar v)^T.
F2Matrix transvection_f2(const F2Matrix& jbar, const F2Vector& v) {
  const int n = v.size();
  const F2Vector jv = jbar * v;
  F2Matrix t = F2Matrix::identity(n);
  for (int i = 0; i < n; ++i) {
    if (!v.at(i)) continue;
    for (int j = 0; j < n; ++j)
      if (jv.at(j)) t.set(i, j, t.at(i, j) ^ 1);
  }
  return t;
}

bool preserves_q(const QuadraticForm& form, const F2Matrix& t) {
  const int n = form.dim();
  if (t.rows() != n || t.cols() != n) return false;
  if (rank_f2(t) != n) return false;
  if (n <= 16) {
    for (uint32_t bits = 1; bits < (1u << n); ++bits) {
      const F2Vector x(n, bits);
      if (eval_q(form, t * x) != eval_q(form, x)) return false;
    }
    return true;
  }
  // Beyond enumeration range: basis values plus polarization pin q, since
  // an invertible t preserving q on a basis and psibar preserves q.
  for (int i = 0; i < n; ++i) {
    F2Vector ei(n);
    ei.set(i, 1);
    if (eval_q(form, t * ei) != eval_q(form, ei)) return false;
  }
  const F2Matrix gram = t.transposed() * form.jbar() * t;
  return gram == form.jbar();
}

struct BfsTable {
  std::vector<F2Vector> gens;
  std::vector<F2Matrix> gen_mats;
  // element key -> (parent key, index of the generator appended last)
  std::unordered_map<uint64_t, std::pair<uint64_t, int>> parent;
};

using BfsKey = std::tuple<int, uint64_t, uint64_t>;

std::shared_ptr<const BfsTable> bfs_table(const QuadraticForm& form,
                                          uint64_t order_seed) {
  static std::mutex mu;
  static std::map<BfsKey, std::shared_ptr<const BfsTable>> cache;
  const BfsKey key{form.dim(), form.U().packed_key(), order_seed};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  auto table = std::make_shared<BfsTable>();
  table->gens = anisotropic_vectors(form);
  std::mt19937_64 rng(order_seed);
  std::shuffle(table->gens.begin(), table->gens.end(), rng);
  for (const F2Vector& v : table->gens)
    table->gen_mats.push_back(transvection_f2(form.jbar(), v));

  const F2Matrix id = F2Matrix::identity(form.dim());
  std::deque<F2Matrix> queue{id};
  table->parent.emplace(id.packed_key(), std::make_pair(id.packed_key(), -1));
  while (!queue.empty()) {
    const F2Matrix cur = queue.front();
    queue.pop_front();
    const uint64_t cur_key = cur.packed_key();
    for (size_t j = 0; j < table->gen_mats.size(); ++j) {
      F2Matrix next = cur * table->gen_mats[j];
      const uint64_t nk = next.packed_key();
      if (table->parent.emplace(nk, std::make_pair(cur_key, static_cast<int>(j)))
              .second)
        queue.push_back(std::move(next));
    }
  }

  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(table));
  (void)inserted;
  return it->second;
}

std::vector<F2Vector> factor_by_bfs(const QuadraticForm& form,
                                    const F2Matrix& t, uint64_t order_seed) {
  const auto table = bfs_table(form, order_seed);
  uint64_t key = t.packed_key();
  auto it = table->parent.find(key);
  if (it == table->parent.end()) {
    std::ostringstream msg;
    msg << "factor_orthogonal: element lies outside the transvection-generated "
           "subgroup (closure size "
        << table->parent.size() << ")";
    throw SearchExhausted(msg.str());
  }
  std::vector<F2Vector> word;
  while (it->second.second >= 0) {
    word.push_back(table->gens[it->second.second]);
    key = it->second.first;
    it = table->parent.find(key);
  }
  std::reverse(word.begin(), word.end());
  return word;
}

// Looks for x whose displacement y = x + t x is anisotropic; tau_y then
// returns t x to x while fixing the current fixed space pointwise.
bool find_case_a(const QuadraticForm& form, const F2Matrix& t, F2Vector* out) {
  const int n = form.dim();
  auto try_x = [&](const F2Vector& x) {
    const F2Vector y = x + t * x;
    if (!y.is_zero() && eval_q(form, y) == 1) {
      *out = y;
      return true;
    }
    return false;
  };
  if (n <= 16) {
    for (uint32_t bits = 1; bits < (1u << n); ++bits)
      if (try_x(F2Vector(n, bits))) return true;
    return false;
  }
  for (int i = 0; i < n; ++i) {
    F2Vector ei(n);
    ei.set(i, 1);
    if (try_x(ei)) return true;
  }
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  std::uniform_int_distribution<uint32_t> bits(1, F2Vector::mask(n));
  for (int k = 0; k < 4096; ++k)
    if (try_x(F2Vector(n, bits(rng)))) return true;
  return false;
}

std::vector<F2Vector> factor_greedy(const QuadraticForm& form,
                                    const F2Matrix& t, uint64_t order_seed) {
  const int n = form.dim();
  std::vector<F2Vector> aniso = anisotropic_vectors(form);
  std::mt19937_64 rng(order_seed);
  std::shuffle(aniso.begin(), aniso.end(), rng);

  F2Matrix cur = t;
  std::vector<F2Vector> word;
  const size_t max_steps = static_cast<size_t>(4 * n + 16);
  while (!cur.is_identity()) {
    if (word.size() > max_steps)
      throw SearchExhausted("factor_orthogonal: greedy reduction exceeded its step bound");
    F2Vector y;
    if (find_case_a(form, cur, &y)) {
      cur = transvection_f2(form.jbar(), y) * cur;
      word.push_back(y);
      continue;
    }
    // Every displacement is isotropic; apply one transvection to break the
    // degeneracy, preferring a kick that enables the fixed-space step.
    bool kicked = false;
    for (const F2Vector& u : aniso) {
      const F2Matrix cand = transvection_f2(form.jbar(), u) * cur;
      if (cand.is_identity() || find_case_a(form, cand, &y)) {
        cur = cand;
        word.push_back(u);
        kicked = true;
        break;
      }
    }
    if (!kicked)
      throw SearchExhausted("factor_orthogonal: greedy reduction found no usable transvection");
  }
  // Each step left-multiplied an involution, so the collected word, read in
  // push order, multiplies out to t.
  return word;
}

}  // namespace

std::vector<F2Vector> factor_orthogonal(const QuadraticForm& form,
                                        const F2Matrix& t,
                                        uint64_t generator_order_seed) {
  if (t.rows() != form.dim() || t.cols() != form.dim())
    throw std::invalid_argument("factor_orthogonal: matrix must have size 2g");
  if (!preserves_q(form, t))
    throw NotOrthogonal("factor_orthogonal: input does not preserve q");
  if (t.is_identity()) return {};
  if (form.dim() <= 6) return factor_by_bfs(form, t, generator_order_seed);
  return factor_greedy(form, t, generator_order_seed);
}

size_t transvection_subgroup_order(const QuadraticForm& form) {
  if (form.dim() > 6)
    throw std::invalid_argument(
        "transvection_subgroup_order: enumeration supported for g <= 3 only");
  return bfs_table(form, 0)->parent.size();
}

int qtilde(const QuadraticForm& form, const SymmetricTensor2& tensor) {
  const int n = form.dim();
  if (tensor.M.rows() != n)
    throw std::invalid_argument("qtilde: tensor size must be 2g");
  int acc = 0;
  for (int i = 0; i < n; ++i) {
    if (tensor.M.at(i, i)) acc ^= form.U().at(i, i);
    for (int j = i + 1; j < n; ++j)
      if (tensor.M.at(i, j)) acc ^= form.jbar().at(i, j);
  }
  return acc;
}

int lambda_gamma2(const SymplecticSpace& space, const QuadraticForm& form,
                  const Z4Matrix& delta) {
  const int n = space.dim();
  if (delta.size() != n)
    throw std::invalid_argument("lambda_gamma2: matrix must have size 2g");
  F2Matrix beta(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int e = delta.at(i, j);
      const int expected_parity = (i == j) ? 1 : 0;
      if ((e & 1) != expected_parity)
        throw NotInGamma2("lambda_gamma2: element is not congruent to I mod 2");
      beta.set(i, j, (i == j) ? (e == 3 ? 1 : 0) : (e == 2 ? 1 : 0));
    }
  const F2Matrix M = beta * space.Jbar;
  if (!M.is_symmetric())
    throw AsymmetricTensor(
        "lambda_gamma2: beta*Jbar is asymmetric; input does not preserve psi");
  return 2 * qtilde(form, SymmetricTensor2(M));
}

namespace {

LambdaReport lambda_impl(const SymplecticSpace& space,
                         const QuadraticForm& form, const Z4Matrix& gamma,
                         int pad_depth) {
  const F2Matrix tbar = gamma.mod2();
  std::vector<F2Vector> word_bar;
  try {
    word_bar = factor_orthogonal(form, tbar);
  } catch (const SearchExhausted&) {
    // Outside the transvection-generated subgroup. Direct-summing with the
    // identity on one extra hyperbolic plane leaves the character fixed and
    // lands in a group where the factorization exists.
    if (pad_depth >= 2) throw;
    const auto [pad_space, pad_form] =
        make_standard(1, Parity::even);
    (void)pad_space;
    const auto [big_space, big_form] = direct_sum(form, pad_form);
    const Z4Matrix big_gamma =
        direct_sum_element(form.g(), 1, gamma, Z4Matrix::identity(2));
    return lambda_impl(big_space, big_form, big_gamma, pad_depth + 1);
  }

  LambdaReport report;
  Z4Matrix w = Z4Matrix::identity(space.dim());
  for (const F2Vector& vbar : word_bar) {
    Z4Vector v(space.dim());
    for (int i = 0; i < space.dim(); ++i) v.set(i, vbar.at(i));
    report.word.vectors.push_back(v);
    w = w * transvection(space, form, v).mat;
  }
  const Z4Matrix delta = invert_z4(w) * gamma;
  if (!delta.mod2().is_identity())
    throw std::logic_error("lambda: factorization failed to match mod 2");
  const int k = static_cast<int>(word_bar.size());
  report.lambda = (k + lambda_gamma2(space, form, delta)) % 4;
  return report;
}

}  // namespace

int lambda(const SymplecticSpace& space, const QuadraticForm& form,
           const Z4Matrix& gamma) {
  if (!is_member(space, form, gamma))
    throw NotMember("lambda: matrix is not a theta-group member");
  return lambda_impl(space, form, gamma, 0).lambda;
}

LambdaReport lambda_report(const SymplecticSpace& space,
                           const QuadraticForm& form, const Z4Matrix& gamma) {
  if (!is_member(space, form, gamma))
    throw NotMember("lambda: matrix is not a theta-group member");
  LambdaReport report = lambda_impl(space, form, gamma, 0);
  report.dickson = dickson(form, gamma.mod2());
  return report;
}

int CharacterTable::lambda_of(const Z4Matrix& m) const {
  for (const auto& [mat, value] : entries)
    if (mat == m) return value;
  return -1;
}

CharacterTable character_table_g1(Parity parity) {
  const auto [space, form] = make_standard(1, parity);
  std::vector<Z4Matrix> gens;
  const Z4Matrix S = Z4Matrix::from_ints({{0, -1}, {1, 0}});
  if (parity == Parity::even) {
    gens = {S, Z4Matrix::from_ints({{1, 2}, {0, 1}}),
            transvection(space, form, Z4Vector::from_ints({1, 1})).mat};
  } else {
    gens = {S, Z4Matrix::from_ints({{1, 1}, {0, 1}})};
  }
  std::map<std::string, Z4Matrix> closure;
  std::deque<Z4Matrix> queue{Z4Matrix::identity(2)};
  closure.emplace(queue.front().key(), queue.front());
  while (!queue.empty()) {
    const Z4Matrix cur = queue.front();
    queue.pop_front();
    for (const Z4Matrix& gen : gens) {
      Z4Matrix next = cur * gen;
      if (closure.emplace(next.key(), next).second) queue.push_back(next);
    }
  }
  CharacterTable table;
  for (const auto& [key, mat] : closure) {
    (void)key;
    table.entries.emplace_back(mat, lambda(space, form, mat));
  }
  return table;
}

int lambda_direct_sum(const SymplecticSpace& space1, const QuadraticForm& form1,
                      const Z4Matrix& gamma1, const SymplecticSpace& space2,
                      const QuadraticForm& form2, const Z4Matrix& gamma2) {
  if (!is_member(space1, form1, gamma1) || !is_member(space2, form2, gamma2))
    throw NotMember("lambda_direct_sum: both factors must be members");
  const auto [space, form] = direct_sum(form1, form2);
  const Z4Matrix big =
      direct_sum_element(form1.g(), form2.g(), gamma1, gamma2);
  return lambda(space, form, big);
}

}  // namespace thetamult
