#include "thetamult/linalg.hpp"

#include <bit>
#include <stdexcept>

namespace thetamult {

namespace {

void check_range(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

F2Vector F2Vector::from_ints(const std::vector<long long>& v) {
  check_range(v.size() <= 32, "F2Vector: dimension exceeds 32");
  F2Vector r(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    r.set(static_cast<int>(i), static_cast<int>(((v[i] % 2) + 2) % 2));
  return r;
}

void F2Vector::set(int i, int v) {
  if (v & 1)
    bits_ |= (1u << i);
  else
    bits_ &= ~(1u << i);
}

std::vector<long long> F2Vector::to_ints() const {
  std::vector<long long> r(n_);
  for (int i = 0; i < n_; ++i) r[i] = at(i);
  return r;
}

F2Matrix F2Matrix::identity(int n) {
  F2Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

F2Matrix F2Matrix::from_ints(const std::vector<std::vector<long long>>& e) {
  int rows = static_cast<int>(e.size());
  int cols = rows ? static_cast<int>(e[0].size()) : 0;
  check_range(cols <= 32, "F2Matrix: column count exceeds 32");
  F2Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    check_range(static_cast<int>(e[i].size()) == cols,
                "F2Matrix: ragged rows");
    for (int j = 0; j < cols; ++j)
      m.set(i, j, static_cast<int>(((e[i][j] % 2) + 2) % 2));
  }
  return m;
}

F2Matrix F2Matrix::from_rows(const std::vector<F2Vector>& rows) {
  int n = static_cast<int>(rows.size());
  int cols = n ? rows[0].size() : 0;
  F2Matrix m(n, cols);
  for (int i = 0; i < n; ++i) {
    check_range(rows[i].size() == cols, "F2Matrix: ragged rows");
    m.bits_[i] = rows[i].bits();
  }
  return m;
}

void F2Matrix::set(int i, int j, int v) {
  if (v & 1)
    bits_[i] |= (1u << j);
  else
    bits_[i] &= ~(1u << j);
}

F2Matrix F2Matrix::operator*(const F2Matrix& o) const {
  check_range(cols_ == o.rows_, "F2Matrix: size mismatch in product");
  F2Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    uint32_t acc = 0;
    uint32_t row = bits_[i];
    while (row) {
      int k = std::countr_zero(row);
      row &= row - 1;
      acc ^= o.bits_[k];
    }
    r.bits_[i] = acc;
  }
  return r;
}

F2Vector F2Matrix::operator*(const F2Vector& v) const {
  check_range(cols_ == v.size(), "F2Matrix: size mismatch in apply");
  F2Vector r(rows_);
  for (int i = 0; i < rows_; ++i)
    r.set(i, std::popcount(bits_[i] & v.bits()) & 1);
  return r;
}

F2Matrix F2Matrix::operator+(const F2Matrix& o) const {
  check_range(rows_ == o.rows_ && cols_ == o.cols_,
              "F2Matrix: size mismatch in sum");
  F2Matrix r(rows_, cols_);
  for (int i = 0; i < rows_; ++i) r.bits_[i] = bits_[i] ^ o.bits_[i];
  return r;
}

F2Matrix F2Matrix::transposed() const {
  F2Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

bool F2Matrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    if (bits_[i] != (1u << i)) return false;
  return true;
}

bool F2Matrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      if (at(i, j) != at(j, i)) return false;
  return true;
}

bool F2Matrix::is_zero() const {
  for (int i = 0; i < rows_; ++i)
    if (bits_[i]) return false;
  return true;
}

uint64_t F2Matrix::packed_key() const {
  check_range(rows_ * cols_ <= 64, "F2Matrix: too large to pack");
  uint64_t key = 0;
  for (int i = rows_ - 1; i >= 0; --i)
    key = (key << cols_) | static_cast<uint64_t>(bits_[i]);
  return key;
}

std::vector<std::vector<long long>> F2Matrix::to_ints() const {
  std::vector<std::vector<long long>> r(rows_,
                                        std::vector<long long>(cols_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r[i][j] = at(i, j);
  return r;
}

Z4Vector Z4Vector::from_ints(const std::vector<long long>& v) {
  Z4Vector r(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) r.set(static_cast<int>(i), v[i]);
  return r;
}

Z4Vector Z4Vector::operator+(const Z4Vector& o) const {
  check_range(size() == o.size(), "Z4Vector: size mismatch");
  Z4Vector r(size());
  for (int i = 0; i < size(); ++i) r.set(i, c_[i] + o.c_[i]);
  return r;
}

Z4Vector Z4Vector::operator-(const Z4Vector& o) const {
  check_range(size() == o.size(), "Z4Vector: size mismatch");
  Z4Vector r(size());
  for (int i = 0; i < size(); ++i) r.set(i, c_[i] + 4 - o.c_[i]);
  return r;
}

Z4Vector Z4Vector::scaled(long long s) const {
  Z4Vector r(size());
  for (int i = 0; i < size(); ++i) r.set(i, c_[i] * reduce4(s));
  return r;
}

bool Z4Vector::is_zero() const {
  for (uint8_t v : c_)
    if (v) return false;
  return true;
}

F2Vector Z4Vector::mod2() const {
  F2Vector r(size());
  for (int i = 0; i < size(); ++i) r.set(i, c_[i] & 1);
  return r;
}

std::vector<long long> Z4Vector::to_ints() const {
  return std::vector<long long>(c_.begin(), c_.end());
}

Z4Matrix Z4Matrix::identity(int n) {
  Z4Matrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Z4Matrix Z4Matrix::from_ints(const std::vector<std::vector<long long>>& e) {
  int n = static_cast<int>(e.size());
  Z4Matrix m(n);
  for (int i = 0; i < n; ++i) {
    check_range(static_cast<int>(e[i].size()) == n,
                "Z4Matrix: matrix must be square");
    for (int j = 0; j < n; ++j) m.set(i, j, e[i][j]);
  }
  return m;
}

Z4Matrix Z4Matrix::lift(const F2Matrix& m) {
  check_range(m.rows() == m.cols(), "Z4Matrix: lift of non-square matrix");
  Z4Matrix r(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r.set(i, j, m.at(i, j));
  return r;
}

Z4Matrix Z4Matrix::operator*(const Z4Matrix& o) const {
  check_range(n_ == o.n_, "Z4Matrix: size mismatch in product");
  Z4Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      int acc = 0;
      for (int k = 0; k < n_; ++k) acc += at(i, k) * o.at(k, j);
      r.set(i, j, acc);
    }
  return r;
}

Z4Vector Z4Matrix::operator*(const Z4Vector& v) const {
  check_range(n_ == v.size(), "Z4Matrix: size mismatch in apply");
  Z4Vector r(n_);
  for (int i = 0; i < n_; ++i) {
    int acc = 0;
    for (int k = 0; k < n_; ++k) acc += at(i, k) * v.at(k);
    r.set(i, acc);
  }
  return r;
}

Z4Matrix Z4Matrix::operator+(const Z4Matrix& o) const {
  check_range(n_ == o.n_, "Z4Matrix: size mismatch in sum");
  Z4Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j) + o.at(i, j));
  return r;
}

Z4Matrix Z4Matrix::operator-(const Z4Matrix& o) const {
  check_range(n_ == o.n_, "Z4Matrix: size mismatch in difference");
  Z4Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j) + 4 - o.at(i, j));
  return r;
}

Z4Matrix Z4Matrix::scaled(long long s) const {
  Z4Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j) * Z4Vector::reduce4(s));
  return r;
}

Z4Matrix Z4Matrix::transposed() const {
  Z4Matrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(j, i, at(i, j));
  return r;
}

bool Z4Matrix::is_identity() const {
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

F2Matrix Z4Matrix::mod2() const {
  F2Matrix r(n_, n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(i, j) & 1);
  return r;
}

std::vector<std::vector<long long>> Z4Matrix::to_ints() const {
  std::vector<std::vector<long long>> r(n_, std::vector<long long>(n_));
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r[i][j] = at(i, j);
  return r;
}

int rank_f2(const F2Matrix& m) {
  std::vector<uint32_t> rows;
  rows.reserve(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    if (m.row_bits(i)) rows.push_back(m.row_bits(i));
  int rank = 0;
  for (int col = 0; col < m.cols(); ++col) {
    uint32_t bit = 1u << col;
    size_t pivot = rank;
    while (pivot < rows.size() && !(rows[pivot] & bit)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != static_cast<size_t>(rank) && (rows[i] & bit))
        rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

F2Matrix rref_f2(const F2Matrix& m, std::vector<int>* pivots) {
  std::vector<uint32_t> rows(m.rows());
  for (int i = 0; i < m.rows(); ++i) rows[i] = m.row_bits(i);
  std::vector<int> piv;
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    uint32_t bit = 1u << col;
    int pivot = -1;
    for (int i = rank; i < m.rows(); ++i)
      if (rows[i] & bit) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int i = 0; i < m.rows(); ++i)
      if (i != rank && (rows[i] & bit)) rows[i] ^= rows[rank];
    piv.push_back(col);
    ++rank;
  }
  F2Matrix r(m.rows(), m.cols());
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < m.cols(); ++j) r.set(i, j, (rows[i] >> j) & 1u);
  if (pivots) *pivots = piv;
  return r;
}

int intersect_dim_f2(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.cols())
    throw std::invalid_argument("intersect_dim_f2: ambient dimensions differ");
  F2Matrix stacked(a.rows() + b.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) stacked.set(i, j, a.at(i, j));
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) stacked.set(a.rows() + i, j, b.at(i, j));
  return rank_f2(a) + rank_f2(b) - rank_f2(stacked);
}

Z4Matrix invert_z4(const Z4Matrix& m) {
  int n = m.size();
  Z4Matrix a = m;
  Z4Matrix inv = Z4Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    // A pivot must be a unit (odd). A column that is even throughout the
    // remaining rows forces an even determinant.
    int pivot = -1;
    for (int i = col; i < n; ++i)
      if (a.at(i, col) & 1) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw NotInvertible("invert_z4: determinant is not a unit");
    if (pivot != col)
      for (int j = 0; j < n; ++j) {
        int t = a.at(col, j);
        a.set(col, j, a.at(pivot, j));
        a.set(pivot, j, t);
        t = inv.at(col, j);
        inv.set(col, j, inv.at(pivot, j));
        inv.set(pivot, j, t);
      }
    // 1 and 3 are self-inverse mod 4.
    int scale = a.at(col, col);
    if (scale == 3)
      for (int j = 0; j < n; ++j) {
        a.set(col, j, a.at(col, j) * 3);
        inv.set(col, j, inv.at(col, j) * 3);
      }
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      int f = a.at(i, col);
      if (!f) continue;
      for (int j = 0; j < n; ++j) {
        a.set(i, j, a.at(i, j) + (4 - f) * a.at(col, j));
        inv.set(i, j, inv.at(i, j) + (4 - f) * inv.at(col, j));
      }
    }
  }
  return inv;
}

int det_z4(const Z4Matrix& m) {
  int n = m.size();
  if (n > 12)
    throw std::invalid_argument("det_z4: dimension exceeds exact-arithmetic bound");
  if (n == 0) return 1;
  // Bareiss fraction-free elimination on the {0..3} integer lift; all
  // intermediate values are minors, bounded well inside 64 bits for n <= 12.
  std::vector<std::vector<long long>> a = m.to_ints();
  long long sign = 1;
  long long prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return Z4Vector::reduce4(sign * a[n - 1][n - 1]);
}

}  // namespace thetamult
