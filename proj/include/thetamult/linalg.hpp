#pragma once

// Exact dense linear algebra over Z/4Z and over F2.
//
// Everything here is sized for the small symplectic groups the rest of the
// project works with (matrix dimension 2g with g <= 10), so dense storage
// and cubic algorithms are fine. F2 rows are kept as bitmasks, which makes
// the closure searches in the character module cheap.
//
// Conventions: vectors are columns, matrices act on the left. Z/4 entries
// live in {0,1,2,3}; the units are 1 and 3 (= -1).

#include <cstdint>
#include <string>
#include <vector>

#include "thetamult/errors.hpp"

namespace thetamult {

class F2Vector {
 public:
  F2Vector() = default;
  explicit F2Vector(int n) : n_(n) {}
  F2Vector(int n, uint32_t bits) : n_(n), bits_(bits & mask(n)) {}

  // Entries are reduced mod 2, so any integer vector is accepted.
  static F2Vector from_ints(const std::vector<long long>& v);

  int size() const { return n_; }
  int at(int i) const { return static_cast<int>((bits_ >> i) & 1u); }
  void set(int i, int v);
  uint32_t bits() const { return bits_; }
  bool is_zero() const { return bits_ == 0; }

  F2Vector operator+(const F2Vector& o) const {
    return F2Vector(n_, bits_ ^ o.bits_);
  }
  bool operator==(const F2Vector& o) const = default;

  std::vector<long long> to_ints() const;

  static uint32_t mask(int n) {
    return n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
  }

 private:
  int n_ = 0;
  uint32_t bits_ = 0;
};

class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(int rows, int cols) : rows_(rows), cols_(cols), bits_(rows, 0) {}

  static F2Matrix identity(int n);
  static F2Matrix from_ints(const std::vector<std::vector<long long>>& e);
  static F2Matrix from_rows(const std::vector<F2Vector>& rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int at(int i, int j) const {
    return static_cast<int>((bits_[i] >> j) & 1u);
  }
  void set(int i, int j, int v);
  uint32_t row_bits(int i) const { return bits_[i]; }
  F2Vector row(int i) const { return F2Vector(cols_, bits_[i]); }

  F2Matrix operator*(const F2Matrix& o) const;
  F2Vector operator*(const F2Vector& v) const;
  F2Matrix operator+(const F2Matrix& o) const;
  F2Matrix transposed() const;
  bool operator==(const F2Matrix& o) const = default;

  bool is_identity() const;
  bool is_symmetric() const;
  bool is_zero() const;

  // Packs the matrix into a single word; requires rows*cols <= 64. Used as
  // a hash key by the orthogonal-group searches.
  uint64_t packed_key() const;

  std::vector<std::vector<long long>> to_ints() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<uint32_t> bits_;
};

class Z4Vector {
 public:
  Z4Vector() = default;
  explicit Z4Vector(int n) : c_(n, 0) {}
  static Z4Vector from_ints(const std::vector<long long>& v);

  int size() const { return static_cast<int>(c_.size()); }
  int at(int i) const { return c_[i]; }
  void set(int i, long long v) { c_[i] = reduce4(v); }

  Z4Vector operator+(const Z4Vector& o) const;
  Z4Vector operator-(const Z4Vector& o) const;
  Z4Vector scaled(long long s) const;
  bool operator==(const Z4Vector& o) const = default;
  bool is_zero() const;

  F2Vector mod2() const;
  std::vector<long long> to_ints() const;

  static uint8_t reduce4(long long v) {
    return static_cast<uint8_t>(((v % 4) + 4) % 4);
  }

 private:
  std::vector<uint8_t> c_;
};

// Square matrix over Z/4Z.
class Z4Matrix {
 public:
  Z4Matrix() = default;
  explicit Z4Matrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, 0) {}

  static Z4Matrix identity(int n);
  static Z4Matrix from_ints(const std::vector<std::vector<long long>>& e);
  // {0,1}-entry lift of an F2 matrix (must be square).
  static Z4Matrix lift(const F2Matrix& m);

  int size() const { return n_; }
  int at(int i, int j) const { return e_[static_cast<size_t>(i) * n_ + j]; }
  void set(int i, int j, long long v) {
    e_[static_cast<size_t>(i) * n_ + j] = Z4Vector::reduce4(v);
  }

  Z4Matrix operator*(const Z4Matrix& o) const;
  Z4Vector operator*(const Z4Vector& v) const;
  Z4Matrix operator+(const Z4Matrix& o) const;
  Z4Matrix operator-(const Z4Matrix& o) const;
  Z4Matrix scaled(long long s) const;
  Z4Matrix transposed() const;
  bool operator==(const Z4Matrix& o) const = default;

  bool is_identity() const;
  F2Matrix mod2() const;

  // Byte string usable as an associative-container key.
  std::string key() const { return std::string(e_.begin(), e_.end()); }

  std::vector<std::vector<long long>> to_ints() const;

 private:
  int n_ = 0;
  std::vector<uint8_t> e_;
};

// Rank over F2 by Gaussian elimination.
int rank_f2(const F2Matrix& m);

// Reduced row echelon form; canonical representative of the row space.
// pivots (if non-null) receives the pivot column of each nonzero row.
F2Matrix rref_f2(const F2Matrix& m, std::vector<int>* pivots = nullptr);

// dim(span A  intersect  span B) for row-space spans, via
// dim A + dim B - dim(A stacked on B). Column counts must match.
int intersect_dim_f2(const F2Matrix& a, const F2Matrix& b);

// Inverse over Z/4Z by elimination on unit pivots. Throws NotInvertible
// when the matrix has even determinant (equivalently, is singular mod 2).
Z4Matrix invert_z4(const Z4Matrix& m);

// Determinant over Z/4Z, computed exactly on 64-bit integers (Bareiss).
// Supported up to n = 12, which covers every caller in this project.
int det_z4(const Z4Matrix& m);

}  // namespace thetamult
