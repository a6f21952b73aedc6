#pragma once

// Exact linear algebra over prime fields. GF(2) elimination runs on
// bit-packed rows; odd characteristic uses sparse columns.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgc/errors.hpp"

namespace dgc {

using Scalar = std::uint32_t;

class FieldSpec {
 public:
  FieldSpec() = default;
  explicit FieldSpec(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_binary() const { return p_ == 2; }

  Scalar reduce(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    return static_cast<Scalar>(r < 0 ? r + p_ : r);
  }
  Scalar add(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + b) % p_); }
  Scalar sub(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} + p_ - b) % p_); }
  Scalar mul(Scalar a, Scalar b) const { return static_cast<Scalar>((std::uint64_t{a} * b) % p_); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  // (-1)^parity as a field element.
  Scalar sign(long parity) const { return (parity & 1) ? p_ - 1 : 1; }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  std::uint32_t p_ = 2;
};

bool is_prime(std::uint32_t n);

struct Entry {
  std::uint32_t index;
  Scalar value;
  friend bool operator==(const Entry&, const Entry&) = default;
};

// Sorted by index, no zero values, no duplicate indices.
using SparseVec = std::vector<Entry>;

// Sort, merge duplicates, drop zeros.
void normalize(const FieldSpec& field, SparseVec& v);

// out += c * v (both normalized).
void axpy(const FieldSpec& field, Scalar c, const SparseVec& v, SparseVec& out);

class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols);

  static SparseMatrix identity(FieldSpec field, std::size_t n);
  static SparseMatrix from_dense(FieldSpec field, const std::vector<std::vector<Scalar>>& rows);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  std::size_t nnz() const;

  const SparseVec& column(std::size_t c) const { return cols_[c]; }
  void set_column(std::size_t c, SparseVec v);
  void add_entry(std::size_t r, std::size_t c, Scalar v);
  Scalar at(std::size_t r, std::size_t c) const;

  bool is_zero() const;
  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& rhs) const;
  SparseVec apply(const SparseVec& x) const;
  std::vector<std::vector<Scalar>> to_dense() const;

  // One line per row: `r: c1 c2 ...` over GF(2), `r: c:v ...` otherwise.
  std::string dump() const;

  friend bool operator==(const SparseMatrix&, const SparseMatrix&) = default;

 private:
  FieldSpec field_;
  std::size_t rows_ = 0;
  std::vector<SparseVec> cols_;
};

enum class RankMethod { Auto, Dense, Sparse };

std::size_t rank(const SparseMatrix& m, RankMethod method = RankMethod::Auto);

// Basis of the right null space, one dense vector per free column of the
// reduced row echelon form. Pivots are chosen column by column, taking the
// first remaining row with a nonzero entry.
std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m);

struct KernelResult {
  std::vector<std::vector<Scalar>> basis;
  std::vector<std::size_t> free_columns;  // basis[i] has a 1 at free_columns[i], 0 at the others
};
KernelResult kernel_with_free_columns(const SparseMatrix& m);

// Each entry is nonzero with the given probability; values uniform in 1..p-1.
// Driven by std::mt19937_64, so the matrix depends only on the arguments.
SparseMatrix random_matrix(FieldSpec field, std::size_t rows, std::size_t cols, double density, std::uint64_t seed);

// dim ker(d_out) - rank(d_in), after checking d_out * d_in == 0.
std::size_t homology_rank(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Row-packed GF(2) matrix.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * words_ + c / 64] >> (c % 64)) & 1u;
  }
  void set(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] |= std::uint64_t{1} << (c % 64); }
  void flip(std::size_t r, std::size_t c) { data_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::uint64_t* row(std::size_t r) { return data_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return data_.data() + r * words_; }

  // Destroys the contents.
  std::size_t eliminate_rank();

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

// Sparse vectors with 64-bit keys, used by complexes too large to index densely.
struct KeyEntry {
  std::uint64_t key;
  Scalar value;
  friend bool operator==(const KeyEntry&, const KeyEntry&) = default;
};
using KeyVec = std::vector<KeyEntry>;

void normalize(const FieldSpec& field, KeyVec& v);

// Incremental column reduction: feeds columns one at a time, keeps a reduced
// column per pivot (largest key). The rank is the number of kept columns.
class ColumnReducer {
 public:
  explicit ColumnReducer(FieldSpec field) : field_(field) {}

  // `column` must be normalized; it is consumed.
  bool add(KeyVec column);
  std::size_t rank() const { return pivots_.size(); }

 private:
  FieldSpec field_;
  std::unordered_map<std::uint64_t, KeyVec> pivots_;
  KeyVec scratch_;
};

}  // namespace dgc
