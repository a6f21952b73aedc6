#include "dgc/linalg.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>

namespace dgc {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::GradingMismatch: return "GradingMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::CompositionNotZero: return "CompositionNotZero";
    case ErrorKind::InvalidComplex: return "InvalidComplex";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::CategoryMismatch: return "CategoryMismatch";
    case ErrorKind::NonUnital: return "NonUnital";
    case ErrorKind::NonUnitalMiddle: return "NonUnitalMiddle";
    case ErrorKind::TruncationTooSmall: return "TruncationTooSmall";
    case ErrorKind::DepthExceeded: return "DepthExceeded";
    case ErrorKind::Schema: return "Schema";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::ValidationFailed: return "ValidationFailed";
  }
  return "Error";
}

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FieldSpec::FieldSpec(std::uint32_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "field characteristic " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw Error(ErrorKind::InvalidArgument, "field characteristic too large");
}

Scalar FieldSpec::inv(Scalar a) const {
  if (a % p_ == 0) throw Error(ErrorKind::InvalidArgument, "inverse of zero");
  // Fermat: a^(p-2)
  std::uint64_t result = 1, base = a % p_, e = p_ - 2;
  while (e) {
    if (e & 1) result = result * base % p_;
    base = base * base % p_;
    e >>= 1;
  }
  return static_cast<Scalar>(result);
}

namespace {

template <class Vec>
void normalize_impl(const FieldSpec& field, Vec& v) {
  if (v.empty()) return;
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if constexpr (requires { a.key; }) return a.key < b.key;
    else return a.index < b.index;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    auto acc = v[i];
    acc.value %= field.characteristic();
    std::size_t k = i + 1;
    for (; k < v.size(); ++k) {
      bool same;
      if constexpr (requires { acc.key; }) same = v[k].key == acc.key;
      else same = v[k].index == acc.index;
      if (!same) break;
      acc.value = field.add(acc.value, v[k].value % field.characteristic());
    }
    if (acc.value != 0) v[out++] = acc;
    i = k;
  }
  v.resize(out);
}

}  // namespace

void normalize(const FieldSpec& field, SparseVec& v) { normalize_impl(field, v); }
void normalize(const FieldSpec& field, KeyVec& v) { normalize_impl(field, v); }

void axpy(const FieldSpec& field, Scalar c, const SparseVec& v, SparseVec& out) {
  if (c == 0 || v.empty()) return;
  SparseVec merged;
  merged.reserve(out.size() + v.size());
  std::size_t i = 0, j = 0;
  while (i < out.size() || j < v.size()) {
    if (j == v.size() || (i < out.size() && out[i].index < v[j].index)) {
      merged.push_back(out[i++]);
    } else if (i == out.size() || v[j].index < out[i].index) {
      merged.push_back({v[j].index, field.mul(c, v[j].value)});
      ++j;
    } else {
      Scalar s = field.add(out[i].value, field.mul(c, v[j].value));
      if (s) merged.push_back({out[i].index, s});
      ++i;
      ++j;
    }
  }
  out = std::move(merged);
}

// --- SparseMatrix -----------------------------------------------------------

SparseMatrix::SparseMatrix(FieldSpec field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {}

SparseMatrix SparseMatrix::identity(FieldSpec field, std::size_t n) {
  SparseMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m.cols_[i] = {{static_cast<std::uint32_t>(i), 1}};
  return m;
}

SparseMatrix SparseMatrix::from_dense(FieldSpec field, const std::vector<std::vector<Scalar>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  SparseMatrix m(field, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw Error(ErrorKind::DimensionMismatch, "ragged dense matrix");
    for (std::size_t j = 0; j < c; ++j) {
      Scalar v = rows[i][j] % field.characteristic();
      if (v) m.cols_[j].push_back({static_cast<std::uint32_t>(i), v});
    }
  }
  return m;
}

std::size_t SparseMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& c : cols_) n += c.size();
  return n;
}

void SparseMatrix::set_column(std::size_t c, SparseVec v) {
  if (c >= cols_.size()) throw Error(ErrorKind::DimensionMismatch, "column index out of range");
  normalize(field_, v);
  if (!v.empty() && v.back().index >= rows_) throw Error(ErrorKind::DimensionMismatch, "row index out of range");
  cols_[c] = std::move(v);
}

void SparseMatrix::add_entry(std::size_t r, std::size_t c, Scalar v) {
  if (r >= rows_ || c >= cols_.size()) throw Error(ErrorKind::DimensionMismatch, "entry out of range");
  axpy(field_, 1, SparseVec{{static_cast<std::uint32_t>(r), v % field_.characteristic()}}, cols_[c]);
}

Scalar SparseMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = cols_.at(c);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const Entry& e, std::size_t k) { return e.index < k; });
  return (it != col.end() && it->index == r) ? it->value : 0;
}

bool SparseMatrix::is_zero() const {
  return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.empty(); });
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(field_, cols_.size(), rows_);
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& e : cols_[c]) t.cols_[e.index].push_back({static_cast<std::uint32_t>(c), e.value});
  return t;
}

SparseVec SparseMatrix::apply(const SparseVec& x) const {
  SparseVec out;
  for (const auto& e : x) {
    if (e.index >= cols_.size()) throw Error(ErrorKind::DimensionMismatch, "vector longer than matrix width");
    for (const auto& f : cols_[e.index]) out.push_back({f.index, field_.mul(e.value, f.value)});
  }
  normalize(field_, out);
  return out;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& rhs) const {
  if (!(field_ == rhs.field_)) throw Error(ErrorKind::FieldMismatch, "matrix product over different fields");
  if (cols() != rhs.rows()) throw Error(ErrorKind::DimensionMismatch, "matrix product shape mismatch");
  SparseMatrix out(field_, rows_, rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c) out.cols_[c] = apply(rhs.cols_[c]);
  return out;
}

std::vector<std::vector<Scalar>> SparseMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> d(rows_, std::vector<Scalar>(cols_.size(), 0));
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& e : cols_[c]) d[e.index][c] = e.value;
  return d;
}

std::string SparseMatrix::dump() const {
  SparseMatrix t = transpose();
  std::ostringstream os;
  for (std::size_t r = 0; r < rows_; ++r) {
    os << r << ':';
    for (const auto& e : t.cols_[r]) {
      os << ' ' << e.index;
      if (!field_.is_binary()) os << ':' << e.value;
    }
    os << '\n';
  }
  return os.str();
}

// --- BitMatrix --------------------------------------------------------------

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), data_(rows * words_, 0) {}

std::size_t BitMatrix::eliminate_rank() {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < rows_ && !(data_[piv * words_ + w] & bit)) ++piv;
    if (piv == rows_) continue;
    if (piv != rank) std::swap_ranges(row(piv) + w, row(piv) + words_, row(rank) + w);
    const std::uint64_t* p = row(rank);
    for (std::size_t r = rank + 1; r < rows_; ++r) {
      std::uint64_t* q = row(r);
      if (q[w] & bit)
        for (std::size_t k = w; k < words_; ++k) q[k] ^= p[k];
    }
    ++rank;
  }
  return rank;
}

// --- rank -------------------------------------------------------------------

namespace {

std::size_t rank_dense_binary(const SparseMatrix& m) {
  // Pack the shorter dimension into words.
  const bool by_rows = m.cols() <= m.rows();
  BitMatrix b(by_rows ? m.rows() : m.cols(), by_rows ? m.cols() : m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) {
      if (by_rows) b.set(e.index, c);
      else b.set(c, e.index);
    }
  return b.eliminate_rank();
}

std::size_t rank_dense_modp(const SparseMatrix& m) {
  const FieldSpec& f = m.field();
  auto a = m.to_dense();
  std::size_t rank = 0;
  const std::size_t rows = m.rows(), cols = m.cols();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    Scalar inv = f.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c] == 0) continue;
      Scalar factor = f.mul(a[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) a[r][k] = f.sub(a[r][k], f.mul(factor, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_sparse(const SparseMatrix& m) {
  ColumnReducer red(m.field());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const auto& col = m.column(c);
    if (col.empty()) continue;
    KeyVec k;
    k.reserve(col.size());
    for (const auto& e : col) k.push_back({e.index, e.value});
    red.add(std::move(k));
  }
  return red.rank();
}

}  // namespace

std::size_t rank(const SparseMatrix& m, RankMethod method) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  const double cells = static_cast<double>(m.rows()) * static_cast<double>(m.cols());
  if (method == RankMethod::Auto) {
    const double limit = m.field().is_binary() ? double(1u << 26) : double(1u << 18);
    method = cells <= limit ? RankMethod::Dense : RankMethod::Sparse;
  }
  if (method == RankMethod::Sparse) return rank_sparse(m);
  return m.field().is_binary() ? rank_dense_binary(m) : rank_dense_modp(m);
}

KernelResult kernel_with_free_columns(const SparseMatrix& m) {
  const FieldSpec& f = m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  KernelResult out;
  std::vector<std::size_t> pivot_col;  // per reduced row

  if (f.is_binary()) {
    BitMatrix b(rows, cols);
    for (std::size_t c = 0; c < cols; ++c)
      for (const auto& e : m.column(c)) b.set(e.index, c);
    std::size_t r = 0;
    const std::size_t words = b.words_per_row();
    for (std::size_t c = 0; c < cols; ++c) {
      std::size_t piv = r;
      while (piv < rows && !b.get(piv, c)) ++piv;
      if (piv == rows) {
        out.free_columns.push_back(c);
        continue;
      }
      if (piv != r) std::swap_ranges(b.row(piv), b.row(piv) + words, b.row(r));
      for (std::size_t i = 0; i < rows; ++i) {
        if (i == r || !b.get(i, c)) continue;
        for (std::size_t k = 0; k < words; ++k) b.row(i)[k] ^= b.row(r)[k];
      }
      pivot_col.push_back(c);
      ++r;
    }
    for (std::size_t fc : out.free_columns) {
      std::vector<Scalar> v(cols, 0);
      v[fc] = 1;
      for (std::size_t i = 0; i < pivot_col.size(); ++i)
        if (b.get(i, fc)) v[pivot_col[i]] = 1;
      out.basis.push_back(std::move(v));
    }
    return out;
  }

  auto a = m.to_dense();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) {
      out.free_columns.push_back(c);
      continue;
    }
    std::swap(a[piv], a[r]);
    Scalar inv = f.inv(a[r][c]);
    for (auto& x : a[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Scalar factor = a[i][c];
      for (std::size_t k = 0; k < cols; ++k) a[i][k] = f.sub(a[i][k], f.mul(factor, a[r][k]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t fc : out.free_columns) {
    std::vector<Scalar> v(cols, 0);
    v[fc] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = f.neg(a[i][fc]);
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m) { return kernel_with_free_columns(m).basis; }

std::size_t homology_rank(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  if (!(d_in.field() == d_out.field())) throw Error(ErrorKind::FieldMismatch, "differentials over different fields");
  if (d_in.rows() != d_out.cols())
    throw Error(ErrorKind::DimensionMismatch, "incoming differential has " + std::to_string(d_in.rows()) +
                                                  " rows but outgoing differential has " +
                                                  std::to_string(d_out.cols()) + " columns");
  if (!(d_out * d_in).is_zero()) throw Error(ErrorKind::CompositionNotZero, "d_out * d_in != 0");
  const std::size_t kernel = d_out.cols() - rank(d_out);
  return kernel - rank(d_in);
}

// --- ColumnReducer ----------------------------------------------------------

bool ColumnReducer::add(KeyVec col) {
  while (!col.empty()) {
    auto it = pivots_.find(col.back().key);
    if (it == pivots_.end()) break;
    const KeyVec& piv = it->second;  // pivot entry normalized to 1
    const Scalar c = field_.neg(col.back().value);
    scratch_.clear();
    scratch_.reserve(col.size() + piv.size());
    std::size_t i = 0, j = 0;
    while (i < col.size() || j < piv.size()) {
      if (j == piv.size() || (i < col.size() && col[i].key < piv[j].key)) {
        scratch_.push_back(col[i++]);
      } else if (i == col.size() || piv[j].key < col[i].key) {
        scratch_.push_back({piv[j].key, field_.mul(c, piv[j].value)});
        ++j;
      } else {
        Scalar s = field_.add(col[i].value, field_.mul(c, piv[j].value));
        if (s) scratch_.push_back({col[i].key, s});
        ++i;
        ++j;
      }
    }
    col.swap(scratch_);
  }
  if (col.empty()) return false;
  if (col.back().value != 1) {
    Scalar inv = field_.inv(col.back().value);
    for (auto& e : col) e.value = field_.mul(e.value, inv);
  }
  const std::uint64_t key = col.back().key;
  pivots_.emplace(key, std::move(col));
  return true;
}

SparseMatrix random_matrix(FieldSpec field, std::size_t rows, std::size_t cols, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  // Threshold on raw 64-bit outputs, no std distributions.
  const double scaled = density * 18446744073709551616.0;
  const std::uint64_t threshold =
      density >= 1.0 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(scaled);
  const std::uint64_t p = field.characteristic();
  SparseMatrix m(field, rows, cols);
  for (std::size_t c = 0; c < cols; ++c) {
    SparseVec col;
    for (std::size_t r = 0; r < rows; ++r)
      if (gen() < threshold) {
        const Scalar v = p == 2 ? 1 : static_cast<Scalar>(1 + gen() % (p - 1));
        col.push_back({static_cast<std::uint32_t>(r), v});
      }
    m.set_column(c, std::move(col));
  }
  return m;
}

}  // namespace dgc
