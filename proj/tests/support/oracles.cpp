#include "oracles.hpp"

#include <functional>
#include <stdexcept>

namespace oracle {

namespace {

std::uint32_t power(std::uint64_t b, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1;
  b %= p;
  for (; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t sign(long parity, std::uint32_t p) { return (parity & 1) ? p - 1 : 1; }

}  // namespace

std::size_t naive_rank(Dense m, std::uint32_t p) {
  std::size_t r = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] % p == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = power(m[r][c], p - 2, p);
    for (auto& x : m[r]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] % p == 0) continue;
      const std::uint64_t f = m[i][c] % p;
      for (std::size_t k = 0; k < cols; ++k) m[i][k] = static_cast<std::uint32_t>((m[i][k] + (p - f) * m[r][k]) % p);
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<std::uint32_t>> solve(const Dense& a, const std::vector<std::uint32_t>& b, std::uint32_t p) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  Dense m = a;
  for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i] % p);
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    const std::uint64_t inv = power(m[r][c], p - 2, p);
    for (auto& x : m[r]) x = static_cast<std::uint32_t>(x * inv % p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const std::uint64_t f = m[i][c];
      for (std::size_t k = 0; k <= cols; ++k) m[i][k] = static_cast<std::uint32_t>((m[i][k] + (p - f) * m[r][k]) % p);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols]) return std::nullopt;
  std::vector<std::uint32_t> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = m[i][cols];
  return x;
}

Dense to_dense(const dgc::SparseMatrix& m) {
  Dense out(m.rows(), std::vector<std::uint32_t>(m.cols(), 0));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (const auto& e : m.column(c)) out[e.index][c] = e.value;
  return out;
}

Dense multiply(const Dense& a, const Dense& b, std::uint32_t p, std::size_t b_cols) {
  const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : b_cols;
  Dense out(n, std::vector<std::uint32_t>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (!a[i][l]) continue;
      for (std::size_t j = 0; j < m; ++j)
        out[i][j] = static_cast<std::uint32_t>((out[i][j] + std::uint64_t{a[i][l]} * b[l][j]) % p);
    }
  return out;
}

bool is_zero(const Dense& m) {
  for (const auto& row : m)
    for (auto x : row)
      if (x) return false;
  return true;
}

std::map<int, std::size_t> betti(const std::map<int, std::size_t>& dims, const std::map<int, Dense>& d,
                                 std::uint32_t p) {
  auto rk = [&](int n) -> std::size_t {
    auto it = d.find(n);
    return it == d.end() ? 0 : naive_rank(it->second, p);
  };
  std::map<int, std::size_t> out;
  for (auto [n, dim] : dims) out[n] = dim - rk(n) - rk(n + 1);
  return out;
}

std::vector<std::size_t> dual_hochschild(std::uint32_t p, int max_degree) {
  std::map<int, std::size_t> dims;
  std::map<int, Dense> d;
  for (int n = 0; n <= max_degree + 1; ++n) {
    dims[n] = 2;
    if (n == 0) continue;
    // basis (1, x); odd n: multiplication by x - x, even n: by x + x.
    d[n] = Dense{{0, 0}, {n % 2 ? 0u : 2 % p, 0}};
  }
  auto b = betti(dims, d, p);
  std::vector<std::size_t> out;
  for (int n = 0; n <= max_degree; ++n) out.push_back(b[n]);
  return out;
}

Algebra algebra_of(const dgc::DgCategory& c) {
  Algebra a;
  a.p = c.field().characteristic();
  struct Basis {
    std::size_t src, tgt, gen;
  };
  std::vector<Basis> basis;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
  const std::size_t n = c.object_count();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& h = c.hom(x, y);
      for (std::size_t g = 0; g < h.size(); ++g) {
        if (!h.boundary(g).empty()) throw std::invalid_argument("algebra_of needs a zero differential");
        index[{x, y, g}] = basis.size();
        basis.push_back({x, y, g});
        a.degree.push_back(h.degree(g));
      }
    }
  const std::size_t dim = basis.size();
  a.mult.assign(dim, std::vector<std::vector<std::uint32_t>>(dim, std::vector<std::uint32_t>(dim, 0)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      if (basis[i].tgt != basis[j].src) continue;
      for (const auto& e : c.product(basis[i].src, basis[i].tgt, basis[j].tgt, basis[i].gen, basis[j].gen))
        a.mult[i][j][index[{basis[i].src, basis[j].tgt, e.index}]] = e.value;
    }
  return a;
}

std::vector<std::size_t> algebra_hochschild(const Algebra& a, int max_degree) {
  const std::uint32_t p = a.p;
  const int dim = static_cast<int>(a.dim());
  for (int d : a.degree)
    if (d < 0) throw std::invalid_argument("algebra_hochschild needs nonnegative degrees");
  // Tuples (a_0, ..., a_n) of total degree n + sum |a_i|.
  std::vector<std::map<std::vector<int>, std::size_t>> basis(max_degree + 2);
  std::function<void(std::vector<int>&, int)> grow = [&](std::vector<int>& w, int deg) {
    const int n = static_cast<int>(w.size()) - 1;
    if (n >= 0) {
      const int t = n + deg;
      if (t > max_degree + 1) return;
      basis[t].emplace(w, basis[t].size());
    }
    if (n + 1 + deg > max_degree + 1) return;
    for (int i = 0; i < dim; ++i) {
      w.push_back(i);
      grow(w, deg + a.degree[i]);
      w.pop_back();
    }
  };
  std::vector<int> w;
  grow(w, 0);

  std::map<int, std::size_t> dims;
  std::map<int, Dense> d;
  for (int t = 0; t <= max_degree + 1; ++t) {
    dims[t] = basis[t].size();
    if (t == 0) continue;
    Dense m(basis[t - 1].size(), std::vector<std::uint32_t>(basis[t].size(), 0));
    for (const auto& [word, col] : basis[t]) {
      const int n = static_cast<int>(word.size()) - 1;
      auto add = [&](std::vector<int> target, std::uint32_t coeff) {
        auto it = basis[t - 1].find(target);
        if (it == basis[t - 1].end()) throw std::logic_error("face left the basis");
        m[it->second][col] = static_cast<std::uint32_t>((m[it->second][col] + coeff) % p);
      };
      for (int i = 0; i < n; ++i) {
        const auto& prod = a.mult[word[i]][word[i + 1]];
        for (int k = 0; k < dim; ++k) {
          if (!prod[k]) continue;
          std::vector<int> target(word.begin(), word.begin() + i);
          target.push_back(k);
          target.insert(target.end(), word.begin() + i + 2, word.end());
          add(target, static_cast<std::uint32_t>(std::uint64_t{prod[k]} * sign(i, p) % p));
        }
      }
      if (n >= 1) {
        long before = 0;
        for (int i = 0; i < n; ++i) before += a.degree[word[i]];
        const std::uint32_t s = sign(n + static_cast<long>(a.degree[word[n]]) * before, p);
        const auto& prod = a.mult[word[n]][word[0]];
        for (int k = 0; k < dim; ++k) {
          if (!prod[k]) continue;
          std::vector<int> target{k};
          target.insert(target.end(), word.begin() + 1, word.begin() + n);
          add(target, static_cast<std::uint32_t>(std::uint64_t{prod[k]} * s % p));
        }
      }
    }
    d[t] = std::move(m);
  }
  for (int t = 2; t <= max_degree + 1; ++t)
    if (!is_zero(multiply(d[t - 1], d[t], p))) throw std::logic_error("oracle Hochschild differential squares to nonzero");
  auto b = betti(dims, d, p);
  std::vector<std::size_t> out;
  for (int t = 0; t <= max_degree; ++t) out.push_back(b[t]);
  return out;
}

std::size_t count_bimodule_endomorphisms(const Algebra& a) {
  const std::size_t n = a.dim();
  const std::uint32_t p = a.p;
  std::vector<std::pair<std::size_t, std::size_t>> free;  // (row, col) entries allowed by degree
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.degree[i] == a.degree[j]) free.emplace_back(i, j);
  if (free.size() > 20) throw std::invalid_argument("too many maps to enumerate");
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < free.size(); ++k) total *= p;

  auto apply = [&](const Dense& m, const std::vector<std::uint32_t>& v) {
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out[i] = static_cast<std::uint32_t>((out[i] + std::uint64_t{m[i][j]} * v[j]) % p);
    return out;
  };
  // x * v and v * x for basis x and a vector v.
  auto left = [&](std::size_t x, const std::vector<std::uint32_t>& v) {
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out[k] = static_cast<std::uint32_t>((out[k] + std::uint64_t{v[j]} * a.mult[x][j][k]) % p);
    return out;
  };
  auto right = [&](const std::vector<std::uint32_t>& v, std::size_t x) {
    std::vector<std::uint32_t> out(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        out[k] = static_cast<std::uint32_t>((out[k] + std::uint64_t{v[j]} * a.mult[j][x][k]) % p);
    return out;
  };

  std::size_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    Dense m(n, std::vector<std::uint32_t>(n, 0));
    std::uint64_t c = code;
    for (auto [i, j] : free) {
      m[i][j] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t v = 0; v < n && ok; ++v) {
        std::vector<std::uint32_t> e(n, 0);
        e[v] = 1;
        ok = apply(m, left(x, e)) == left(x, apply(m, e)) && apply(m, right(e, x)) == right(apply(m, e), x);
      }
    if (ok) ++count;
  }
  return count;
}

std::size_t count_chains(const dgc::FiniteCategory& c, int n) {
  if (n == 0) return c.object_count();
  std::size_t count = 0;
  std::function<void(std::uint32_t, int)> walk = [&](std::uint32_t obj, int left) {
    if (left == 0) {
      ++count;
      return;
    }
    for (std::size_t f = 0; f < c.morphism_count(); ++f)
      if (c.morphism(f).source == obj) walk(c.morphism(f).target, left - 1);
  };
  for (std::size_t f = 0; f < c.morphism_count(); ++f) walk(c.morphism(f).target, n - 1);
  return count;
}

}  // namespace oracle

namespace oracle {


std::optional<std::string> bar_square_failure(const dgc::WordComplex& w) {
  const std::uint32_t p = w.field().characteristic();
  const bool z = w.grading() == dgc::Grading::Z;
  const auto ts = w.degrees();
  if (ts.empty()) return std::nullopt;
  const int J = w.truncation();
  std::vector<int> ns;
  if (z)
    for (int n = ts.front() - J - 1; n <= ts.back() + 1; ++n) ns.push_back(n);
  else
    ns = {0, 1};
  auto below = [&](int n) { return z ? n - 1 : 1 - n; };
  auto where = [](const char* what, int j, int n) {
    return std::string(what) + " at bar length " + std::to_string(j) + ", internal degree " + std::to_string(n);
  };
  // Small blocks are multiplied densely here; large ones with the library's
  // sparse product, which is itself checked against the dense one.
  auto product = [&](const dgc::SparseMatrix& a, const dgc::SparseMatrix& b) {
    if (a.rows() * b.rows() + b.rows() * b.cols() > 40000) return a * b;
    const Dense d = multiply(to_dense(a), to_dense(b), p, b.cols());
    dgc::SparseMatrix out(w.field(), a.rows(), b.cols());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      dgc::SparseVec v;
      for (std::size_t r = 0; r < a.rows(); ++r)
        if (d[r][c]) v.push_back({static_cast<std::uint32_t>(r), d[r][c]});
      out.set_column(c, std::move(v));
    }
    return out;
  };
  auto sum_zero = [&](const dgc::SparseMatrix& x, const dgc::SparseMatrix& y) {
    for (std::size_t c = 0; c < x.cols(); ++c) {
      dgc::SparseVec v = x.column(c);
      dgc::axpy(w.field(), 1, y.column(c), v);
      if (!v.empty()) return false;
    }
    return true;
  };
  for (int j = 0; j <= J; ++j)
    for (int n : ns) {
      const auto h = w.horizontal_block(j, n), v = w.vertical_block(j, n);
      if (h.cols() == 0) continue;
      if (j >= 1 && !product(w.horizontal_block(j - 1, n), h).is_zero()) return where("d_H d_H", j, n);
      if (!product(w.vertical_block(j, below(n)), v).is_zero()) return where("d_V d_V", j, n);
      if (j >= 1 && !sum_zero(product(w.horizontal_block(j, below(n)), v), product(w.vertical_block(j - 1, n), h)))
        return where("d_H d_V + d_V d_H", j, n);
    }
  return std::nullopt;
}

}  // namespace oracle
