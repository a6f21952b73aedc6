#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "dgc/linalg.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dgc;

namespace {

SparseMatrix dense(std::uint32_t p, std::vector<std::vector<Scalar>> rows) {
  return SparseMatrix::from_dense(FieldSpec(p), rows);
}

SparseMatrix random_dense(testgen::Rng& rng, FieldSpec f, std::size_t r, std::size_t c, double fill) {
  SparseMatrix m(f, r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (rng.coin(fill)) m.add_entry(i, j, rng.nonzero(f));
  return m;
}

}  // namespace

TEST_CASE("field arithmetic") {
  CHECK_THROWS_AS(FieldSpec(4), Error);
  CHECK_THROWS_AS(FieldSpec(1), Error);
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 101u}) {
    FieldSpec f(p);
    for (Scalar a = 1; a < p; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.sign(1) == f.neg(1));
    CHECK(f.reduce(-1) == p - 1);
  }
  CHECK(is_prime(2));
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(65523));
}

TEST_CASE("rank examples") {
  CHECK(rank(SparseMatrix::identity(FieldSpec(2), 3)) == 3);
  CHECK(rank(SparseMatrix(FieldSpec(2), 4, 7)) == 0);
  // Row space of these three rows: enumerate all 8 combinations.
  std::vector<std::vector<Scalar>> rows{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
  std::set<std::vector<Scalar>> span;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<Scalar> v(3, 0);
    for (int r = 0; r < 3; ++r)
      if (mask >> r & 1)
        for (int c = 0; c < 3; ++c) v[c] ^= rows[r][c];
    span.insert(v);
  }
  CHECK(span.size() == 4);
  for (auto method : {RankMethod::Auto, RankMethod::Dense, RankMethod::Sparse}) CHECK(rank(dense(2, rows), method) == 2);
}

TEST_CASE("kernel examples") {
  CHECK(kernel_basis(SparseMatrix::identity(FieldSpec(2), 2)).empty());
  CHECK(kernel_basis(SparseMatrix(FieldSpec(2), 1, 2)).size() == 2);
  auto k = kernel_basis(dense(2, {{1, 1}}));
  REQUIRE(k.size() == 1);
  CHECK(k[0] == std::vector<Scalar>{1, 1});
}

TEST_CASE("homology_rank examples") {
  const FieldSpec f(2);
  CHECK(homology_rank(SparseMatrix(f, 3, 0), SparseMatrix(f, 0, 3)) == 3);
  CHECK(homology_rank(SparseMatrix::identity(f, 2), SparseMatrix(f, 0, 2)) == 0);
  // ker (1 1) = {0, (1,1)} = im (1,1)^T, found by enumerating the four vectors.
  auto d_in = dense(2, {{1}, {1}});
  auto d_out = dense(2, {{1, 1}});
  int kernel = 0, image = 0;
  for (Scalar x = 0; x < 2; ++x)
    for (Scalar y = 0; y < 2; ++y) {
      if ((x + y) % 2 == 0) ++kernel;
      if (x == y) ++image;  // image of t -> (t, t)
    }
  CHECK(kernel == 2);
  CHECK(image == 2);
  CHECK(homology_rank(d_in, d_out) == 0);
  CHECK_THROWS_AS(homology_rank(SparseMatrix::identity(f, 1), SparseMatrix::identity(f, 1)), Error);
}

TEST_CASE("rank agrees with naive elimination and with the transpose") {
  testgen::Rng rng(11);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    FieldSpec f(p);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t r = rng.uniform(0, 64), c = rng.uniform(0, 64);
      auto m = random_dense(rng, f, r, c, rng.uniform(1, 9) / 10.0);
      const std::size_t expect = oracle::naive_rank(oracle::to_dense(m), p);
      CHECK(rank(m, RankMethod::Dense) == expect);
      CHECK(rank(m, RankMethod::Sparse) == expect);
      CHECK(rank(m.transpose()) == expect);
    }
  }
}

TEST_CASE("kernel basis is independent and annihilated") {
  testgen::Rng rng(12);
  for (std::uint32_t p : {2u, 5u}) {
    FieldSpec f(p);
    for (int trial = 0; trial < 100; ++trial) {
      const std::size_t r = rng.uniform(0, 12), c = rng.uniform(0, 12);
      auto m = random_dense(rng, f, r, c, 0.4);
      auto res = kernel_with_free_columns(m);
      CHECK(res.basis.size() + oracle::naive_rank(oracle::to_dense(m), p) == c);
      for (std::size_t i = 0; i < res.basis.size(); ++i) {
        SparseVec v;
        for (std::size_t k = 0; k < c; ++k)
          if (res.basis[i][k]) v.push_back({static_cast<std::uint32_t>(k), res.basis[i][k]});
        CHECK(m.apply(v).empty());
        for (std::size_t j = 0; j < res.basis.size(); ++j)
          CHECK(res.basis[i][res.free_columns[j]] == (i == j ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("homology_rank is invariant under a common reordering of the middle basis") {
  testgen::Rng rng(13);
  FieldSpec f(3);
  for (int trial = 0; trial < 50; ++trial) {
    // C2 -> C1 -> C0 with d1 d2 = 0: take d2 inside ker d1.
    const std::size_t n0 = rng.uniform(0, 5), n1 = rng.uniform(1, 6), n2 = rng.uniform(0, 5);
    auto d1 = random_dense(rng, f, n0, n1, 0.5);
    auto ker = kernel_basis(d1);
    SparseMatrix d2(f, n1, n2);
    for (std::size_t c = 0; c < n2; ++c)
      for (const auto& k : ker) {
        Scalar s = rng.scalar(f);
        for (std::size_t i = 0; i < n1; ++i)
          if (k[i] && s) d2.add_entry(i, c, f.mul(s, k[i]));
      }
    const std::size_t h = homology_rank(d2, d1);
    std::vector<std::size_t> perm(n1);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    SparseMatrix p1(f, n0, n1), p2(f, n1, n2);
    for (std::size_t c = 0; c < n1; ++c)
      for (const auto& e : d1.column(c)) p1.add_entry(e.index, perm[c], e.value);
    for (std::size_t c = 0; c < n2; ++c)
      for (const auto& e : d2.column(c)) p2.add_entry(perm[e.index], c, e.value);
    CHECK(homology_rank(p2, p1) == h);
  }
}

TEST_CASE("matrix product matches the dense oracle") {
  testgen::Rng rng(14);
  FieldSpec f(5);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_dense(rng, f, rng.uniform(0, 8), rng.uniform(0, 8), 0.5);
    auto b = random_dense(rng, f, a.cols(), rng.uniform(0, 8), 0.5);
    CHECK(oracle::to_dense(a * b) == oracle::multiply(oracle::to_dense(a), oracle::to_dense(b), 5, b.cols()));
  }
}

TEST_CASE("column reducer rank") {
  testgen::Rng rng(15);
  for (std::uint32_t p : {2u, 3u}) {
    FieldSpec f(p);
    for (int trial = 0; trial < 50; ++trial) {
      auto m = random_dense(rng, f, rng.uniform(0, 30), rng.uniform(0, 30), 0.2);
      ColumnReducer red(f);
      for (std::size_t c = 0; c < m.cols(); ++c) {
        KeyVec col;
        for (const auto& e : m.column(c)) col.push_back({e.index * 7919ull + 3, e.value});
        red.add(std::move(col));
      }
      CHECK(red.rank() == oracle::naive_rank(oracle::to_dense(m), p));
    }
  }
}

TEST_CASE("random_matrix is reproducible") {
  auto a = random_matrix(FieldSpec(2), 50, 40, 0.1, 7);
  auto b = random_matrix(FieldSpec(2), 50, 40, 0.1, 7);
  auto c = random_matrix(FieldSpec(2), 50, 40, 0.1, 8);
  CHECK(a == b);
  CHECK_FALSE(a == c);
  auto z = random_matrix(FieldSpec(3), 10, 10, 0.0, 1);
  CHECK(z.is_zero());
}

TEST_CASE("dump format") {
  CHECK(dense(2, {{1, 0, 1}, {0, 0, 0}}).dump() == "0: 0 2\n1:\n");
  CHECK(dense(3, {{2, 0}, {0, 1}}).dump() == "0: 0:2\n1: 1:1\n");
}
