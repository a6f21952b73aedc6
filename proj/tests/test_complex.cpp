#include <doctest.h>

#include "dgc/complex.hpp"
#include "dgc/fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"

using namespace dgc;

namespace {

const FieldSpec F2(2);

ChainComplex zero_d(FieldSpec f, const std::vector<std::pair<int, int>>& dims) {
  ChainComplex::Builder b(f, Grading::Z);
  int k = 0;
  for (auto [deg, n] : dims)
    for (int i = 0; i < n; ++i) b.generator(deg, "g" + std::to_string(k++));
  return b.build();
}

// Independent Betti computation through the dense oracle.
std::map<int, std::size_t> oracle_betti(const ChainComplex& c) {
  std::map<int, std::size_t> dims;
  std::map<int, oracle::Dense> d;
  for (int n : c.degrees()) {
    dims[n] = c.dim(n);
    const int m = c.lower(n);
    oracle::Dense block(c.dim(m), std::vector<std::uint32_t>(c.dim(n), 0));
    for (std::size_t g = c.offset(n); g < c.offset(n) + c.dim(n); ++g)
      for (const auto& e : c.boundary(g)) block[e.index - c.offset(m)][g - c.offset(n)] = e.value;
    d[n] = block;
  }
  if (c.grading() == Grading::Z) return oracle::betti(dims, d, c.field().characteristic());
  std::map<int, std::size_t> out;
  for (int n : c.degrees()) {
    const int m = 1 - n;
    std::size_t r_out = oracle::naive_rank(d[n], c.field().characteristic());
    std::size_t r_in = d.count(m) ? oracle::naive_rank(d[m], c.field().characteristic()) : 0;
    out[n] = dims[n] - r_out - r_in;
  }
  return out;
}

std::size_t b(const std::map<int, std::size_t>& m, int n) {
  auto it = m.find(n);
  return it == m.end() ? 0 : it->second;
}

}  // namespace

TEST_CASE("validate_complex examples") {
  CHECK(validate_complex(fixtures::cone()).passed());
  ChainComplex bad = ChainComplex::Builder(F2, Grading::Z)
                         .generator(2, "a")
                         .generator(1, "b")
                         .generator(0, "c")
                         .term("a", "b")
                         .term("b", "c")
                         .build();
  auto r = validate_complex(bad);
  REQUIRE_FALSE(r.passed());
  CHECK(r.failures[0].find("degree 2") != std::string::npos);
  CHECK_THROWS_AS(homology(bad), Error);
  CHECK(validate_complex(zero_d(F2, {{0, 2}, {1, 3}, {2, 2}})).passed());
}

TEST_CASE("homology examples") {
  for (auto [n, betti] : homology(fixtures::cone())) CHECK(betti == 0);
  auto h = homology(zero_d(F2, {{0, 2}, {1, 3}, {2, 2}}));
  CHECK(h == std::map<int, std::size_t>{{0, 2}, {1, 3}, {2, 2}});
  // K^2 -(1 1)-> K: the kernel in degree 1 is {0, (1,1)}, counted by enumeration.
  ChainComplex c = ChainComplex::Builder(F2, Grading::Z)
                       .generator(1, "p")
                       .generator(1, "q")
                       .generator(0, "r")
                       .term("p", "r")
                       .term("q", "r")
                       .build();
  int kernel = 0;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) kernel += (x + y) % 2 == 0;
  CHECK(kernel == 2);
  CHECK(betti(c, 0) == 0);
  CHECK(betti(c, 1) == 1);
  CHECK(betti(c, 7) == 0);
}

TEST_CASE("tensor_cx examples") {
  ChainComplex one = unit_complex(F2, Grading::Z);
  ChainComplex c = zero_d(F2, {{0, 1}, {1, 2}, {3, 1}});
  ChainComplex t = tensor_cx(one, c);
  CHECK(t.degrees() == c.degrees());
  for (int n : c.degrees()) CHECK(t.dim(n) == c.dim(n));
  CHECK(homology(t) == homology(c));

  // cone (x) cone, signs visible at p = 3: d(e1*e1) = e0*e1 - e1*e0, d(e1*e0) = e0*e0, d(e0*e1) = e0*e0.
  const FieldSpec f3(3);
  ChainComplex cc = tensor_cx(fixtures::cone(f3), fixtures::cone(f3));
  CHECK(cc.dim(0) == 1);
  CHECK(cc.dim(1) == 2);
  CHECK(cc.dim(2) == 1);
  auto idx = [&](const char* n) { return static_cast<std::uint32_t>(*cc.find(n)); };
  SparseVec top{{idx("e0*e1"), 1}, {idx("e1*e0"), 2}};
  normalize(f3, top);
  CHECK(cc.boundary(idx("e1*e1")) == top);
  CHECK(cc.boundary(idx("e1*e0")) == SparseVec{{idx("e0*e0"), 1}});
  CHECK(cc.boundary(idx("e0*e1")) == SparseVec{{idx("e0*e0"), 1}});
  for (auto [n, betti] : homology(cc)) CHECK(betti == 0);
  for (auto [n, betti] : homology(tensor_cx(fixtures::cone(), fixtures::cone()))) CHECK(betti == 0);

  ChainComplex x = zero_d(F2, {{0, 1}, {1, 2}}), y = zero_d(F2, {{0, 2}, {2, 1}});
  ChainComplex xy = tensor_cx(x, y);
  CHECK(xy.dim(0) == 2);
  CHECK(xy.dim(1) == 4);
  CHECK(xy.dim(2) == 1);
  CHECK(xy.dim(3) == 2);
}

TEST_CASE("hom_cx examples") {
  ChainComplex one = unit_complex(F2, Grading::Z);
  ChainComplex c = ChainComplex::Builder(F2, Grading::Z)
                       .generator(1, "a")
                       .generator(0, "b")
                       .generator(0, "b2")
                       .term("a", "b")
                       .build();
  ChainComplex h = hom_cx(one, c);
  for (int n : c.degrees()) CHECK(h.dim(n) == c.dim(n));
  CHECK(homology(h) == homology(c));

  ChainComplex k1 = ChainComplex::Builder(F2, Grading::Z).generator(1, "s").build();
  ChainComplex shifted = hom_cx(k1, one);
  CHECK(shifted.degrees() == std::vector<int>{-1});
  CHECK(shifted.name(0) == "[s>1]");

  ChainComplex hc = hom_cx(fixtures::cone(), one);
  CHECK(hc.size() == 2);
  // D[e0>1] = [e0>1] o d = [e1>1]; D[e1>1] lands in degree -2, which is empty.
  auto e0 = *hc.find("[e0>1]"), e1 = *hc.find("[e1>1]");
  CHECK(hc.degree(e0) == 0);
  CHECK(hc.degree(e1) == -1);
  CHECK(hc.boundary(e0) == SparseVec{{static_cast<std::uint32_t>(e1), 1}});
  CHECK(hc.boundary(e1).empty());
  for (auto [n, betti] : homology(hc)) CHECK(betti == 0);
}

TEST_CASE("operations preserve d^2 = 0 and Kunneth holds") {
  testgen::Rng rng(21);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 60; ++trial) {
      ChainComplex x = testgen::random_complex(rng, f, 4, -2, 3);
      ChainComplex y = testgen::random_complex(rng, f, 4, -2, 3);
      REQUIRE(validate_complex(x).passed());
      ChainComplex t = tensor_cx(x, y), h = hom_cx(x, y);
      CHECK(validate_complex(t).passed());
      CHECK(validate_complex(h).passed());
      CHECK(homology(x) == oracle_betti(x));
      CHECK(homology(t) == oracle_betti(t));
      CHECK(homology(h) == oracle_betti(h));
      auto bx = homology(x), by = homology(y), bt = homology(t), bh = homology(h);
      for (int n = -4; n <= 6; ++n) {
        std::size_t conv = 0;
        for (auto [i, bi] : bx) conv += bi * b(by, n - i);
        CHECK(b(bt, n) == conv);
      }
      for (int n = -5; n <= 5; ++n) {
        std::size_t conv = 0;
        for (auto [i, bi] : bx) conv += bi * b(by, n + i);
        CHECK(b(bh, n) == conv);
      }
    }
  }
}

TEST_CASE("Z/2 mode agrees with reduced Z-mode computations") {
  testgen::Rng rng(22);
  for (std::uint32_t p : {2u, 3u}) {
    const FieldSpec f(p);
    for (int trial = 0; trial < 40; ++trial) {
      ChainComplex x = testgen::random_complex(rng, f, 4, -2, 3);
      ChainComplex y = testgen::random_complex(rng, f, 4, -2, 3);
      ChainComplex rx = reduce_mod2(x), ry = reduce_mod2(y);
      CHECK(validate_complex(rx).passed());
      for (int n : rx.degrees()) CHECK((n == 0 || n == 1));
      auto parity = [](const std::map<int, std::size_t>& m) {
        std::map<int, std::size_t> out;
        for (auto [n, v] : m) out[((n % 2) + 2) % 2] += v;
        return out;
      };
      auto strip = [](std::map<int, std::size_t> m) {
        std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
        return m;
      };
      CHECK(strip(homology(rx)) == strip(parity(homology(x))));
      ChainComplex t2 = tensor_cx(rx, ry), h2 = hom_cx(rx, ry);
      CHECK(validate_complex(t2).passed());
      CHECK(validate_complex(h2).passed());
      CHECK(homology(t2) == oracle_betti(t2));
      CHECK(strip(homology(t2)) == strip(parity(homology(tensor_cx(x, y)))));
      CHECK(strip(homology(h2)) == strip(parity(homology(hom_cx(x, y)))));
      CHECK(strip(homology(reduce_mod2(tensor_cx(x, y)))) == strip(homology(t2)));
    }
  }
  CHECK_THROWS_AS(tensor_cx(fixtures::cone(), reduce_mod2(fixtures::cone())), Error);
  CHECK_THROWS_AS(tensor_cx(fixtures::cone(), fixtures::cone(FieldSpec(3))), Error);
}

TEST_CASE("hom differential is a derivation for composition at p = 3") {
  // Maps as dense matrices M[y][x]; D is read off the library's hom_cx.
  testgen::Rng rng(23);
  const FieldSpec f(3);
  using Mat = std::vector<std::vector<Scalar>>;
  auto mat_mul = [&](const Mat& a, const Mat& bm) {
    Mat out(a.size(), std::vector<Scalar>(bm.empty() ? 0 : bm[0].size(), 0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < bm.size(); ++k)
        for (std::size_t j = 0; j < out[i].size(); ++j) out[i][j] = f.add(out[i][j], f.mul(a[i][k], bm[k][j]));
    return out;
  };
  auto D = [&](const ChainComplex& a, const ChainComplex& bb, const Mat& m) {
    ChainComplex h = hom_cx(a, bb);
    Mat out(bb.size(), std::vector<Scalar>(a.size(), 0));
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < bb.size(); ++y) {
        if (!m[y][x]) continue;
        auto g = h.find("[" + a.name(x) + ">" + bb.name(y) + "]");
        REQUIRE(g);
        for (const auto& e : h.boundary(*g)) {
          const std::string& nm = h.name(e.index);
          const auto gt = nm.find('>');
          std::size_t xs = *a.find(nm.substr(1, gt - 1)), ys = *bb.find(nm.substr(gt + 1, nm.size() - gt - 2));
          out[ys][xs] = f.add(out[ys][xs], f.mul(m[y][x], e.value));
        }
      }
    return out;
  };
  auto add = [&](Mat a, const Mat& bm, Scalar s) {
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] = f.add(a[i][j], f.mul(s, bm[i][j]));
    return a;
  };
  auto named = [&](ChainComplex c, const std::string& prefix) {
    ChainComplex::Builder bld(f, Grading::Z);
    for (std::size_t g = 0; g < c.size(); ++g) bld.generator(c.degree(g), prefix + c.name(g));
    for (std::size_t g = 0; g < c.size(); ++g)
      for (const auto& e : c.boundary(g)) bld.term(prefix + c.name(g), prefix + c.name(e.index), e.value);
    return bld.build();
  };
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    ChainComplex a = named(testgen::random_complex(rng, f, 2, 0, 2), "a");
    ChainComplex bb = named(testgen::random_complex(rng, f, 2, 0, 2), "b");
    ChainComplex c = named(testgen::random_complex(rng, f, 2, 0, 2), "c");
    // g : a -> b elementary, f : b -> c elementary; g then f is F * G.
    for (std::size_t x = 0; x < a.size(); ++x)
      for (std::size_t y = 0; y < bb.size(); ++y)
        for (std::size_t y2 = 0; y2 < bb.size(); ++y2)
          for (std::size_t z = 0; z < c.size(); ++z) {
            Mat G(bb.size(), std::vector<Scalar>(a.size(), 0)), Fm(c.size(), std::vector<Scalar>(bb.size(), 0));
            G[y][x] = 1;
            Fm[z][y2] = 1;
            const int deg_g = bb.degree(y) - a.degree(x);
            Mat lhs = D(a, c, mat_mul(Fm, G));
            Mat rhs = add(mat_mul(Fm, D(a, bb, G)), mat_mul(D(bb, c, Fm), G), f.sign(deg_g));
            CHECK(lhs == rhs);
            ++checked;
          }
  }
  CHECK(checked > 0);
}
