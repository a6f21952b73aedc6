#include "dgc/fixtures.hpp"

#include <string>

namespace dgc::fixtures {

namespace {

ChainComplex degree0(FieldSpec field, std::initializer_list<const char*> names) {
  ChainComplex::Builder b(field, Grading::Z);
  for (const char* n : names) b.generator(0, n);
  return b.build();
}

}  // namespace

DgCategory unitK(FieldSpec field) { return unit_cat(field, Grading::Z); }

DgCategory dual(FieldSpec field) {
  DgCategory c(field, Grading::Z, {"*"});
  c.set_hom(0, 0, degree0(field, {"1", "x"}));
  c.set_product(0, 0, 0, 0, 0, {{0, 1}});
  c.set_product(0, 0, 0, 0, 1, {{1, 1}});
  c.set_product(0, 0, 0, 1, 0, {{1, 1}});
  c.set_unit(0, {{0, 1}});
  return c;
}

DgCategory a2(FieldSpec field) {
  DgCategory c(field, Grading::Z, {"x", "y"});
  c.set_hom(0, 0, degree0(field, {"1"}));
  c.set_hom(1, 1, degree0(field, {"1"}));
  c.set_hom(0, 1, degree0(field, {"u"}));
  c.set_product(0, 0, 0, 0, 0, {{0, 1}});
  c.set_product(1, 1, 1, 0, 0, {{0, 1}});
  c.set_product(0, 0, 1, 0, 0, {{0, 1}});
  c.set_product(0, 1, 1, 0, 0, {{0, 1}});
  c.set_unit(0, {{0, 1}});
  c.set_unit(1, {{0, 1}});
  return c;
}

ChainComplex cone(FieldSpec field) {
  return ChainComplex::Builder(field, Grading::Z).generator(0, "e0").generator(1, "e1").term("e1", "e0").build();
}

FiniteCategory poset01() {
  FiniteCategory c({"0", "1"});
  auto i0 = c.add_morphism("id0", 0, 0), i1 = c.add_morphism("id1", 1, 1), u = c.add_morphism("u", 0, 1);
  c.set_identity(0, i0);
  c.set_identity(1, i1);
  c.set_composite(i0, i0, i0);
  c.set_composite(i1, i1, i1);
  c.set_composite(i0, u, u);
  c.set_composite(u, i1, u);
  return c;
}

FiniteCategory cyclic_group(int order) {
  FiniteCategory c({"*"});
  for (int k = 0; k < order; ++k) c.add_morphism(k == 0 ? "e" : "g" + std::to_string(k), 0, 0);
  c.set_identity(0, 0);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      c.set_composite(static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                      static_cast<std::uint32_t>((a + b) % order));
  return c;
}

FiniteSimplicialSet spine_delta2() {
  // Simplices are nondecreasing vertex words inside {a,b} or {b,c}.
  FiniteSimplicialSet x;
  x.depth = 2;
  x.levels = {{"a", "b", "c"},
              {"aa", "ab", "bb", "bc", "cc"},
              {"aaa", "aab", "abb", "bbb", "bbc", "bcc", "ccc"}};
  x.shape_maps();
  for (int n = 1; n <= 2; ++n)
    for (std::uint32_t k = 0; k < x.levels[n].size(); ++k)
      for (int i = 0; i <= n; ++i) {
        std::string w = x.levels[n][k];
        w.erase(static_cast<std::size_t>(i), 1);
        x.faces[n][i][k] = *x.find(n - 1, w);
      }
  for (int n = 0; n < 2; ++n)
    for (std::uint32_t k = 0; k < x.levels[n].size(); ++k)
      for (int i = 0; i <= n; ++i) {
        std::string w = x.levels[n][k];
        w.insert(static_cast<std::size_t>(i), 1, w[static_cast<std::size_t>(i)]);
        x.degeneracies[n][i][k] = *x.find(n + 1, w);
      }
  return x;
}

}  // namespace dgc::fixtures
