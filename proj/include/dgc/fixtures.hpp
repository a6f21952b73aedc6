#pragma once

// Small named inputs shared by the tests, the CLI and fixtures/fixtures.json.

#include "dgc/dgcat.hpp"
#include "dgc/segal.hpp"

namespace dgc::fixtures {

// One object "*", hom = field in degree 0.
DgCategory unitK(FieldSpec field = FieldSpec{});
// One object "*", hom basis {1, x} in degree 0, x^2 = 0.
DgCategory dual(FieldSpec field = FieldSpec{});
// Objects x, y; hom(x,y) spanned by u in degree 0; identities.
DgCategory a2(FieldSpec field = FieldSpec{});
// e1 -> e0 with coefficient 1.
ChainComplex cone(FieldSpec field = FieldSpec{});

FiniteCategory poset01();
FiniteCategory cyclic_group(int order);
// Vertices a, b, c with edges ab and bc and only degenerate 2-simplices.
FiniteSimplicialSet spine_delta2();

}  // namespace dgc::fixtures
