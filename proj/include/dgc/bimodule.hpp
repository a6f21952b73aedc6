#pragma once

// Bimodules V over (L, R): a complex V(a,b) per object pair with a left
// action hom_L(a',a) (x) V(a,b) -> V(a',b) and a right action
// V(a,b) (x) hom_R(b,b') -> V(a,b').

#include <map>

#include "dgc/dgcat.hpp"

namespace dgc {

class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(CategoryPtr left, CategoryPtr right);

  const DgCategory& left() const { return *left_; }
  const DgCategory& right() const { return *right_; }
  const CategoryPtr& left_ptr() const { return left_; }
  const CategoryPtr& right_ptr() const { return right_; }
  const FieldSpec& field() const { return left_->field(); }
  Grading grading() const { return left_->grading(); }

  const ChainComplex& slot(std::size_t a, std::size_t b) const { return slots_[a * nr() + b]; }
  void set_slot(std::size_t a, std::size_t b, ChainComplex c);

  // f in hom_L(a2,a), v in V(a,b)  ->  V(a2,b)
  const SparseVec& lact(std::size_t a2, std::size_t a, std::size_t b, std::size_t f, std::size_t v) const {
    return lact_[(a2 * nl() + a) * nr() + b][f * slot(a, b).size() + v];
  }
  // v in V(a,b), g in hom_R(b,b2)  ->  V(a,b2)
  const SparseVec& ract(std::size_t a, std::size_t b, std::size_t b2, std::size_t v, std::size_t g) const {
    return ract_[(a * nr() + b) * nr() + b2][v * right_->hom(b, b2).size() + g];
  }
  void set_lact(std::size_t a2, std::size_t a, std::size_t b, std::size_t f, std::size_t v, SparseVec out);
  void set_ract(std::size_t a, std::size_t b, std::size_t b2, std::size_t v, std::size_t g, SparseVec out);

  std::optional<int> min_degree() const;
  std::size_t total_dim() const;

  friend bool operator==(const Bimodule& x, const Bimodule& y);

 private:
  std::size_t nl() const { return left_->object_count(); }
  std::size_t nr() const { return right_->object_count(); }

  CategoryPtr left_, right_;
  std::vector<ChainComplex> slots_;
  std::vector<std::vector<SparseVec>> lact_;
  std::vector<std::vector<SparseVec>> ract_;
};

bool same_category(const CategoryPtr& a, const CategoryPtr& b);

ValidationReport validate_bimodule(const Bimodule& v);

Bimodule diagonal(CategoryPtr a);

// Over (A (x) C, B (x) D); slot ((a,c),(b,d)) = V1(a,b) (x) V2(c,d).
Bimodule ext_tensor(const Bimodule& v1, const Bimodule& v2);

// Over (K, A^op (x) B): slot (*, (a,b)) = V(a,b),
// v . (f (x) g) = (-1)^(|f||v|) f v g.
Bimodule adj(const Bimodule& v);

// Over (B^op (x) A, K): slot ((b,a), *) = V(a,b),
// (g (x) f) . v = (-1)^(|g|(|f|+|v|)) f v g.
// For the diagonal bimodule this is a bimodule over (A^op (x) A, K).
Bimodule adj_op(const Bimodule& v);

// Strict pre-natural transformations V1 -> V2: degree-n families of maps
// V1(a,b) -> V2(a,b) raising degree by n that commute with both actions
// (with the Koszul sign on the left), differential as in hom_cx.
ChainComplex nat_complex(const Bimodule& v1, const Bimodule& v2);

// nat_complex together with each basis element written as a family of
// elementary maps. Coordinates run over slots (a,b) in row-major order, then
// x in V1(a,b), then y in V2(a,b).
struct NatBasis {
  ChainComplex complex;
  std::vector<SparseVec> families;
};
NatBasis nat_basis(const Bimodule& v1, const Bimodule& v2);

std::size_t pi_k(const Bimodule& v1, const Bimodule& v2, int k);

}  // namespace dgc
