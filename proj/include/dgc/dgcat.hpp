#pragma once

// Finite dg-categories. Composition is written in diagrammatic order:
// for f in hom(a,b) and g in hom(b,c), fg lies in hom(a,c).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgc/complex.hpp"

namespace dgc {

class DgCategory {
 public:
  DgCategory() = default;
  // All homs start as zero complexes, all products as zero.
  DgCategory(FieldSpec field, Grading grading, std::vector<std::string> objects);

  const FieldSpec& field() const { return field_; }
  Grading grading() const { return grading_; }

  std::size_t object_count() const { return objects_.size(); }
  const std::string& object(std::size_t i) const { return objects_[i]; }
  const std::vector<std::string>& objects() const { return objects_; }
  std::optional<std::size_t> find_object(const std::string& name) const;

  const ChainComplex& hom(std::size_t a, std::size_t b) const { return homs_[a * n() + b]; }
  void set_hom(std::size_t a, std::size_t b, ChainComplex c);

  // Structure constants of hom(a,b) (x) hom(b,c) -> hom(a,c).
  const SparseVec& product(std::size_t a, std::size_t b, std::size_t c, std::size_t f, std::size_t g) const {
    return comp_[(a * n() + b) * n() + c][f * hom(b, c).size() + g];
  }
  void set_product(std::size_t a, std::size_t b, std::size_t c, std::size_t f, std::size_t g, SparseVec out);

  bool unital() const { return units_.has_value() || objects_.empty(); }
  const SparseVec& unit(std::size_t a) const { return (*units_)[a]; }
  void set_unit(std::size_t a, SparseVec u);
  void clear_units() { units_.reset(); }

  // Unit is a single generator with coefficient one in every hom(a,a).
  std::optional<std::vector<std::size_t>> unit_generators() const;

  // Minimum degree over all nonzero hom complexes; nullopt if every hom is zero.
  std::optional<int> min_degree() const;
  std::size_t total_dim() const;

  friend bool operator==(const DgCategory& a, const DgCategory& b);

 private:
  std::size_t n() const { return objects_.size(); }
  void resize_products(std::size_t a, std::size_t b);

  FieldSpec field_;
  Grading grading_ = Grading::Z;
  std::vector<std::string> objects_;
  std::vector<ChainComplex> homs_;
  std::vector<std::vector<SparseVec>> comp_;
  std::optional<std::vector<SparseVec>> units_;
};

using CategoryPtr = std::shared_ptr<const DgCategory>;

// Chain-map, associativity and (when present) unit laws.
ValidationReport validate_category(const DgCategory& a);

DgCategory unit_cat(FieldSpec field, Grading grading);
DgCategory empty_cat(FieldSpec field, Grading grading);

// hom_op(a,b) = hom(b,a); f .op g = (-1)^(|f||g|) g f.
DgCategory opposite(const DgCategory& a);

// Objects are pairs `(a,b)`; (f*g)(f'*g') = (-1)^(|g||f'|) (ff')*(gg').
DgCategory tensor_cat(const DgCategory& a, const DgCategory& b);

// Disjoint union; cross homs are zero complexes. Object names are kept unless
// they collide, in which case every object is prefixed with `1.` or `2.`.
DgCategory sum_cat(const DgCategory& a, const DgCategory& b);

void require_unital(const DgCategory& a, ErrorKind kind, const std::string& what);

}  // namespace dgc
