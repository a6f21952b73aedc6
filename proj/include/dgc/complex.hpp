#pragma once

// Finite chain complexes with a degree -1 differential, graded by Z or Z/2.
//
// Generators are stored flat, sorted by degree (stable within a degree), and
// the differential is one square matrix on the flat basis. Sign rule: moving
// a degree-a symbol past a degree-b symbol costs (-1)^(ab).

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgc/linalg.hpp"

namespace dgc {

enum class Grading { Z, Z2 };

std::string_view to_string(Grading g);

class ChainComplex {
 public:
  struct Generator {
    int degree;
    std::string name;
    friend bool operator==(const Generator&, const Generator&) = default;
  };

  ChainComplex() = default;
  ChainComplex(FieldSpec field, Grading grading);
  // `gens` need not be sorted; `d` is indexed like `gens` and is permuted
  // together with it. Throws if an entry of d does not lower degree by one.
  ChainComplex(FieldSpec field, Grading grading, std::vector<Generator> gens, SparseMatrix d);

  class Builder {
   public:
    Builder(FieldSpec field, Grading grading) : field_(field), grading_(grading) {}
    Builder& generator(int degree, std::string name);
    // d(from) += coeff * to
    Builder& term(const std::string& from, const std::string& to, Scalar coeff = 1);
    ChainComplex build() const;

   private:
    FieldSpec field_;
    Grading grading_;
    std::vector<Generator> gens_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::tuple<std::size_t, std::size_t, Scalar>> terms_;
  };

  const FieldSpec& field() const { return field_; }
  Grading grading() const { return grading_; }

  std::size_t size() const { return gens_.size(); }
  int degree(std::size_t g) const { return gens_[g].degree; }
  const std::string& name(std::size_t g) const { return gens_[g].name; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<std::size_t> find(const std::string& name) const;

  // Degree reached from n by the differential (n-1, or mod 2).
  int lower(int n) const { return normalize_degree(n - 1); }
  int normalize_degree(int n) const;

  std::vector<int> degrees() const;
  std::size_t dim(int n) const;
  std::size_t offset(int n) const;  // flat index of the first generator of degree n
  int min_degree() const;           // requires size() > 0
  int max_degree() const;

  const SparseMatrix& differential() const { return d_; }
  const SparseVec& boundary(std::size_t g) const { return d_.column(g); }
  // d_n : C_n -> C_{lower(n)} in local coordinates.
  SparseMatrix block(int n) const;

  friend bool operator==(const ChainComplex& a, const ChainComplex& b) {
    return a.field_ == b.field_ && a.grading_ == b.grading_ && a.gens_ == b.gens_ && a.d_ == b.d_;
  }

 private:
  void index_names();

  FieldSpec field_;
  Grading grading_ = Grading::Z;
  std::vector<Generator> gens_;
  SparseMatrix d_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

// Passes iff d o d = 0; names each failing degree with a witness generator.
ValidationReport validate_complex(const ChainComplex& c);

// Betti number per degree of the support. Throws InvalidComplex if d^2 != 0.
std::map<int, std::size_t> homology(const ChainComplex& c);
// Betti numbers over an explicit degree list, zero outside the support.
std::size_t betti(const ChainComplex& c, int n);

// The field in degree 0 with a single generator named `1`.
ChainComplex unit_complex(FieldSpec field, Grading grading);
ChainComplex zero_complex(FieldSpec field, Grading grading);

// Basis: pairs (x, y) named `x*y` with |x|+|y| = n;
// d(x*y) = dx*y + (-1)^|x| x*dy.
ChainComplex tensor_cx(const ChainComplex& a, const ChainComplex& b);

// Degree-n maps raise degree by n; basis: elementary maps named `[x>y]`
// sending x to y, with n = |y| - |x|; Df = f d_a + (-1)^(n+1) d_b f.
ChainComplex hom_cx(const ChainComplex& a, const ChainComplex& b);

// Z-graded complex viewed as Z/2-graded.
ChainComplex reduce_mod2(const ChainComplex& c);

// Flat index of the tensor basis element (x, y) inside tensor_cx(a, b).
// Precomputes the layout once; used by constructions that tensor many slots.
class TensorIndex {
 public:
  TensorIndex(const ChainComplex& a, const ChainComplex& b);
  std::uint32_t operator()(std::size_t x, std::size_t y) const { return index_[x * nb_ + y]; }

 private:
  std::size_t nb_;
  std::vector<std::uint32_t> index_;
};

void check_compatible(const FieldSpec& fa, Grading ga, const FieldSpec& fb, Grading gb, const char* what);

}  // namespace dgc
