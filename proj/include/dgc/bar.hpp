#pragma once

// Truncated bar constructions, enumerated lazily by total degree.
//
// A word of bar length j lives in a block (j, object tuple); its key is the
// block offset plus the mixed-radix index of its generators, first factor
// most significant. Blocks are ordered by j, then lexicographically by tuple.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dgc/bimodule.hpp"

namespace dgc {

class LazyComplex {
 public:
  virtual ~LazyComplex() = default;

  virtual const FieldSpec& field() const = 0;
  virtual Grading grading() const = 0;

  // Total degrees with at least one generator, ascending.
  virtual std::vector<int> degrees() const = 0;
  virtual std::uint64_t count(int t) const = 0;
  // Visits the generators of total degree t in basis order.
  virtual void for_each(int t, const std::function<void(std::uint64_t)>& fn) const = 0;
  // Normalized boundary of a generator.
  virtual void boundary(std::uint64_t key, KeyVec& out) const = 0;
  virtual int degree(std::uint64_t key) const = 0;
  virtual std::string name(std::uint64_t key) const = 0;

  int lower(int t) const { return grading() == Grading::Z ? t - 1 : 1 - t; }
  int upper(int t) const { return grading() == Grading::Z ? t + 1 : 1 - t; }
};

// Rank of the differential leaving total degree t.
std::size_t lazy_rank(const LazyComplex& c, int t);

// Betti numbers for total degrees lo..hi. Ranks are computed in parallel over
// degrees; the result does not depend on the thread count.
std::map<int, std::size_t> lazy_betti(const LazyComplex& c, int lo, int hi, unsigned threads = 1);

// Every generator, sorted stably by degree, keys in increasing order otherwise.
ChainComplex materialize(const LazyComplex& c);

class WordComplex : public LazyComplex {
 public:
  struct Block {
    int j = 0;
    std::vector<std::uint32_t> objects;
    std::vector<const ChainComplex*> factors;
    std::vector<std::uint64_t> radix;  // place value of each factor
    std::uint64_t offset = 0;
    std::uint64_t size = 0;
  };

  const FieldSpec& field() const override { return field_; }
  Grading grading() const override { return grading_; }
  std::vector<int> degrees() const override;
  std::uint64_t count(int t) const override;
  void for_each(int t, const std::function<void(std::uint64_t)>& fn) const override;
  void boundary(std::uint64_t key, KeyVec& out) const override;
  int degree(std::uint64_t key) const override;
  std::string name(std::uint64_t key) const override;

  int truncation() const { return truncation_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::optional<std::size_t> find_block(int j, const std::vector<std::uint32_t>& objects) const;
  std::size_t block_of(std::uint64_t key) const;
  void decode(std::uint64_t key, std::size_t& block, std::vector<std::uint32_t>& gens) const;
  std::uint64_t encode(std::size_t block, const std::vector<std::uint32_t>& gens) const;
  int internal_degree(std::size_t block, const std::vector<std::uint32_t>& gens) const;

  // Generators of bar length j and internal degree n.
  void for_each_bidegree(int j, int n, const std::function<void(std::uint64_t)>& fn) const;
  // Horizontal part, and vertical part including its (-1)^j sign.
  void horizontal(std::uint64_t key, KeyVec& out) const;
  void vertical(std::uint64_t key, KeyVec& out) const;

  // Matrices between bidegree bases: horizontal (n,j) -> (n,j-1) and
  // vertical (n,j) -> (n-1,j).
  SparseMatrix horizontal_block(int j, int n) const;
  SparseMatrix vertical_block(int j, int n) const;

 protected:
  WordComplex(FieldSpec field, Grading grading, int truncation)
      : field_(field), grading_(grading), truncation_(truncation) {}

  // Adds a block if all its factors are nonzero.
  void add_block(int j, std::vector<std::uint32_t> objects, std::vector<const ChainComplex*> factors);
  void finish();

  // Emits the signed horizontal terms of a word.
  virtual void faces(const Block& b, const std::vector<std::uint32_t>& gens,
                     const std::function<void(std::size_t, const std::vector<std::uint32_t>&, Scalar)>& emit) const = 0;

  int norm(int n) const { return grading_ == Grading::Z ? n : ((n % 2) + 2) % 2; }

  FieldSpec field_;
  Grading grading_;
  int truncation_;

 private:
  std::uint64_t code(int j, const std::vector<std::uint32_t>& objects) const;
  void enumerate(const Block& b, int target, bool internal,
                 const std::function<void(std::uint64_t)>& fn) const;
  std::map<int, std::uint64_t> block_counts(const Block& b) const;

  std::vector<Block> blocks_;
  std::unordered_map<std::uint64_t, std::size_t> by_code_;
  std::uint64_t object_base_ = 1;
  std::map<int, std::uint64_t> counts_;
};

// Middle factor homs, optionally with unit generators removed (normalized bar).
class MiddleHoms {
 public:
  MiddleHoms(const DgCategory& cat, bool normalized);
  const ChainComplex& hom(std::size_t a, std::size_t b) const { return homs_[a * n_ + b]; }
  std::uint32_t original(std::size_t a, std::size_t b, std::uint32_t i) const {
    return (a == b && normalized_ && i >= units_[a]) ? i + 1 : i;
  }
  // Index in the middle complex, or -1 if the generator is a removed unit.
  std::int64_t reduced(std::size_t a, std::size_t b, std::uint32_t i) const {
    if (a != b || !normalized_) return i;
    if (i == units_[a]) return -1;
    return i > units_[a] ? i - 1 : i;
  }

 private:
  std::size_t n_;
  bool normalized_;
  std::vector<std::uint32_t> units_;
  std::vector<ChainComplex> homs_;
};

// Two-sided bar complex of V1 over (A,B) and V2 over (B,C) at slot (a,c).
// Factors: V1(a,o_0), B(o_0,o_1), ..., B(o_{j-1},o_j), V2(o_j,c).
class BarComplex : public WordComplex {
 public:
  BarComplex(std::shared_ptr<const Bimodule> v1, std::shared_ptr<const Bimodule> v2,
             std::shared_ptr<const MiddleHoms> middle, std::size_t a, std::size_t c, int truncation);

 protected:
  void faces(const Block& b, const std::vector<std::uint32_t>& gens,
             const std::function<void(std::size_t, const std::vector<std::uint32_t>&, Scalar)>& emit) const override;

 private:
  std::shared_ptr<const Bimodule> v1_, v2_;
  std::shared_ptr<const MiddleHoms> middle_;
  std::size_t a_, c_;
};

// Cyclic bar complex: factors A(o_0,o_1), ..., A(o_{j-1},o_j), A(o_j,o_0).
class CyclicBar : public WordComplex {
 public:
  CyclicBar(CategoryPtr a, std::shared_ptr<const MiddleHoms> middle, int truncation);

 protected:
  void faces(const Block& b, const std::vector<std::uint32_t>& gens,
             const std::function<void(std::size_t, const std::vector<std::uint32_t>&, Scalar)>& emit) const override;

 private:
  CategoryPtr cat_;
  std::shared_ptr<const MiddleHoms> middle_;
};

// Checks shared by compose and the bar constructors.
void check_composable(const Bimodule& v1, const Bimodule& v2, int truncation);

Bimodule compose(const Bimodule& v1, const Bimodule& v2, int truncation, bool normalized = false);

// Lazy slot of compose(v1, v2, J) at (a, c).
std::unique_ptr<BarComplex> compose_slot(std::shared_ptr<const Bimodule> v1, std::shared_ptr<const Bimodule> v2,
                                         std::size_t a, std::size_t c, int truncation, bool normalized = false);

// Largest total degree whose homology is unaffected by the truncation, or
// nullopt when no finite bound exists.
std::optional<int> safe_degree_bound(const Bimodule& v1, const Bimodule& v2, int truncation);
std::optional<int> hochschild_safe_bound(const DgCategory& a, int truncation);

std::unique_ptr<CyclicBar> hochschild_complex(CategoryPtr a, int truncation, bool normalized = false);
ChainComplex hochschild_direct(CategoryPtr a, int truncation, bool normalized = false);

// The single slot of compose(adj(diagonal(A)), adj_op(diagonal(A)), J).
std::unique_ptr<BarComplex> hochschild_adj_complex(CategoryPtr a, int truncation, bool normalized = false);
ChainComplex hochschild_via_adj(CategoryPtr a, int truncation, bool normalized = false);

struct QuasiIsoReport {
  std::map<int, std::size_t> first;
  std::map<int, std::size_t> second;
  bool equal = false;
};
QuasiIsoReport quasi_iso_report(const ChainComplex& c1, const ChainComplex& c2, int lo, int hi);

}  // namespace dgc
