#pragma once

// Truncated simplicial sets with finite discrete levels, nerves of finite
// categories, and the strict Segal condition.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgc/errors.hpp"

namespace dgc {

class FiniteCategory {
 public:
  struct Morphism {
    std::string name;
    std::uint32_t source;
    std::uint32_t target;
  };

  FiniteCategory() = default;
  explicit FiniteCategory(std::vector<std::string> objects);

  std::size_t object_count() const { return objects_.size(); }
  const std::string& object(std::size_t i) const { return objects_[i]; }
  const std::vector<std::string>& objects() const { return objects_; }
  std::size_t morphism_count() const { return morphisms_.size(); }
  const Morphism& morphism(std::size_t i) const { return morphisms_[i]; }
  std::optional<std::uint32_t> find_object(const std::string& name) const;
  std::optional<std::uint32_t> find_morphism(const std::string& name) const;

  std::uint32_t add_morphism(std::string name, std::uint32_t source, std::uint32_t target);
  void set_identity(std::uint32_t object, std::uint32_t morphism);
  std::optional<std::uint32_t> identity(std::uint32_t object) const { return identities_[object]; }
  // f then g.
  void set_composite(std::uint32_t f, std::uint32_t g, std::uint32_t h);
  std::optional<std::uint32_t> composite(std::uint32_t f, std::uint32_t g) const;

 private:
  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::optional<std::uint32_t>> identities_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> comp_;
};

ValidationReport validate_fincat(const FiniteCategory& c);

struct FiniteSimplicialSet {
  int depth = 0;
  std::vector<std::vector<std::string>> levels;                 // 0..depth
  std::vector<std::vector<std::vector<std::uint32_t>>> faces;   // faces[n][i], n = 1..depth
  std::vector<std::vector<std::vector<std::uint32_t>>> degeneracies;  // degeneracies[n][i], n = 0..depth-1

  // Empty maps of the right shape for levels already filled in.
  void shape_maps();
  std::optional<std::uint32_t> find(int level, const std::string& name) const;
};

ValidationReport validate_sset(const FiniteSimplicialSet& x);

FiniteSimplicialSet nerve(const FiniteCategory& c, int depth);

struct SegalVerdict {
  enum class Status { Pass, Fail, InvalidInput };
  int m = 0;
  int n = 0;
  Status status = Status::Pass;
  std::string witness;
};

std::string_view to_string(SegalVerdict::Status s);

SegalVerdict segal_check(const FiniteSimplicialSet& x, int m, int n);

}  // namespace dgc
