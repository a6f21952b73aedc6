#pragma once

// JSON workspaces: a field, a grading mode and named entities.
// The format is described in docs/format.md.

#include <filesystem>
#include <map>
#include <string>
#include <variant>

#include <json.hpp>

#include "dgc/bimodule.hpp"
#include "dgc/segal.hpp"

namespace dgc {

struct BimoduleEntity {
  std::string left_cat;
  std::string right_cat;
  Bimodule value;
};

using Entity = std::variant<ChainComplex, CategoryPtr, BimoduleEntity, FiniteSimplicialSet, FiniteCategory>;

std::string_view kind_name(const Entity& e);

struct Workspace {
  FieldSpec field;
  Grading grading = Grading::Z;
  std::vector<std::string> imports;
  std::map<std::string, Entity> entities;
  // Names defined in this file, as opposed to imported ones.
  std::vector<std::string> local;

  const Entity& get(const std::string& name) const;
  template <class T>
  const T& get_as(const std::string& name) const {
    const Entity& e = get(name);
    if (auto* p = std::get_if<T>(&e)) return *p;
    throw Error(ErrorKind::NotFound, "entity '" + name + "' has kind " + std::string(kind_name(e)));
  }
};

// Schema and reference errors throw Error(Schema) or Error(NotFound);
// entity contents are not validated.
Workspace parse_workspace(const std::filesystem::path& path);
Workspace parse_workspace_text(const std::string& text, const std::filesystem::path& base = {});

// Runs every module validator; failures are prefixed with the entity's JSON path.
ValidationReport validate_workspace(const Workspace& w);

// parse_workspace followed by validation; throws Error(ValidationFailed) on
// the first failure.
Workspace load_workspace(const std::filesystem::path& path);

// Canonical form of the locally defined entities (imports are kept as references).
nlohmann::json to_json(const Workspace& w);
std::string canonical_text(const Workspace& w);

nlohmann::json complex_to_json(const ChainComplex& c);
nlohmann::json category_to_json(const DgCategory& c);

}  // namespace dgc
