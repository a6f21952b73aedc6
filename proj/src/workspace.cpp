#include "dgc/workspace.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace dgc {

using nlohmann::json;

std::string_view kind_name(const Entity& e) {
  switch (e.index()) {
    case 0: return "complex";
    case 1: return "category";
    case 2: return "bimodule";
    case 3: return "sset";
    default: return "fincat";
  }
}

const Entity& Workspace::get(const std::string& name) const {
  auto it = entities.find(name);
  if (it == entities.end()) throw Error(ErrorKind::NotFound, "no entity named '" + name + "'");
  return it->second;
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Schema, (path.empty() ? "/" : path) + ": " + msg);
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void check_keys(const json& j, const std::string& path, std::initializer_list<const char*> required,
                std::initializer_list<const char*> optional) {
  if (!j.is_object()) fail(path, "expected an object");
  for (const auto& [k, v] : j.items()) {
    bool known = false;
    for (const char* r : required) known = known || k == r;
    for (const char* o : optional) known = known || k == o;
    if (!known) fail(child(path, k), "unknown field");
  }
  for (const char* r : required)
    if (!j.contains(r)) fail(child(path, r), "missing field");
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::string> string_list(const json& j, const std::string& path) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < as_array(j, path).size(); ++i) out.push_back(as_string(j[i], child(path, i)));
  return out;
}

Scalar coefficient(const FieldSpec& f, const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "coefficient must be an integer");
  const long long p = f.characteristic();
  long long v = j.get<long long>() % p;
  if (v < 0) v += p;
  return static_cast<Scalar>(v);
}

// A term is "name" (coefficient 1) or ["name", c].
std::pair<std::string, Scalar> term(const FieldSpec& f, const json& j, const std::string& path) {
  if (j.is_string()) return {j.get<std::string>(), 1};
  if (!j.is_array() || j.size() != 2) fail(path, "expected \"name\" or [\"name\", coefficient]");
  return {as_string(j[0], child(path, 0)), coefficient(f, j[1], child(path, 1))};
}

int parse_int(const std::string& s, const std::string& path) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail(path, "expected an integer, got '" + s + "'");
  return v;
}

struct Ref {
  std::string a, b, name;
};

Ref split_ref(const std::string& s, const std::string& path, bool with_name) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) fail(path, "expected 'a|b" + std::string(with_name ? ":name" : "") + "', got '" + s + "'");
  Ref r;
  r.a = s.substr(0, bar);
  if (!with_name) {
    r.b = s.substr(bar + 1);
    return r;
  }
  const auto colon = s.find(':', bar + 1);
  if (colon == std::string::npos) fail(path, "expected 'a|b:name', got '" + s + "'");
  r.b = s.substr(bar + 1, colon - bar - 1);
  r.name = s.substr(colon + 1);
  return r;
}

struct Parser {
  FieldSpec field;
  Grading grading;

  ChainComplex complex(const json& j, const std::string& path, bool with_kind) const {
    if (with_kind) check_keys(j, path, {"kind", "basis"}, {"d"});
    else check_keys(j, path, {"basis"}, {"d"});
    const json& basis = j["basis"];
    if (!basis.is_object()) fail(child(path, "basis"), "expected an object");
    std::map<int, std::vector<std::string>> by_degree;
    for (const auto& [k, v] : basis.items()) {
      const std::string p = child(child(path, "basis"), k);
      auto names = string_list(v, p);
      auto& slot = by_degree[parse_int(k, p)];
      slot.insert(slot.end(), names.begin(), names.end());
    }
    ChainComplex::Builder b(field, grading);
    std::set<std::string> seen;
    for (const auto& [deg, names] : by_degree)
      for (const auto& n : names) {
        if (!seen.insert(n).second) fail(child(path, "basis"), "duplicate generator '" + n + "'");
        b.generator(deg, n);
      }
    if (j.contains("d")) {
      const std::string dp = child(path, "d");
      const json& d = as_array(j["d"], dp);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const std::string ip = child(dp, i);
        check_keys(d[i], ip, {"from", "to"}, {});
        const std::string& from = as_string(d[i]["from"], child(ip, "from"));
        if (!seen.count(from)) fail(child(ip, "from"), "unknown generator '" + from + "'");
        const json& to = as_array(d[i]["to"], child(ip, "to"));
        for (std::size_t k = 0; k < to.size(); ++k) {
          auto [name, c] = term(field, to[k], child(child(ip, "to"), k));
          if (!seen.count(name)) fail(child(child(ip, "to"), k), "unknown generator '" + name + "'");
          b.term(from, name, c);
        }
      }
    }
    try {
      return b.build();
    } catch (const Error& e) {
      fail(path, e.what());
    }
  }

  std::size_t object(const DgCategory& c, const std::string& name, const std::string& path) const {
    auto o = c.find_object(name);
    if (!o) fail(path, "unknown object '" + name + "'");
    return *o;
  }

  // hom generator reference "a|b:name" within a category.
  std::tuple<std::size_t, std::size_t, std::size_t> hom_ref(const DgCategory& c, const std::string& s,
                                                            const std::string& path) const {
    Ref r = split_ref(s, path, true);
    const std::size_t a = object(c, r.a, path), b = object(c, r.b, path);
    auto g = c.hom(a, b).find(r.name);
    if (!g) fail(path, "unknown generator '" + r.name + "' in hom " + r.a + "|" + r.b);
    return {a, b, *g};
  }

  DgCategory category(const json& j, const std::string& path) const {
    check_keys(j, path, {"kind", "objects"}, {"hom", "comp", "units"});
    auto objects = string_list(j["objects"], child(path, "objects"));
    std::unique_ptr<DgCategory> cat;
    try {
      cat = std::make_unique<DgCategory>(field, grading, objects);
    } catch (const Error& e) {
      fail(child(path, "objects"), e.what());
    }
    DgCategory& c = *cat;
    if (j.contains("hom")) {
      const std::string hp = child(path, "hom");
      if (!j["hom"].is_object()) fail(hp, "expected an object");
      for (const auto& [k, v] : j["hom"].items()) {
        Ref r = split_ref(k, child(hp, k), false);
        c.set_hom(object(c, r.a, child(hp, k)), object(c, r.b, child(hp, k)), complex(v, child(hp, k), false));
      }
    }
    if (j.contains("comp")) {
      const std::string cp = child(path, "comp");
      const json& comp = as_array(j["comp"], cp);
      std::set<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t, std::size_t>> seen;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        const std::string ip = child(cp, i);
        check_keys(comp[i], ip, {"left", "right", "out"}, {});
        auto [a, b, f] = hom_ref(c, as_string(comp[i]["left"], child(ip, "left")), child(ip, "left"));
        auto [b2, cc, g] = hom_ref(c, as_string(comp[i]["right"], child(ip, "right")), child(ip, "right"));
        if (b != b2) fail(ip, "left and right are not composable");
        if (!seen.insert({a, b, cc, f, g}).second) fail(ip, "duplicate product");
        SparseVec out;
        const json& terms = as_array(comp[i]["out"], child(ip, "out"));
        for (std::size_t k = 0; k < terms.size(); ++k) {
          const std::string tp = child(child(ip, "out"), k);
          auto [name, coeff] = term(field, terms[k], tp);
          auto [x, y, h] = hom_ref(c, name, tp);
          if (x != a || y != cc) fail(tp, "product lands in the wrong hom");
          out.push_back({static_cast<std::uint32_t>(h), coeff});
        }
        c.set_product(a, b, cc, f, g, std::move(out));
      }
    }
    if (j.contains("units")) {
      const std::string up = child(path, "units");
      if (!j["units"].is_object()) fail(up, "expected an object");
      std::vector<SparseVec> units(c.object_count());
      std::vector<bool> given(c.object_count(), false);
      for (const auto& [k, v] : j["units"].items()) {
        const std::size_t a = object(c, k, child(up, k));
        given[a] = true;
        const json& terms = as_array(v, child(up, k));
        for (std::size_t i = 0; i < terms.size(); ++i) {
          const std::string tp = child(child(up, k), i);
          auto [name, coeff] = term(field, terms[i], tp);
          auto [x, y, g] = hom_ref(c, name, tp);
          if (x != a || y != a) fail(tp, "unit must lie in hom " + k + "|" + k);
          units[a].push_back({static_cast<std::uint32_t>(g), coeff});
        }
      }
      for (std::size_t a = 0; a < c.object_count(); ++a) {
        if (!given[a]) fail(up, "missing unit for object '" + c.object(a) + "'");
        c.set_unit(a, units[a]);
      }
    }
    return std::move(c);
  }

  BimoduleEntity bimodule(const json& j, const std::string& path, const std::map<std::string, Entity>& known) const {
    check_keys(j, path, {"kind", "left_cat", "right_cat"}, {"slots", "lact", "ract"});
    BimoduleEntity out;
    auto lookup = [&](const char* key) {
      const std::string& name = as_string(j[key], child(path, key));
      auto it = known.find(name);
      if (it == known.end()) throw Error(ErrorKind::NotFound, child(path, key) + ": no category named '" + name + "'");
      auto* p = std::get_if<CategoryPtr>(&it->second);
      if (!p) fail(child(path, key), "'" + name + "' is not a category");
      return std::make_pair(name, *p);
    };
    auto [ln, L] = lookup("left_cat");
    auto [rn, R] = lookup("right_cat");
    out.left_cat = ln;
    out.right_cat = rn;
    Bimodule m(L, R);
    auto slot_ref = [&](const std::string& s, const std::string& p) {
      Ref r = split_ref(s, p, true);
      const std::size_t a = object(*L, r.a, p), b = object(*R, r.b, p);
      auto v = m.slot(a, b).find(r.name);
      if (!v) fail(p, "unknown generator '" + r.name + "' in slot " + r.a + "|" + r.b);
      return std::make_tuple(a, b, *v);
    };
    if (j.contains("slots")) {
      const std::string sp = child(path, "slots");
      if (!j["slots"].is_object()) fail(sp, "expected an object");
      for (const auto& [k, v] : j["slots"].items()) {
        Ref r = split_ref(k, child(sp, k), false);
        m.set_slot(object(*L, r.a, child(sp, k)), object(*R, r.b, child(sp, k)), complex(v, child(sp, k), false));
      }
    }
    auto terms_of = [&](const json& t, const std::string& p, std::size_t a, std::size_t b) {
      SparseVec out;
      const json& arr = as_array(t, p);
      for (std::size_t k = 0; k < arr.size(); ++k) {
        auto [name, coeff] = term(field, arr[k], child(p, k));
        auto [x, y, w] = slot_ref(name, child(p, k));
        if (x != a || y != b) fail(child(p, k), "action lands in the wrong slot");
        out.push_back({static_cast<std::uint32_t>(w), coeff});
      }
      return out;
    };
    if (j.contains("lact")) {
      const std::string lp = child(path, "lact");
      const json& arr = as_array(j["lact"], lp);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ip = child(lp, i);
        check_keys(arr[i], ip, {"left", "right", "out"}, {});
        auto [a2, a, f] = hom_ref(*L, as_string(arr[i]["left"], child(ip, "left")), child(ip, "left"));
        auto [x, b, v] = slot_ref(as_string(arr[i]["right"], child(ip, "right")), child(ip, "right"));
        if (x != a) fail(ip, "morphism and slot element are not composable");
        m.set_lact(a2, a, b, f, v, terms_of(arr[i]["out"], child(ip, "out"), a2, b));
      }
    }
    if (j.contains("ract")) {
      const std::string rp = child(path, "ract");
      const json& arr = as_array(j["ract"], rp);
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string ip = child(rp, i);
        check_keys(arr[i], ip, {"left", "right", "out"}, {});
        auto [a, b, v] = slot_ref(as_string(arr[i]["left"], child(ip, "left")), child(ip, "left"));
        auto [y, b2, g] = hom_ref(*R, as_string(arr[i]["right"], child(ip, "right")), child(ip, "right"));
        if (y != b) fail(ip, "slot element and morphism are not composable");
        m.set_ract(a, b, b2, v, g, terms_of(arr[i]["out"], child(ip, "out"), a, b2));
      }
    }
    out.value = std::move(m);
    return out;
  }

  FiniteSimplicialSet sset(const json& j, const std::string& path) const {
    check_keys(j, path, {"kind", "levels"}, {"d", "s"});
    FiniteSimplicialSet x;
    const json& levels = as_array(j["levels"], child(path, "levels"));
    if (levels.empty()) fail(child(path, "levels"), "needs at least level 0");
    for (std::size_t n = 0; n < levels.size(); ++n) {
      x.levels.push_back(string_list(levels[n], child(child(path, "levels"), n)));
      std::set<std::string> uniq(x.levels.back().begin(), x.levels.back().end());
      if (uniq.size() != x.levels.back().size()) fail(child(child(path, "levels"), n), "duplicate simplex name");
    }
    x.depth = static_cast<int>(levels.size()) - 1;
    x.shape_maps();
    const std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
    for (auto& lvl : x.faces)
      for (auto& m : lvl) std::fill(m.begin(), m.end(), unset);
    for (auto& lvl : x.degeneracies)
      for (auto& m : lvl) std::fill(m.begin(), m.end(), unset);
    auto read_maps = [&](const char* key, bool face) {
      if (!j.contains(key)) return;
      const std::string mp = child(path, key);
      if (!j[key].is_object()) fail(mp, "expected an object");
      for (const auto& [k, v] : j[key].items()) {
        const std::string kp = child(mp, k);
        const auto colon = k.find(':');
        if (colon == std::string::npos) fail(kp, "expected 'level:index'");
        const int n = parse_int(k.substr(0, colon), kp), i = parse_int(k.substr(colon + 1), kp);
        const bool ok = face ? (n >= 1 && n <= x.depth) : (n >= 0 && n < x.depth);
        if (!ok || i < 0 || i > n) fail(kp, "no such map");
        auto& target = face ? x.faces[n][i] : x.degeneracies[n][i];
        const int to = face ? n - 1 : n + 1;
        if (!v.is_object()) fail(kp, "expected an object");
        for (const auto& [src, dst] : v.items()) {
          auto s = x.find(n, src);
          if (!s) fail(child(kp, src), "unknown simplex '" + src + "'");
          auto t = x.find(to, as_string(dst, child(kp, src)));
          if (!t) fail(child(kp, src), "unknown simplex '" + dst.get<std::string>() + "'");
          target[*s] = *t;
        }
      }
    };
    read_maps("d", true);
    read_maps("s", false);
    return x;
  }

  FiniteCategory fincat(const json& j, const std::string& path) const {
    check_keys(j, path, {"kind", "objects", "morphisms", "identities"}, {"comp"});
    auto objects = string_list(j["objects"], child(path, "objects"));
    std::set<std::string> uniq(objects.begin(), objects.end());
    if (uniq.size() != objects.size()) fail(child(path, "objects"), "duplicate object");
    FiniteCategory c(objects);
    const std::string mp = child(path, "morphisms");
    if (!j["morphisms"].is_object()) fail(mp, "expected an object");
    auto obj = [&](const json& v, const std::string& p) {
      auto o = c.find_object(as_string(v, p));
      if (!o) fail(p, "unknown object");
      return *o;
    };
    for (const auto& [k, v] : j["morphisms"].items()) {
      const std::string kp = child(mp, k);
      if (!v.is_array() || v.size() != 2) fail(kp, "expected [source, target]");
      c.add_morphism(k, obj(v[0], child(kp, 0)), obj(v[1], child(kp, 1)));
    }
    auto mor = [&](const json& v, const std::string& p) {
      auto m = c.find_morphism(as_string(v, p));
      if (!m) fail(p, "unknown morphism");
      return *m;
    };
    const std::string ip = child(path, "identities");
    if (!j["identities"].is_object()) fail(ip, "expected an object");
    for (const auto& [k, v] : j["identities"].items()) {
      auto o = c.find_object(k);
      if (!o) fail(child(ip, k), "unknown object");
      c.set_identity(*o, mor(v, child(ip, k)));
    }
    if (j.contains("comp")) {
      const std::string cp = child(path, "comp");
      const json& comp = as_array(j["comp"], cp);
      for (std::size_t i = 0; i < comp.size(); ++i) {
        const std::string p = child(cp, i);
        if (!comp[i].is_array() || comp[i].size() != 3) fail(p, "expected [f, g, fg]");
        c.set_composite(mor(comp[i][0], child(p, 0)), mor(comp[i][1], child(p, 1)), mor(comp[i][2], child(p, 2)));
      }
    }
    return c;
  }
};

json read_json(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1 + static_cast<std::size_t>(
                               std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(
                                                                           std::min(e.byte, text.size())),
                                          '\n'));
    throw Error(ErrorKind::Schema, where + ":" + std::to_string(line) + ": " + e.what());
  }
}

Workspace parse_impl(const std::string& text, const std::filesystem::path& file, std::vector<std::string>& stack) {
  const json root = read_json(text, file.empty() ? "<input>" : file.string());
  check_keys(root, "", {"format", "field", "grading", "entities"}, {"imports"});
  if (!root["format"].is_number_integer() || root["format"].get<long long>() != 1) fail("/format", "expected 1");
  if (!root["field"].is_number_integer() || root["field"].get<long long>() < 2 ||
      root["field"].get<long long>() >= (1ll << 31))
    fail("/field", "expected a prime");
  Workspace w;
  try {
    w.field = FieldSpec(static_cast<std::uint32_t>(root["field"].get<long long>()));
  } catch (const Error& e) {
    fail("/field", e.what());
  }
  const std::string& g = as_string(root["grading"], "/grading");
  if (g == "Z") w.grading = Grading::Z;
  else if (g == "Z2") w.grading = Grading::Z2;
  else fail("/grading", "expected \"Z\" or \"Z2\"");

  if (root.contains("imports")) {
    w.imports = string_list(root["imports"], "/imports");
    for (std::size_t i = 0; i < w.imports.size(); ++i) {
      const std::filesystem::path p = file.parent_path() / w.imports[i];
      const std::string key = std::filesystem::weakly_canonical(p).string();
      if (std::find(stack.begin(), stack.end(), key) != stack.end()) fail(child("/imports", i), "import cycle");
      std::ifstream in(p);
      if (!in) throw Error(ErrorKind::NotFound, child("/imports", i) + ": cannot open " + p.string());
      std::stringstream ss;
      ss << in.rdbuf();
      stack.push_back(key);
      Workspace sub = parse_impl(ss.str(), p, stack);
      stack.pop_back();
      if (!(sub.field == w.field) || sub.grading != w.grading)
        fail(child("/imports", i), "imported file uses a different field or grading");
      for (auto& [name, e] : sub.entities)
        if (!w.entities.emplace(name, std::move(e)).second) fail(child("/imports", i), "duplicate entity '" + name + "'");
    }
  }

  const json& ents = root["entities"];
  if (!ents.is_object()) fail("/entities", "expected an object");
  Parser parser{w.field, w.grading};
  // Bimodules refer to categories, so they are read last.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& [name, j] : ents.items()) {
      const std::string path = child("/entities", name);
      if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) fail(path, "missing kind");
      const std::string kind = j["kind"].get<std::string>();
      if ((kind == "bimodule") != (pass == 1)) continue;
      if (w.entities.count(name)) fail(path, "duplicate entity '" + name + "'");
      Entity e;
      if (kind == "complex") e = parser.complex(j, path, true);
      else if (kind == "category") e = std::make_shared<const DgCategory>(parser.category(j, path));
      else if (kind == "bimodule") e = parser.bimodule(j, path, w.entities);
      else if (kind == "sset") e = parser.sset(j, path);
      else if (kind == "fincat") e = parser.fincat(j, path);
      else fail(child(path, "kind"), "unknown kind '" + kind + "'");
      w.entities.emplace(name, std::move(e));
      w.local.push_back(name);
    }
  std::sort(w.local.begin(), w.local.end());
  return w;
}

}  // namespace

Workspace parse_workspace_text(const std::string& text, const std::filesystem::path& base) {
  std::vector<std::string> stack;
  return parse_impl(text, base, stack);
}

Workspace parse_workspace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::NotFound, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::vector<std::string> stack{std::filesystem::weakly_canonical(path).string()};
  return parse_impl(ss.str(), path, stack);
}

ValidationReport validate_workspace(const Workspace& w) {
  ValidationReport r;
  for (const auto& [name, e] : w.entities) {
    const std::string prefix = "/entities/" + name + ": ";
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ChainComplex>) r.merge(validate_complex(v), prefix);
          else if constexpr (std::is_same_v<T, CategoryPtr>) r.merge(validate_category(*v), prefix);
          else if constexpr (std::is_same_v<T, BimoduleEntity>) r.merge(validate_bimodule(v.value), prefix);
          else if constexpr (std::is_same_v<T, FiniteSimplicialSet>) r.merge(validate_sset(v), prefix);
          else r.merge(validate_fincat(v), prefix);
        },
        e);
  }
  return r;
}

Workspace load_workspace(const std::filesystem::path& path) {
  Workspace w = parse_workspace(path);
  auto r = validate_workspace(w);
  if (!r.passed()) throw Error(ErrorKind::ValidationFailed, r.failures.front());
  return w;
}

// --- canonical output ----------------------------------------------------------

json complex_to_json(const ChainComplex& c) {
  json basis = json::object();
  for (int n : c.degrees()) {
    json names = json::array();
    for (std::size_t g = c.offset(n); g < c.offset(n) + c.dim(n); ++g) names.push_back(c.name(g));
    basis[std::to_string(n)] = names;
  }
  json d = json::array();
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (c.boundary(g).empty()) continue;
    json to = json::array();
    for (const auto& e : c.boundary(g)) to.push_back(json::array({c.name(e.index), e.value}));
    d.push_back({{"from", c.name(g)}, {"to", to}});
  }
  return {{"basis", basis}, {"d", d}};
}

namespace {

std::string href(const DgCategory& c, std::size_t a, std::size_t b, std::size_t g) {
  return c.object(a) + "|" + c.object(b) + ":" + c.hom(a, b).name(g);
}

json terms_json(const SparseVec& v, const std::function<std::string(std::uint32_t)>& name) {
  json out = json::array();
  for (const auto& e : v) out.push_back(json::array({name(e.index), e.value}));
  return out;
}

json bimodule_to_json(const BimoduleEntity& be) {
  const Bimodule& m = be.value;
  const DgCategory &L = m.left(), &R = m.right();
  json slots = json::object(), lact = json::array(), ract = json::array();
  auto sref = [&](std::size_t a, std::size_t b, std::size_t v) {
    return L.object(a) + "|" + R.object(b) + ":" + m.slot(a, b).name(v);
  };
  for (std::size_t a = 0; a < L.object_count(); ++a)
    for (std::size_t b = 0; b < R.object_count(); ++b)
      if (m.slot(a, b).size()) slots[L.object(a) + "|" + R.object(b)] = complex_to_json(m.slot(a, b));
  for (std::size_t a2 = 0; a2 < L.object_count(); ++a2)
    for (std::size_t a = 0; a < L.object_count(); ++a)
      for (std::size_t b = 0; b < R.object_count(); ++b)
        for (std::size_t f = 0; f < L.hom(a2, a).size(); ++f)
          for (std::size_t v = 0; v < m.slot(a, b).size(); ++v) {
            const auto& out = m.lact(a2, a, b, f, v);
            if (out.empty()) continue;
            lact.push_back({{"left", href(L, a2, a, f)},
                            {"right", sref(a, b, v)},
                            {"out", terms_json(out, [&](std::uint32_t i) { return sref(a2, b, i); })}});
          }
  for (std::size_t a = 0; a < L.object_count(); ++a)
    for (std::size_t b = 0; b < R.object_count(); ++b)
      for (std::size_t b2 = 0; b2 < R.object_count(); ++b2)
        for (std::size_t v = 0; v < m.slot(a, b).size(); ++v)
          for (std::size_t g = 0; g < R.hom(b, b2).size(); ++g) {
            const auto& out = m.ract(a, b, b2, v, g);
            if (out.empty()) continue;
            ract.push_back({{"left", sref(a, b, v)},
                            {"right", href(R, b, b2, g)},
                            {"out", terms_json(out, [&](std::uint32_t i) { return sref(a, b2, i); })}});
          }
  return {{"kind", "bimodule"}, {"left_cat", be.left_cat}, {"right_cat", be.right_cat},
          {"slots", slots},     {"lact", lact},             {"ract", ract}};
}

json sset_to_json(const FiniteSimplicialSet& x) {
  json d = json::object(), s = json::object();
  for (int n = 1; n <= x.depth; ++n)
    for (int i = 0; i <= n; ++i) {
      json m = json::object();
      for (std::size_t k = 0; k < x.levels[n].size(); ++k) m[x.levels[n][k]] = x.levels[n - 1][x.faces[n][i][k]];
      d[std::to_string(n) + ":" + std::to_string(i)] = m;
    }
  for (int n = 0; n < x.depth; ++n)
    for (int i = 0; i <= n; ++i) {
      json m = json::object();
      for (std::size_t k = 0; k < x.levels[n].size(); ++k) m[x.levels[n][k]] = x.levels[n + 1][x.degeneracies[n][i][k]];
      s[std::to_string(n) + ":" + std::to_string(i)] = m;
    }
  return {{"kind", "sset"}, {"levels", x.levels}, {"d", d}, {"s", s}};
}

json fincat_to_json(const FiniteCategory& c) {
  json mors = json::object(), ids = json::object();
  for (std::size_t i = 0; i < c.morphism_count(); ++i) {
    const auto& m = c.morphism(i);
    mors[m.name] = json::array({c.object(m.source), c.object(m.target)});
  }
  for (std::uint32_t a = 0; a < c.object_count(); ++a)
    if (auto id = c.identity(a)) ids[c.object(a)] = c.morphism(*id).name;
  std::vector<std::array<std::string, 3>> comp;
  for (std::uint32_t f = 0; f < c.morphism_count(); ++f)
    for (std::uint32_t g = 0; g < c.morphism_count(); ++g)
      if (auto h = c.composite(f, g)) comp.push_back({c.morphism(f).name, c.morphism(g).name, c.morphism(*h).name});
  std::sort(comp.begin(), comp.end());
  json cj = json::array();
  for (const auto& t : comp) cj.push_back(json::array({t[0], t[1], t[2]}));
  return {{"kind", "fincat"}, {"objects", c.objects()}, {"morphisms", mors}, {"identities", ids}, {"comp", cj}};
}

}  // namespace

json category_to_json(const DgCategory& c) {
  json hom = json::object(), comp = json::array();
  const std::size_t n = c.object_count();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (c.hom(a, b).size()) hom[c.object(a) + "|" + c.object(b)] = complex_to_json(c.hom(a, b));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t x = 0; x < n; ++x)
        for (std::size_t f = 0; f < c.hom(a, b).size(); ++f)
          for (std::size_t g = 0; g < c.hom(b, x).size(); ++g) {
            const auto& out = c.product(a, b, x, f, g);
            if (out.empty()) continue;
            comp.push_back({{"left", href(c, a, b, f)},
                            {"right", href(c, b, x, g)},
                            {"out", terms_json(out, [&](std::uint32_t i) { return href(c, a, x, i); })}});
          }
  json j = {{"kind", "category"}, {"objects", c.objects()}, {"hom", hom}, {"comp", comp}};
  if (c.unital() && n > 0) {
    json units = json::object();
    for (std::size_t a = 0; a < n; ++a)
      units[c.object(a)] = terms_json(c.unit(a), [&](std::uint32_t i) { return href(c, a, a, i); });
    j["units"] = units;
  }
  return j;
}

json to_json(const Workspace& w) {
  json ents = json::object();
  for (const auto& name : w.local) {
    const Entity& e = w.entities.at(name);
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ChainComplex>) {
            json j = complex_to_json(v);
            j["kind"] = "complex";
            ents[name] = j;
          } else if constexpr (std::is_same_v<T, CategoryPtr>) {
            ents[name] = category_to_json(*v);
          } else if constexpr (std::is_same_v<T, BimoduleEntity>) {
            ents[name] = bimodule_to_json(v);
          } else if constexpr (std::is_same_v<T, FiniteSimplicialSet>) {
            ents[name] = sset_to_json(v);
          } else {
            ents[name] = fincat_to_json(v);
          }
        },
        e);
  }
  json j = {{"format", 1}, {"field", w.field.characteristic()}, {"grading", std::string(to_string(w.grading))},
            {"entities", ents}};
  if (!w.imports.empty()) j["imports"] = w.imports;
  return j;
}

std::string canonical_text(const Workspace& w) { return to_json(w).dump(2) + "\n"; }

}  // namespace dgc
