#include "dgc/segal.hpp"

#include <algorithm>
#include <functional>

namespace dgc {

FiniteCategory::FiniteCategory(std::vector<std::string> objects)
    : objects_(std::move(objects)), identities_(objects_.size()) {}

std::optional<std::uint32_t> FiniteCategory::find_object(const std::string& name) const {
  for (std::uint32_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> FiniteCategory::find_morphism(const std::string& name) const {
  for (std::uint32_t i = 0; i < morphisms_.size(); ++i)
    if (morphisms_[i].name == name) return i;
  return std::nullopt;
}

std::uint32_t FiniteCategory::add_morphism(std::string name, std::uint32_t source, std::uint32_t target) {
  if (source >= objects_.size() || target >= objects_.size())
    throw Error(ErrorKind::InvalidArgument, "morphism '" + name + "' has an unknown endpoint");
  if (find_morphism(name)) throw Error(ErrorKind::InvalidArgument, "duplicate morphism '" + name + "'");
  morphisms_.push_back({std::move(name), source, target});
  return static_cast<std::uint32_t>(morphisms_.size() - 1);
}

void FiniteCategory::set_identity(std::uint32_t object, std::uint32_t morphism) {
  identities_.at(object) = morphism;
}

void FiniteCategory::set_composite(std::uint32_t f, std::uint32_t g, std::uint32_t h) { comp_[{f, g}] = h; }

std::optional<std::uint32_t> FiniteCategory::composite(std::uint32_t f, std::uint32_t g) const {
  auto it = comp_.find({f, g});
  if (it == comp_.end()) return std::nullopt;
  return it->second;
}

ValidationReport validate_fincat(const FiniteCategory& c) {
  ValidationReport r;
  const auto nm = static_cast<std::uint32_t>(c.morphism_count());
  for (std::uint32_t a = 0; a < c.object_count(); ++a) {
    auto id = c.identity(a);
    if (!id) {
      r.fail("object " + c.object(a) + " has no identity");
      continue;
    }
    const auto& m = c.morphism(*id);
    if (m.source != a || m.target != a) r.fail("identity of " + c.object(a) + " is not an endomorphism of it");
  }
  if (!r.passed()) return r;
  for (std::uint32_t f = 0; f < nm; ++f)
    for (std::uint32_t g = 0; g < nm; ++g) {
      const auto &mf = c.morphism(f), &mg = c.morphism(g);
      auto h = c.composite(f, g);
      if (mf.target != mg.source) {
        if (h) r.fail("composite of non-composable " + mf.name + ", " + mg.name);
        continue;
      }
      if (!h) {
        r.fail("missing composite of " + mf.name + ", " + mg.name);
        continue;
      }
      const auto& mh = c.morphism(*h);
      if (mh.source != mf.source || mh.target != mg.target)
        r.fail("composite of " + mf.name + ", " + mg.name + " has wrong endpoints");
    }
  if (!r.passed()) return r;
  for (std::uint32_t f = 0; f < nm; ++f) {
    const auto& m = c.morphism(f);
    if (*c.composite(*c.identity(m.source), f) != f || *c.composite(f, *c.identity(m.target)) != f)
      r.fail("unit law fails for " + m.name);
  }
  for (std::uint32_t f = 0; f < nm; ++f)
    for (std::uint32_t g = 0; g < nm; ++g) {
      if (c.morphism(f).target != c.morphism(g).source) continue;
      const auto fg = *c.composite(f, g);
      for (std::uint32_t h = 0; h < nm; ++h) {
        if (c.morphism(g).target != c.morphism(h).source) continue;
        if (*c.composite(fg, h) != *c.composite(f, *c.composite(g, h)))
          r.fail("associativity fails for " + c.morphism(f).name + ", " + c.morphism(g).name + ", " +
                 c.morphism(h).name);
      }
    }
  return r;
}

void FiniteSimplicialSet::shape_maps() {
  faces.assign(static_cast<std::size_t>(depth) + 1, {});
  degeneracies.assign(static_cast<std::size_t>(depth), {});
  for (int n = 1; n <= depth; ++n)
    faces[n].assign(static_cast<std::size_t>(n) + 1, std::vector<std::uint32_t>(levels[n].size(), 0));
  for (int n = 0; n < depth; ++n)
    degeneracies[n].assign(static_cast<std::size_t>(n) + 1, std::vector<std::uint32_t>(levels[n].size(), 0));
}

std::optional<std::uint32_t> FiniteSimplicialSet::find(int level, const std::string& name) const {
  const auto& l = levels.at(static_cast<std::size_t>(level));
  for (std::uint32_t i = 0; i < l.size(); ++i)
    if (l[i] == name) return i;
  return std::nullopt;
}

namespace {

ValidationReport check_shape(const FiniteSimplicialSet& x) {
  ValidationReport r;
  if (x.depth < 0 || x.levels.size() != static_cast<std::size_t>(x.depth) + 1) {
    r.fail("levels do not match depth " + std::to_string(x.depth));
    return r;
  }
  if (x.faces.size() != x.levels.size() || x.degeneracies.size() != static_cast<std::size_t>(x.depth)) {
    r.fail("face or degeneracy maps missing");
    return r;
  }
  for (int n = 1; n <= x.depth; ++n) {
    if (x.faces[n].size() != static_cast<std::size_t>(n) + 1) {
      r.fail("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " face maps");
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      const auto& f = x.faces[n][i];
      if (f.size() != x.levels[n].size()) r.fail("d_" + std::to_string(i) + " on level " + std::to_string(n) + " is not total");
      for (auto t : f)
        if (t >= x.levels[n - 1].size()) r.fail("d_" + std::to_string(i) + " on level " + std::to_string(n) + " leaves the set");
    }
  }
  for (int n = 0; n < x.depth; ++n) {
    if (x.degeneracies[n].size() != static_cast<std::size_t>(n) + 1) {
      r.fail("level " + std::to_string(n) + " needs " + std::to_string(n + 1) + " degeneracy maps");
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      const auto& s = x.degeneracies[n][i];
      if (s.size() != x.levels[n].size()) r.fail("s_" + std::to_string(i) + " on level " + std::to_string(n) + " is not total");
      for (auto t : s)
        if (t >= x.levels[n + 1].size()) r.fail("s_" + std::to_string(i) + " on level " + std::to_string(n) + " leaves the set");
    }
  }
  return r;
}

}  // namespace

ValidationReport validate_sset(const FiniteSimplicialSet& x) {
  ValidationReport r = check_shape(x);
  if (!r.passed()) return r;
  auto d = [&](int n, int i, std::uint32_t s) { return x.faces[n][i][s]; };
  auto sg = [&](int n, int i, std::uint32_t s) { return x.degeneracies[n][i][s]; };
  auto I = [](int i) { return std::to_string(i); };
  auto where = [&](int n, std::uint32_t s) { return " on " + I(n) + "-simplex " + x.levels[n][s]; };

  for (int n = 0; n <= x.depth; ++n)
    for (std::uint32_t s = 0; s < x.levels[n].size(); ++s) {
      // d_i d_j = d_{j-1} d_i, i < j
      if (n >= 2)
        for (int j = 1; j <= n; ++j)
          for (int i = 0; i < j; ++i)
            if (d(n - 1, i, d(n, j, s)) != d(n - 1, j - 1, d(n, i, s)))
              r.fail("d_" + I(i) + " d_" + I(j) + " = d_" + I(j - 1) + " d_" + I(i) + where(n, s));
      if (n + 1 <= x.depth)
        for (int j = 0; j <= n; ++j) {
          const auto t = sg(n, j, s);
          for (int i = 0; i <= n + 1; ++i) {
            const auto lhs = d(n + 1, i, t);
            if (i == j || i == j + 1) {
              if (lhs != s) r.fail("d_" + I(i) + " s_" + I(j) + " = id" + where(n, s));
            } else if (i < j) {
              if (lhs != sg(n - 1, j - 1, d(n, i, s)))
                r.fail("d_" + I(i) + " s_" + I(j) + " = s_" + I(j - 1) + " d_" + I(i) + where(n, s));
            } else if (lhs != sg(n - 1, j, d(n, i - 1, s))) {
              r.fail("d_" + I(i) + " s_" + I(j) + " = s_" + I(j) + " d_" + I(i - 1) + where(n, s));
            }
          }
        }
      // s_i s_j = s_{j+1} s_i, i <= j
      if (n + 2 <= x.depth)
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i <= j; ++i)
            if (sg(n + 1, i, sg(n, j, s)) != sg(n + 1, j + 1, sg(n, i, s)))
              r.fail("s_" + I(i) + " s_" + I(j) + " = s_" + I(j + 1) + " s_" + I(i) + where(n, s));
    }
  return r;
}

FiniteSimplicialSet nerve(const FiniteCategory& c, int depth) {
  FiniteSimplicialSet x;
  x.depth = depth;
  const auto nm = static_cast<std::uint32_t>(c.morphism_count());
  std::vector<std::vector<std::vector<std::uint32_t>>> chains(static_cast<std::size_t>(depth) + 1);
  std::vector<std::map<std::vector<std::uint32_t>, std::uint32_t>> index(chains.size());
  for (std::uint32_t a = 0; a < c.object_count(); ++a) chains[0].push_back({a});
  if (depth >= 1)
    for (std::uint32_t f = 0; f < nm; ++f) chains[1].push_back({f});
  for (int n = 2; n <= depth; ++n)
    for (const auto& ch : chains[n - 1])
      for (std::uint32_t f = 0; f < nm; ++f)
        if (c.morphism(ch.back()).target == c.morphism(f).source) {
          auto next = ch;
          next.push_back(f);
          chains[n].push_back(std::move(next));
        }
  x.levels.resize(chains.size());
  for (std::size_t n = 0; n < chains.size(); ++n) {
    for (std::uint32_t k = 0; k < chains[n].size(); ++k) {
      index[n].emplace(chains[n][k], k);
      std::string name;
      for (std::size_t p = 0; p < chains[n][k].size(); ++p) {
        if (p) name += ",";
        name += n == 0 ? c.object(chains[n][k][p]) : c.morphism(chains[n][k][p]).name;
      }
      x.levels[n].push_back(std::move(name));
    }
  }
  x.shape_maps();
  for (int n = 1; n <= depth; ++n)
    for (std::uint32_t k = 0; k < chains[n].size(); ++k) {
      const auto& ch = chains[n][k];
      for (int i = 0; i <= n; ++i) {
        std::vector<std::uint32_t> out;
        if (n == 1) {
          out = {i == 0 ? c.morphism(ch[0]).target : c.morphism(ch[0]).source};
        } else if (i == 0) {
          out.assign(ch.begin() + 1, ch.end());
        } else if (i == n) {
          out.assign(ch.begin(), ch.end() - 1);
        } else {
          out = ch;
          out[i - 1] = *c.composite(ch[i - 1], ch[i]);
          out.erase(out.begin() + i);
        }
        x.faces[n][i][k] = index[n - 1].at(out);
      }
    }
  for (int n = 0; n < depth; ++n)
    for (std::uint32_t k = 0; k < chains[n].size(); ++k) {
      const auto& ch = chains[n][k];
      for (int i = 0; i <= n; ++i) {
        std::vector<std::uint32_t> out;
        if (n == 0) {
          out = {*c.identity(ch[0])};
        } else {
          // vertex i of the chain
          const std::uint32_t v = i == 0 ? c.morphism(ch[0]).source : c.morphism(ch[i - 1]).target;
          out = ch;
          out.insert(out.begin() + i, *c.identity(v));
        }
        x.degeneracies[n][i][k] = index[n + 1].at(out);
      }
    }
  return x;
}

std::string_view to_string(SegalVerdict::Status s) {
  switch (s) {
    case SegalVerdict::Status::Pass: return "pass";
    case SegalVerdict::Status::Fail: return "fail";
    case SegalVerdict::Status::InvalidInput: return "invalid-input";
  }
  return "?";
}

SegalVerdict segal_check(const FiniteSimplicialSet& x, int m, int n) {
  SegalVerdict v;
  v.m = m;
  v.n = n;
  if (m < 0 || n < 0) throw Error(ErrorKind::InvalidArgument, "segal_check needs m, n >= 0");
  if (m + n > x.depth)
    throw Error(ErrorKind::DepthExceeded, "m + n = " + std::to_string(m + n) + " exceeds depth " + std::to_string(x.depth));
  auto report = validate_sset(x);
  if (!report.passed()) {
    v.status = SegalVerdict::Status::InvalidInput;
    v.witness = report.failures.front();
    return v;
  }
  // Repeated last faces drop trailing vertices; repeated d_0 drops leading ones.
  auto drop_back = [&](int level, std::uint32_t s, int k) {
    for (int i = 0; i < k; ++i, --level) s = x.faces[level][level][s];
    return s;
  };
  auto drop_front = [&](int level, std::uint32_t s, int k) {
    for (int i = 0; i < k; ++i, --level) s = x.faces[level][0][s];
    return s;
  };
  const int top = m + n;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> image;
  for (std::uint32_t s = 0; s < x.levels[top].size(); ++s) {
    std::pair<std::uint32_t, std::uint32_t> key{drop_back(top, s, n), drop_front(top, s, m)};
    auto [it, fresh] = image.emplace(key, s);
    if (!fresh && v.status == SegalVerdict::Status::Pass) {
      v.status = SegalVerdict::Status::Fail;
      v.witness = "simplices " + x.levels[top][it->second] + " and " + x.levels[top][s] + " both map to (" +
                  x.levels[m][key.first] + ", " + x.levels[n][key.second] + ")";
    }
  }
  for (std::uint32_t y = 0; y < x.levels[m].size(); ++y)
    for (std::uint32_t z = 0; z < x.levels[n].size(); ++z) {
      if (drop_front(m, y, m) != drop_back(n, z, n)) continue;
      if (image.count({y, z})) continue;
      v.status = SegalVerdict::Status::Fail;
      v.witness = "pair (" + x.levels[m][y] + ", " + x.levels[n][z] + ") is not hit";
      return v;
    }
  return v;
}

}  // namespace dgc
