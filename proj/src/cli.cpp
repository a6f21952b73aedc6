#include "dgc/cli.hpp"

#include <chrono>
#include <functional>
#include <thread>

#include <CLI11.hpp>

#include "dgc/bar.hpp"
#include "dgc/workspace.hpp"

namespace dgc {

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Schema: return 3;
    case ErrorKind::NotFound: return 4;
    case ErrorKind::TruncationTooSmall: return 2;
    default: return 1;
  }
}

struct TruncOptions {
  int truncation = 0;
  std::optional<int> min_degree;
  std::optional<int> max_degree;
  bool allow_unverified = false;
  bool normalized = false;
  unsigned threads = 1;
};

void add_trunc_options(CLI::App* cmd, TruncOptions& o) {
  cmd->add_option("--trunc", o.truncation, "maximal bar length J")->required();
  cmd->add_option("--min-degree", o.min_degree, "lowest total degree to report");
  cmd->add_option("--max-degree", o.max_degree, "highest total degree to report");
  cmd->add_flag("--allow-unverified", o.allow_unverified, "report degrees beyond the safe bound");
  cmd->add_flag("--normalized", o.normalized, "use the normalized bar complex");
  cmd->add_option("--threads", o.threads, "worker threads for rank computations");
}

using LazyFactory = std::function<std::unique_ptr<LazyComplex>(int)>;

int truncated_report(std::ostream& out, std::ostream& err, Grading grading, std::optional<int> bound,
                     const std::vector<std::pair<std::string, LazyFactory>>& items, const TruncOptions& o) {
  if (grading == Grading::Z) {
    if (!o.allow_unverified) {
      if (!bound) {
        err << "error: no finite safe degree bound (hom complexes reach degree -1); rerun with --allow-unverified\n";
        return 2;
      }
      if (o.max_degree && *o.max_degree > *bound) {
        err << "error: degree " << *o.max_degree << " exceeds the safe bound " << *bound << " for truncation "
            << o.truncation << "; raise --trunc or pass --allow-unverified\n";
        return 2;
      }
    }
    for (const auto& [label, make] : items) {
      if (!label.empty()) out << label << "\n";
      auto c = make(o.truncation);
      const auto degrees = c->degrees();
      if (degrees.empty() && !o.min_degree) continue;
      const int lo = o.min_degree.value_or(degrees.empty() ? 0 : degrees.front());
      int hi = o.max_degree.value_or(degrees.empty() ? lo : degrees.back());
      if (!o.max_degree && bound) hi = std::min(hi, *bound);
      if (hi < lo) continue;
      for (auto [t, b] : lazy_betti(*c, lo, hi, o.threads))
        out << "t " << t << " betti " << b << " " << (bound && t <= *bound ? "safe" : "unverified") << "\n";
    }
    return 0;
  }
  bool unverified = false;
  for (const auto& [label, make] : items) {
    if (!label.empty()) out << label << "\n";
    auto now = lazy_betti(*make(o.truncation), 0, 1, o.threads);
    auto next = lazy_betti(*make(o.truncation + 1), 0, 1, o.threads);
    for (auto [t, b] : now) {
      const bool stable = next[t] == b;
      unverified = unverified || !stable;
      out << "t " << t << " betti " << b << " " << (stable ? "heuristic" : "unverified") << "\n";
    }
  }
  if (unverified && !o.allow_unverified) {
    err << "error: Betti numbers changed between truncations " << o.truncation << " and " << o.truncation + 1
        << "; raise --trunc or pass --allow-unverified\n";
    return 2;
  }
  return 0;
}

void homology_lines(std::ostream& out, const ChainComplex& c, const char* marker = nullptr) {
  for (auto [n, b] : homology(c)) {
    out << "t " << n << " betti " << b;
    if (marker) out << " " << marker;
    out << "\n";
  }
}

int cmd_validate(const std::string& file, std::ostream& out) {
  Workspace w = parse_workspace(file);
  bool ok = true;
  for (const auto& [name, e] : w.entities) {
    Workspace one;
    ValidationReport r;
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, ChainComplex>) r = validate_complex(v);
          else if constexpr (std::is_same_v<T, CategoryPtr>) r = validate_category(*v);
          else if constexpr (std::is_same_v<T, BimoduleEntity>) r = validate_bimodule(v.value);
          else if constexpr (std::is_same_v<T, FiniteSimplicialSet>) r = validate_sset(v);
          else r = validate_fincat(v);
        },
        e);
    out << name << " " << kind_name(e) << " " << (r.passed() ? "pass" : "fail") << "\n";
    for (const auto& f : r.failures) out << "  " << f << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 1;
}

int cmd_homology(const std::string& file, const std::string& entity, std::ostream& out) {
  Workspace w = load_workspace(file);
  const Entity& e = w.get(entity);
  if (auto* c = std::get_if<ChainComplex>(&e)) {
    homology_lines(out, *c);
  } else if (auto* cat = std::get_if<CategoryPtr>(&e)) {
    const DgCategory& a = **cat;
    for (std::size_t x = 0; x < a.object_count(); ++x)
      for (std::size_t y = 0; y < a.object_count(); ++y)
        if (a.hom(x, y).size()) {
          out << "hom " << a.object(x) << "|" << a.object(y) << "\n";
          homology_lines(out, a.hom(x, y));
        }
  } else if (auto* be = std::get_if<BimoduleEntity>(&e)) {
    const Bimodule& m = be->value;
    for (std::size_t x = 0; x < m.left().object_count(); ++x)
      for (std::size_t y = 0; y < m.right().object_count(); ++y)
        if (m.slot(x, y).size()) {
          out << "slot " << m.left().object(x) << "|" << m.right().object(y) << "\n";
          homology_lines(out, m.slot(x, y));
        }
  } else {
    throw Error(ErrorKind::InvalidArgument, "entity '" + entity + "' has no homology (kind " +
                                                std::string(kind_name(e)) + ")");
  }
  return 0;
}

int cmd_compose(const std::string& file, const std::string& left, const std::string& right, const TruncOptions& o,
                std::ostream& out, std::ostream& err) {
  Workspace w = load_workspace(file);
  auto v1 = std::make_shared<const Bimodule>(w.get_as<BimoduleEntity>(left).value);
  auto v2 = std::make_shared<const Bimodule>(w.get_as<BimoduleEntity>(right).value);
  check_composable(*v1, *v2, o.truncation);
  std::vector<std::pair<std::string, LazyFactory>> items;
  for (std::size_t a = 0; a < v1->left().object_count(); ++a)
    for (std::size_t c = 0; c < v2->right().object_count(); ++c)
      items.emplace_back("slot " + v1->left().object(a) + "|" + v2->right().object(c), [=, &o](int J) {
        return std::unique_ptr<LazyComplex>(compose_slot(v1, v2, a, c, J, o.normalized));
      });
  return truncated_report(out, err, v1->grading(), safe_degree_bound(*v1, *v2, o.truncation), items, o);
}

int cmd_hochschild(const std::string& file, const std::string& cat, bool via_adj, const TruncOptions& o,
                   std::ostream& out, std::ostream& err) {
  Workspace w = load_workspace(file);
  CategoryPtr a = w.get_as<CategoryPtr>(cat);
  require_unital(*a, ErrorKind::NonUnital, "hochschild");
  if (o.truncation < 1) throw Error(ErrorKind::TruncationTooSmall, "truncation must be at least 1");
  std::vector<std::pair<std::string, LazyFactory>> items;
  std::optional<int> bound;
  if (via_adj) {
    const Bimodule d = diagonal(a);
    auto v1 = std::make_shared<const Bimodule>(adj(d));
    auto v2 = std::make_shared<const Bimodule>(adj_op(d));
    bound = safe_degree_bound(*v1, *v2, o.truncation);
    items.emplace_back("", [=, &o](int J) {
      return std::unique_ptr<LazyComplex>(compose_slot(v1, v2, 0, 0, J, o.normalized));
    });
  } else {
    bound = hochschild_safe_bound(*a, o.truncation);
    items.emplace_back("", [=, &o](int J) { return std::unique_ptr<LazyComplex>(hochschild_complex(a, J, o.normalized)); });
  }
  return truncated_report(out, err, a->grading(), bound, items, o);
}

int cmd_construct(const std::string& op, const std::string& file, const std::vector<std::string>& args,
                  const std::string& name, std::ostream& out) {
  Workspace w = parse_workspace(file);
  auto r = validate_workspace(w);
  const std::size_t want = op == "oppose" ? 1 : 2;
  if (args.size() != want)
    throw Error(ErrorKind::InvalidArgument, op + " takes " + std::to_string(want) + " entity name(s)");
  for (const auto& a : args) w.get(a);
  for (const auto& f : r.failures)
    for (const auto& a : args)
      if (f.rfind("/entities/" + a + ":", 0) == 0) throw Error(ErrorKind::ValidationFailed, f);

  Workspace result;
  result.field = w.field;
  result.grading = w.grading;
  const Entity& first = w.get(args[0]);
  if (op == "oppose") {
    result.entities.emplace(name, std::make_shared<const DgCategory>(opposite(*w.get_as<CategoryPtr>(args[0]))));
  } else if (std::holds_alternative<ChainComplex>(first) && op == "tensor") {
    result.entities.emplace(name, tensor_cx(std::get<ChainComplex>(first), w.get_as<ChainComplex>(args[1])));
  } else {
    const DgCategory &a = *w.get_as<CategoryPtr>(args[0]), &b = *w.get_as<CategoryPtr>(args[1]);
    result.entities.emplace(name, std::make_shared<const DgCategory>(op == "tensor" ? tensor_cat(a, b) : sum_cat(a, b)));
  }
  result.local = {name};
  out << canonical_text(result);
  return 0;
}

int cmd_nat(const std::string& file, const std::string& left, const std::string& right, std::ostream& out) {
  Workspace w = load_workspace(file);
  ChainComplex n = nat_complex(w.get_as<BimoduleEntity>(left).value, w.get_as<BimoduleEntity>(right).value);
  out << "natural transformations (strict)\n";
  homology_lines(out, n, "strict");
  return 0;
}

int cmd_segal(const std::string& file, const std::string& name, int depth, std::ostream& out) {
  Workspace w = parse_workspace(file);
  const Entity& e = w.get(name);
  FiniteSimplicialSet x;
  if (auto* s = std::get_if<FiniteSimplicialSet>(&e)) {
    x = *s;
  } else if (auto* c = std::get_if<FiniteCategory>(&e)) {
    auto r = validate_fincat(*c);
    if (!r.passed()) throw Error(ErrorKind::ValidationFailed, "/entities/" + name + ": " + r.failures.front());
    x = nerve(*c, depth);
  } else {
    throw Error(ErrorKind::InvalidArgument, "entity '" + name + "' is neither an sset nor a fincat");
  }
  if (depth > x.depth)
    throw Error(ErrorKind::DepthExceeded,
                "'" + name + "' is stored up to level " + std::to_string(x.depth) + ", requested depth " + std::to_string(depth));
  out << "segal condition, strict/discrete variant, depth " << depth << "\n";
  bool ok = true;
  for (int total = 2; total <= depth; ++total)
    for (int m = 1; m < total; ++m) {
      SegalVerdict v = segal_check(x, m, total - m);
      out << "m " << v.m << " n " << v.n << " " << to_string(v.status);
      if (!v.witness.empty()) out << " " << v.witness;
      out << "\n";
      ok = ok && v.status == SegalVerdict::Status::Pass;
    }
  return ok ? 0 : 1;
}

int cmd_bench(std::size_t size, double density, std::uint64_t seed, std::ostream& out) {
  SparseMatrix m = random_matrix(FieldSpec(2), size, size, density, seed);
  const auto start = std::chrono::steady_clock::now();
  const std::size_t r = rank(m, RankMethod::Dense);
  const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out << "bench-rank size " << size << " density " << density << " seed " << seed << " rank " << r << " time_ms "
      << static_cast<long long>(ms + 0.5) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite dg-categories, bimodules, bar complexes and Segal checks", "dgcalc"};
  app.require_subcommand(1);

  std::string file, entity, left, right, cat, name = "result";
  std::vector<std::string> cargs;
  bool via_adj = false;
  int depth = 0;
  std::size_t size = 0;
  double density = 0;
  std::uint64_t seed = 0;
  TruncOptions topts;
  topts.threads = std::max(1u, std::thread::hardware_concurrency());

  auto* validate = app.add_subcommand("validate", "run every validator on a workspace");
  validate->add_option("file", file)->required();
  auto* homology = app.add_subcommand("homology", "Betti numbers of an entity");
  homology->add_option("file", file)->required();
  homology->add_option("--entity", entity)->required();
  auto* compose = app.add_subcommand("compose", "Betti numbers of a truncated bimodule composition");
  compose->add_option("file", file)->required();
  compose->add_option("--left", left)->required();
  compose->add_option("--right", right)->required();
  add_trunc_options(compose, topts);
  auto* hh = app.add_subcommand("hochschild", "Hochschild homology of a category");
  hh->add_option("file", file)->required();
  hh->add_option("--cat", cat)->required();
  hh->add_flag("--via-adj", via_adj, "compute as a derived tensor product over A^op (x) A");
  add_trunc_options(hh, topts);
  std::vector<CLI::App*> constructs;
  for (const char* op : {"tensor", "sum", "oppose"}) {
    auto* c = app.add_subcommand(op, std::string(op) + " of workspace entities, printed as a workspace");
    c->add_option("file", file)->required();
    c->add_option("--args", cargs)->required();
    c->add_option("--name", name, "name of the result entity");
    constructs.push_back(c);
  }
  auto* nat = app.add_subcommand("nat", "complex of strict natural transformations");
  nat->add_option("file", file)->required();
  nat->add_option("--left", left)->required();
  nat->add_option("--right", right)->required();
  auto* segal = app.add_subcommand("segal", "strict Segal condition table");
  segal->add_option("file", file)->required();
  segal->add_option("--sset", entity, "simplicial set, or finite category to take the nerve of")->required();
  segal->add_option("--depth", depth)->required()->check(CLI::NonNegativeNumber);
  auto* bench = app.add_subcommand("bench-rank", "rank of a random square GF(2) matrix");
  bench->add_option("--size", size)->required();
  bench->add_option("--density", density)->required()->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", seed)->required();
  auto* canon = app.add_subcommand("canon", "print the canonical form of a workspace");
  canon->add_option("file", file)->required();
  canon->group("");

  std::vector<const char*> argv{"dgcalc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (validate->parsed()) return cmd_validate(file, out);
    if (homology->parsed()) return cmd_homology(file, entity, out);
    if (compose->parsed()) return cmd_compose(file, left, right, topts, out, err);
    if (hh->parsed()) return cmd_hochschild(file, cat, via_adj, topts, out, err);
    for (auto* c : constructs)
      if (c->parsed()) return cmd_construct(c->get_name(), file, cargs, name, out);
    if (nat->parsed()) return cmd_nat(file, left, right, out);
    if (segal->parsed()) return cmd_segal(file, entity, depth, out);
    if (bench->parsed()) return cmd_bench(size, density, seed, out);
    if (canon->parsed()) {
      out << canonical_text(parse_workspace(file));
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace dgc
