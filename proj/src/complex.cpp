#include "dgc/complex.hpp"

#include <algorithm>
#include <numeric>

namespace dgc {

std::string_view to_string(Grading g) { return g == Grading::Z ? "Z" : "Z2"; }

void check_compatible(const FieldSpec& fa, Grading ga, const FieldSpec& fb, Grading gb, const char* what) {
  if (!(fa == fb))
    throw Error(ErrorKind::FieldMismatch, std::string(what) + ": GF(" + std::to_string(fa.characteristic()) +
                                              ") vs GF(" + std::to_string(fb.characteristic()) + ")");
  if (ga != gb) throw Error(ErrorKind::GradingMismatch, what);
}

ChainComplex::ChainComplex(FieldSpec field, Grading grading) : field_(field), grading_(grading), d_(field, 0, 0) {}

int ChainComplex::normalize_degree(int n) const {
  if (grading_ == Grading::Z) return n;
  return ((n % 2) + 2) % 2;
}

ChainComplex::ChainComplex(FieldSpec field, Grading grading, std::vector<Generator> gens, SparseMatrix d)
    : field_(field), grading_(grading) {
  if (d.rows() != gens.size() || d.cols() != gens.size())
    throw Error(ErrorKind::DimensionMismatch, "differential shape does not match generator count");
  if (!(d.field() == field)) throw Error(ErrorKind::FieldMismatch, "differential field");
  for (auto& g : gens) g.degree = normalize_degree(g.degree);

  std::vector<std::size_t> order(gens.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gens[a].degree < gens[b].degree; });
  std::vector<std::uint32_t> where(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) where[order[i]] = static_cast<std::uint32_t>(i);

  gens_.reserve(gens.size());
  for (auto i : order) gens_.push_back(std::move(gens[i]));
  d_ = SparseMatrix(field, gens_.size(), gens_.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    SparseVec col = d.column(order[i]);
    for (auto& e : col) {
      e.index = where[e.index];
      if (gens_[e.index].degree != lower(gens_[i].degree))
        throw Error(ErrorKind::InvalidComplex, "differential of " + gens_[i].name + " hits " + gens_[e.index].name +
                                                   " which is not one degree lower");
    }
    d_.set_column(i, std::move(col));
  }
  index_names();
}

void ChainComplex::index_names() {
  by_name_.clear();
  by_name_.reserve(gens_.size());
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!by_name_.emplace(gens_[i].name, i).second)
      throw Error(ErrorKind::InvalidArgument, "duplicate generator name '" + gens_[i].name + "'");
}

std::optional<std::size_t> ChainComplex::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::vector<int> ChainComplex::degrees() const {
  std::vector<int> out;
  for (const auto& g : gens_)
    if (out.empty() || out.back() != g.degree) out.push_back(g.degree);
  return out;
}

std::size_t ChainComplex::offset(int n) const {
  n = normalize_degree(n);
  return static_cast<std::size_t>(
      std::lower_bound(gens_.begin(), gens_.end(), n, [](const Generator& g, int k) { return g.degree < k; }) -
      gens_.begin());
}

std::size_t ChainComplex::dim(int n) const {
  n = normalize_degree(n);
  auto lo = std::lower_bound(gens_.begin(), gens_.end(), n, [](const Generator& g, int k) { return g.degree < k; });
  auto hi = std::upper_bound(gens_.begin(), gens_.end(), n, [](int k, const Generator& g) { return k < g.degree; });
  return static_cast<std::size_t>(hi - lo);
}

int ChainComplex::min_degree() const { return gens_.front().degree; }
int ChainComplex::max_degree() const { return gens_.back().degree; }

SparseMatrix ChainComplex::block(int n) const {
  n = normalize_degree(n);
  const int m = lower(n);
  const std::size_t src = offset(n), nsrc = dim(n);
  const std::size_t dst = offset(m), ndst = dim(m);
  SparseMatrix b(field_, ndst, nsrc);
  for (std::size_t i = 0; i < nsrc; ++i) {
    SparseVec col = d_.column(src + i);
    for (auto& e : col) e.index -= static_cast<std::uint32_t>(dst);
    b.set_column(i, std::move(col));
  }
  return b;
}

ChainComplex::Builder& ChainComplex::Builder::generator(int degree, std::string name) {
  if (!index_.emplace(name, gens_.size()).second)
    throw Error(ErrorKind::InvalidArgument, "duplicate generator name '" + name + "'");
  gens_.push_back({degree, std::move(name)});
  return *this;
}

ChainComplex::Builder& ChainComplex::Builder::term(const std::string& from, const std::string& to, Scalar coeff) {
  auto f = index_.find(from), t = index_.find(to);
  if (f == index_.end()) throw Error(ErrorKind::NotFound, "generator '" + from + "'");
  if (t == index_.end()) throw Error(ErrorKind::NotFound, "generator '" + to + "'");
  terms_.emplace_back(f->second, t->second, coeff);
  return *this;
}

ChainComplex ChainComplex::Builder::build() const {
  SparseMatrix d(field_, gens_.size(), gens_.size());
  std::vector<SparseVec> cols(gens_.size());
  for (auto [f, t, c] : terms_) cols[f].push_back({static_cast<std::uint32_t>(t), c % field_.characteristic()});
  for (std::size_t i = 0; i < cols.size(); ++i) d.set_column(i, std::move(cols[i]));
  return ChainComplex(field_, grading_, gens_, std::move(d));
}

ValidationReport validate_complex(const ChainComplex& c) {
  ValidationReport report;
  const auto& d = c.differential();
  std::map<int, std::size_t> first_witness;
  for (std::size_t g = 0; g < c.size(); ++g) {
    if (!d.apply(d.column(g)).empty()) first_witness.emplace(c.degree(g), g);
  }
  for (auto [deg, g] : first_witness)
    report.fail("d^2 != 0 at degree " + std::to_string(deg) + " (witness: d(d(" + c.name(g) + "))" + " != 0)");
  return report;
}

std::size_t betti(const ChainComplex& c, int n) {
  n = c.normalize_degree(n);
  const std::size_t dn = c.dim(n);
  if (dn == 0) return 0;
  const std::size_t out_rank = rank(c.block(n));
  // d_{n+1} : C_{n+1} -> C_n
  const int up = c.grading() == Grading::Z ? n + 1 : 1 - n;
  const std::size_t in_rank = c.dim(up) ? rank(c.block(up)) : 0;
  return dn - out_rank - in_rank;
}

std::map<int, std::size_t> homology(const ChainComplex& c) {
  auto report = validate_complex(c);
  if (!report.passed()) throw Error(ErrorKind::InvalidComplex, report.failures.front());
  std::map<int, std::size_t> out;
  for (int n : c.degrees()) out[n] = betti(c, n);
  return out;
}

ChainComplex unit_complex(FieldSpec field, Grading grading) {
  return ChainComplex::Builder(field, grading).generator(0, "1").build();
}

ChainComplex zero_complex(FieldSpec field, Grading grading) { return ChainComplex(field, grading); }

TensorIndex::TensorIndex(const ChainComplex& a, const ChainComplex& b) : nb_(b.size()), index_(a.size() * b.size()) {
  // Mirrors the ordering used by tensor_cx: stable sort of lexicographic pairs by degree.
  std::vector<std::pair<int, std::uint32_t>> keyed;
  keyed.reserve(index_.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < b.size(); ++y)
      keyed.emplace_back(a.normalize_degree(a.degree(x) + b.degree(y)), static_cast<std::uint32_t>(x * nb_ + y));
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  for (std::size_t i = 0; i < keyed.size(); ++i) index_[keyed[i].second] = static_cast<std::uint32_t>(i);
}

ChainComplex tensor_cx(const ChainComplex& a, const ChainComplex& b) {
  check_compatible(a.field(), a.grading(), b.field(), b.grading(), "tensor_cx");
  const FieldSpec& f = a.field();
  const std::size_t na = a.size(), nb = b.size();
  std::vector<ChainComplex::Generator> gens;
  gens.reserve(na * nb);
  SparseMatrix d(f, na * nb, na * nb);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      gens.push_back({a.degree(x) + b.degree(y), a.name(x) + "*" + b.name(y)});
      SparseVec col;
      for (const auto& e : a.boundary(x)) col.push_back({static_cast<std::uint32_t>(e.index * nb + y), e.value});
      const Scalar s = f.sign(a.degree(x));
      for (const auto& e : b.boundary(y))
        col.push_back({static_cast<std::uint32_t>(x * nb + e.index), f.mul(s, e.value)});
      d.set_column(x * nb + y, std::move(col));
    }
  return ChainComplex(f, a.grading(), std::move(gens), std::move(d));
}

ChainComplex hom_cx(const ChainComplex& a, const ChainComplex& b) {
  check_compatible(a.field(), a.grading(), b.field(), b.grading(), "hom_cx");
  const FieldSpec& f = a.field();
  const std::size_t na = a.size(), nb = b.size();
  // Transposed differential of a: for each x, the generators whose boundary contains x.
  std::vector<SparseVec> coboundary(na);
  for (std::size_t z = 0; z < na; ++z)
    for (const auto& e : a.boundary(z)) coboundary[e.index].push_back({static_cast<std::uint32_t>(z), e.value});

  std::vector<ChainComplex::Generator> gens;
  gens.reserve(na * nb);
  SparseMatrix d(f, na * nb, na * nb);
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      const int n = b.degree(y) - a.degree(x);
      gens.push_back({n, "[" + a.name(x) + ">" + b.name(y) + "]"});
      SparseVec col;
      // (f o d_a)(z) = f(d z): picks up z with x in d z.
      for (const auto& e : coboundary[x]) col.push_back({static_cast<std::uint32_t>(e.index * nb + y), e.value});
      // (-1)^(n+1) d_b o f
      const Scalar s = f.sign(n + 1);
      for (const auto& e : b.boundary(y))
        col.push_back({static_cast<std::uint32_t>(x * nb + e.index), f.mul(s, e.value)});
      d.set_column(x * nb + y, std::move(col));
    }
  return ChainComplex(f, a.grading(), std::move(gens), std::move(d));
}

ChainComplex reduce_mod2(const ChainComplex& c) {
  if (c.grading() == Grading::Z2) return c;
  return ChainComplex(c.field(), Grading::Z2, c.generators(), c.differential());
}

}  // namespace dgc
