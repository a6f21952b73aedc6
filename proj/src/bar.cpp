#include "dgc/bar.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <set>
#include <thread>

namespace dgc {

// --- lazy complexes ----------------------------------------------------------

std::size_t lazy_rank(const LazyComplex& c, int t) {
  const int below = c.lower(t);
  const std::uint64_t ncols = c.count(t), nrows = c.count(below);
  if (!ncols || !nrows) return 0;
  KeyVec col;
  if (ncols * nrows <= (std::uint64_t{1} << 24)) {
    std::unordered_map<std::uint64_t, std::uint32_t> row;
    row.reserve(nrows);
    c.for_each(below, [&](std::uint64_t k) { row.emplace(k, static_cast<std::uint32_t>(row.size())); });
    SparseMatrix m(c.field(), nrows, ncols);
    std::size_t j = 0;
    c.for_each(t, [&](std::uint64_t k) {
      c.boundary(k, col);
      SparseVec v;
      v.reserve(col.size());
      for (const auto& e : col) v.push_back({row.at(e.key), e.value});
      m.set_column(j++, std::move(v));
    });
    return rank(m);
  }
  ColumnReducer reducer(c.field());
  c.for_each(t, [&](std::uint64_t k) {
    c.boundary(k, col);
    if (!col.empty()) reducer.add(std::move(col));
    col.clear();
  });
  return reducer.rank();
}

std::map<int, std::size_t> lazy_betti(const LazyComplex& c, int lo, int hi, unsigned threads) {
  std::set<int> wanted;
  std::vector<int> targets;
  for (int t = lo; t <= hi; ++t) {
    const int n = c.grading() == Grading::Z ? t : ((t % 2) + 2) % 2;
    targets.push_back(n);
    wanted.insert(n);
    wanted.insert(c.upper(n));
  }
  std::vector<int> work(wanted.begin(), wanted.end());
  std::vector<std::size_t> ranks(work.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < work.size();) ranks[i] = lazy_rank(c, work[i]);
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(work.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  auto rank_of = [&](int n) {
    return ranks[static_cast<std::size_t>(std::lower_bound(work.begin(), work.end(), n) - work.begin())];
  };
  std::map<int, std::size_t> out;
  for (int t = lo; t <= hi; ++t) {
    const int n = targets[static_cast<std::size_t>(t - lo)];
    out[t] = c.count(n) - rank_of(n) - rank_of(c.upper(n));
  }
  return out;
}

namespace {

struct Materialized {
  ChainComplex complex;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
};

Materialized materialize_indexed(const LazyComplex& c) {
  std::vector<ChainComplex::Generator> gens;
  std::vector<std::uint64_t> keys;
  std::unordered_map<std::uint64_t, std::uint32_t> index;
  for (int t : c.degrees())
    c.for_each(t, [&](std::uint64_t k) {
      index.emplace(k, static_cast<std::uint32_t>(keys.size()));
      keys.push_back(k);
      gens.push_back({t, c.name(k)});
    });
  if (keys.size() > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorKind::InvalidArgument, "complex too large to materialize");
  SparseMatrix d(c.field(), keys.size(), keys.size());
  KeyVec col;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    c.boundary(keys[i], col);
    SparseVec v;
    for (const auto& e : col) v.push_back({index.at(e.key), e.value});
    d.set_column(i, std::move(v));
  }
  return {ChainComplex(c.field(), c.grading(), std::move(gens), std::move(d)), std::move(index)};
}

}  // namespace

ChainComplex materialize(const LazyComplex& c) { return materialize_indexed(c).complex; }

// --- word complexes ----------------------------------------------------------

void WordComplex::add_block(int j, std::vector<std::uint32_t> objects, std::vector<const ChainComplex*> factors) {
  Block b;
  b.j = j;
  b.objects = std::move(objects);
  b.factors = std::move(factors);
  b.radix.assign(b.factors.size(), 1);
  std::uint64_t size = 1;
  for (std::size_t p = b.factors.size(); p-- > 0;) {
    const std::uint64_t d = b.factors[p]->size();
    if (!d) return;
    b.radix[p] = size;
    if (size > std::numeric_limits<std::uint64_t>::max() / d) throw Error(ErrorKind::InvalidArgument, "bar complex too large");
    size *= d;
  }
  b.size = size;
  b.offset = blocks_.empty() ? 0 : blocks_.back().offset + blocks_.back().size;
  if (b.offset > std::numeric_limits<std::uint64_t>::max() - size) throw Error(ErrorKind::InvalidArgument, "bar complex too large");
  blocks_.push_back(std::move(b));
}

void WordComplex::finish() {
  std::uint32_t max_object = 0;
  for (const auto& b : blocks_)
    for (auto o : b.objects) max_object = std::max(max_object, o);
  object_base_ = std::uint64_t{max_object} + 1;
  by_code_.clear();
  counts_.clear();
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    by_code_.emplace(code(blocks_[i].j, blocks_[i].objects), i);
    for (auto [n, k] : block_counts(blocks_[i])) counts_[norm(n + blocks_[i].j)] += k;
  }
}

std::uint64_t WordComplex::code(int j, const std::vector<std::uint32_t>& objects) const {
  std::uint64_t c = static_cast<std::uint64_t>(j);
  for (auto o : objects) c = c * object_base_ + o;
  return c;
}

std::optional<std::size_t> WordComplex::find_block(int j, const std::vector<std::uint32_t>& objects) const {
  for (auto o : objects)
    if (o >= object_base_) return std::nullopt;
  auto it = by_code_.find(code(j, objects));
  if (it == by_code_.end() || blocks_[it->second].j != j || blocks_[it->second].objects != objects) return std::nullopt;
  return it->second;
}

std::size_t WordComplex::block_of(std::uint64_t key) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), key,
                             [](std::uint64_t k, const Block& b) { return k < b.offset; });
  return static_cast<std::size_t>(it - blocks_.begin()) - 1;
}

void WordComplex::decode(std::uint64_t key, std::size_t& block, std::vector<std::uint32_t>& gens) const {
  block = block_of(key);
  const Block& b = blocks_[block];
  std::uint64_t local = key - b.offset;
  gens.resize(b.factors.size());
  for (std::size_t p = 0; p < gens.size(); ++p) {
    gens[p] = static_cast<std::uint32_t>(local / b.radix[p]);
    local %= b.radix[p];
  }
}

std::uint64_t WordComplex::encode(std::size_t block, const std::vector<std::uint32_t>& gens) const {
  const Block& b = blocks_[block];
  std::uint64_t k = b.offset;
  for (std::size_t p = 0; p < gens.size(); ++p) k += gens[p] * b.radix[p];
  return k;
}

int WordComplex::internal_degree(std::size_t block, const std::vector<std::uint32_t>& gens) const {
  const Block& b = blocks_[block];
  int n = 0;
  for (std::size_t p = 0; p < gens.size(); ++p) n += b.factors[p]->degree(gens[p]);
  return norm(n);
}

std::map<int, std::uint64_t> WordComplex::block_counts(const Block& b) const {
  std::map<int, std::uint64_t> acc{{0, 1}};
  for (const auto* f : b.factors) {
    std::map<int, std::uint64_t> next;
    for (int d : f->degrees())
      for (auto [n, k] : acc) next[norm(n + d)] += k * f->dim(d);
    acc.swap(next);
  }
  return acc;
}

std::vector<int> WordComplex::degrees() const {
  std::vector<int> out;
  for (auto [t, k] : counts_)
    if (k) out.push_back(t);
  return out;
}

std::uint64_t WordComplex::count(int t) const {
  auto it = counts_.find(norm(t));
  return it == counts_.end() ? 0 : it->second;
}

void WordComplex::enumerate(const Block& b, int target, bool internal,
                            const std::function<void(std::uint64_t)>& fn) const {
  const int want = internal ? norm(target) : norm(target - b.j);
  const std::size_t m = b.factors.size();
  std::vector<std::vector<int>> degs(m);
  std::vector<int> suffix_min(m + 1, 0), suffix_max(m + 1, 0);
  for (std::size_t p = 0; p < m; ++p) degs[p] = b.factors[p]->degrees();
  for (std::size_t p = m; p-- > 0;) {
    suffix_min[p] = suffix_min[p + 1] + degs[p].front();
    suffix_max[p] = suffix_max[p + 1] + degs[p].back();
  }
  std::vector<int> chosen(m);
  std::vector<std::uint32_t> lo(m), hi(m), idx(m);

  auto emit_product = [&] {
    for (std::size_t p = 0; p < m; ++p) {
      lo[p] = static_cast<std::uint32_t>(b.factors[p]->offset(chosen[p]));
      hi[p] = lo[p] + static_cast<std::uint32_t>(b.factors[p]->dim(chosen[p]));
      idx[p] = lo[p];
    }
    while (true) {
      std::uint64_t k = b.offset;
      for (std::size_t p = 0; p < m; ++p) k += idx[p] * b.radix[p];
      fn(k);
      std::size_t p = m;
      while (p-- > 0) {
        if (++idx[p] < hi[p]) break;
        idx[p] = lo[p];
      }
      if (p == static_cast<std::size_t>(-1)) return;
    }
  };

  std::function<void(std::size_t, int)> rec = [&](std::size_t p, int sum) {
    if (p == m) {
      if (norm(sum) == want) emit_product();
      return;
    }
    for (int d : degs[p]) {
      if (grading_ == Grading::Z) {
        const int rest = want - sum - d;
        if (rest < suffix_min[p + 1] || rest > suffix_max[p + 1]) continue;
      }
      chosen[p] = d;
      rec(p + 1, sum + d);
    }
  };
  rec(0, 0);
}

void WordComplex::for_each(int t, const std::function<void(std::uint64_t)>& fn) const {
  for (const auto& b : blocks_) enumerate(b, t, false, fn);
}

void WordComplex::for_each_bidegree(int j, int n, const std::function<void(std::uint64_t)>& fn) const {
  for (const auto& b : blocks_)
    if (b.j == j) enumerate(b, n, true, fn);
}

int WordComplex::degree(std::uint64_t key) const {
  std::size_t b;
  std::vector<std::uint32_t> gens;
  decode(key, b, gens);
  return norm(internal_degree(b, gens) + blocks_[b].j);
}

std::string WordComplex::name(std::uint64_t key) const {
  std::size_t bi;
  std::vector<std::uint32_t> gens;
  decode(key, bi, gens);
  const Block& b = blocks_[bi];
  std::string s = "(";
  for (std::size_t i = 0; i < b.objects.size(); ++i) s += (i ? "," : "") + std::to_string(b.objects[i]);
  s += ")";
  for (std::size_t p = 0; p < gens.size(); ++p) s += (p ? "*" : "") + b.factors[p]->name(gens[p]);
  return s;
}

void WordComplex::horizontal(std::uint64_t key, KeyVec& out) const {
  out.clear();
  std::size_t bi;
  std::vector<std::uint32_t> gens;
  decode(key, bi, gens);
  faces(blocks_[bi], gens, [&](std::size_t block, const std::vector<std::uint32_t>& g, Scalar c) {
    out.push_back({encode(block, g), c});
  });
  normalize(field_, out);
}

void WordComplex::vertical(std::uint64_t key, KeyVec& out) const {
  out.clear();
  std::size_t bi;
  std::vector<std::uint32_t> gens;
  decode(key, bi, gens);
  const Block& b = blocks_[bi];
  long before = b.j;  // the (-1)^j of the total differential
  for (std::size_t p = 0; p < gens.size(); ++p) {
    const Scalar s = field_.sign(before);
    const std::uint32_t g = gens[p];
    for (const auto& e : b.factors[p]->boundary(g)) {
      out.push_back({key - g * b.radix[p] + e.index * b.radix[p], field_.mul(s, e.value)});
    }
    before += b.factors[p]->degree(g);
  }
  normalize(field_, out);
}

void WordComplex::boundary(std::uint64_t key, KeyVec& out) const {
  KeyVec v;
  horizontal(key, out);
  vertical(key, v);
  out.insert(out.end(), v.begin(), v.end());
  normalize(field_, out);
}

namespace {

SparseMatrix bidegree_matrix(const WordComplex& w, int j, int n, int tj, int tn, bool horizontal) {
  std::unordered_map<std::uint64_t, std::uint32_t> row;
  if (tj >= 0) w.for_each_bidegree(tj, tn, [&](std::uint64_t k) { row.emplace(k, static_cast<std::uint32_t>(row.size())); });
  std::vector<std::uint64_t> cols;
  w.for_each_bidegree(j, n, [&](std::uint64_t k) { cols.push_back(k); });
  SparseMatrix m(w.field(), row.size(), cols.size());
  KeyVec out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (horizontal) w.horizontal(cols[i], out);
    else w.vertical(cols[i], out);
    SparseVec v;
    for (const auto& e : out) {
      auto it = row.find(e.key);
      if (it == row.end()) throw Error(ErrorKind::InvalidComplex, "differential leaves the expected bidegree");
      v.push_back({it->second, e.value});
    }
    m.set_column(i, std::move(v));
  }
  return m;
}

}  // namespace

SparseMatrix WordComplex::horizontal_block(int j, int n) const { return bidegree_matrix(*this, j, n, j - 1, n, true); }

SparseMatrix WordComplex::vertical_block(int j, int n) const {
  return bidegree_matrix(*this, j, n, j, norm(grading_ == Grading::Z ? n - 1 : n + 1), false);
}

// --- bar complexes -----------------------------------------------------------

MiddleHoms::MiddleHoms(const DgCategory& cat, bool normalized)
    : n_(cat.object_count()), normalized_(normalized) {
  if (normalized) {
    auto units = cat.unit_generators();
    if (!units) throw Error(ErrorKind::InvalidArgument, "normalized bar needs units that are single generators");
    for (auto u : *units) units_.push_back(static_cast<std::uint32_t>(u));
  }
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      const ChainComplex& h = cat.hom(a, b);
      if (!normalized || a != b) {
        homs_.push_back(h);
        continue;
      }
      std::vector<ChainComplex::Generator> gens;
      for (std::uint32_t i = 0; i < h.size(); ++i)
        if (i != units_[a]) gens.push_back(h.generators()[i]);
      SparseMatrix d(h.field(), gens.size(), gens.size());
      for (std::uint32_t i = 0; i < h.size(); ++i) {
        if (i == units_[a]) continue;
        SparseVec col;
        for (const auto& e : h.boundary(i)) {
          auto r = reduced(a, a, e.index);
          if (r >= 0) col.push_back({static_cast<std::uint32_t>(r), e.value});
        }
        d.set_column(static_cast<std::size_t>(reduced(a, a, i)), std::move(col));
      }
      homs_.push_back(ChainComplex(h.field(), h.grading(), std::move(gens), std::move(d)));
    }
}

BarComplex::BarComplex(std::shared_ptr<const Bimodule> v1, std::shared_ptr<const Bimodule> v2,
                       std::shared_ptr<const MiddleHoms> middle, std::size_t a, std::size_t c, int truncation)
    : WordComplex(v1->field(), v1->grading(), truncation),
      v1_(std::move(v1)),
      v2_(std::move(v2)),
      middle_(std::move(middle)),
      a_(a),
      c_(c) {
  const std::uint32_t nb = static_cast<std::uint32_t>(v1_->right().object_count());
  for (int j = 0; j <= truncation; ++j) {
    std::vector<std::uint32_t> objs;
    std::vector<const ChainComplex*> factors;
    std::function<void()> rec = [&] {
      const std::size_t depth = objs.size();
      if (depth == static_cast<std::size_t>(j) + 1) {
        const ChainComplex& last = v2_->slot(objs.back(), c_);
        if (!last.size()) return;
        factors.push_back(&last);
        add_block(j, objs, factors);
        factors.pop_back();
        return;
      }
      for (std::uint32_t o = 0; o < nb; ++o) {
        const ChainComplex& f = depth == 0 ? v1_->slot(a_, o) : middle_->hom(objs.back(), o);
        if (!f.size()) continue;
        objs.push_back(o);
        factors.push_back(&f);
        rec();
        factors.pop_back();
        objs.pop_back();
      }
    };
    rec();
  }
  finish();
}

void BarComplex::faces(const Block& b, const std::vector<std::uint32_t>& g,
                       const std::function<void(std::size_t, const std::vector<std::uint32_t>&, Scalar)>& emit) const {
  const int j = b.j;
  if (j == 0) return;
  const auto& o = b.objects;
  const DgCategory& B = v1_->right();
  std::vector<std::uint32_t> objs(o.begin() + 1, o.end()), gens;
  // d_0: right action on the first factor.
  if (auto blk = find_block(j - 1, objs)) {
    for (const auto& e : v1_->ract(a_, o[0], o[1], g[0], middle_->original(o[0], o[1], g[1]))) {
      gens.assign(g.begin() + 1, g.end());
      gens[0] = e.index;
      emit(*blk, gens, e.value);
    }
  }
  for (int i = 1; i < j; ++i) {
    objs.assign(o.begin(), o.end());
    objs.erase(objs.begin() + i);
    auto blk = find_block(j - 1, objs);
    if (!blk) continue;
    const Scalar s = field_.sign(i);
    const auto &x = o[i - 1], &y = o[i], &z = o[i + 1];
    for (const auto& e : B.product(x, y, z, middle_->original(x, y, g[i]), middle_->original(y, z, g[i + 1]))) {
      const auto r = middle_->reduced(x, z, e.index);
      if (r < 0) continue;
      gens.assign(g.begin(), g.end());
      gens.erase(gens.begin() + i);
      gens[i] = static_cast<std::uint32_t>(r);
      emit(*blk, gens, field_.mul(s, e.value));
    }
  }
  // d_j: left action on the last factor.
  objs.assign(o.begin(), o.end() - 1);
  if (auto blk = find_block(j - 1, objs)) {
    const Scalar s = field_.sign(j);
    for (const auto& e : v2_->lact(o[j - 1], o[j], c_, middle_->original(o[j - 1], o[j], g[j]), g[j + 1])) {
      gens.assign(g.begin(), g.end() - 1);
      gens[j] = e.index;
      emit(*blk, gens, field_.mul(s, e.value));
    }
  }
}

CyclicBar::CyclicBar(CategoryPtr a, std::shared_ptr<const MiddleHoms> middle, int truncation)
    : WordComplex(a->field(), a->grading(), truncation), cat_(std::move(a)), middle_(std::move(middle)) {
  const std::uint32_t n = static_cast<std::uint32_t>(cat_->object_count());
  for (int j = 0; j <= truncation; ++j) {
    std::vector<std::uint32_t> objs;
    std::vector<const ChainComplex*> factors;
    std::function<void()> rec = [&] {
      const std::size_t depth = objs.size();
      if (depth == static_cast<std::size_t>(j) + 1) {
        const ChainComplex& last = j == 0 ? cat_->hom(objs[0], objs[0]) : middle_->hom(objs.back(), objs[0]);
        if (!last.size()) return;
        factors.push_back(&last);
        add_block(j, objs, factors);
        factors.pop_back();
        return;
      }
      for (std::uint32_t o = 0; o < n; ++o) {
        if (depth > 0) {
          const ChainComplex& f = depth == 1 ? cat_->hom(objs.back(), o) : middle_->hom(objs.back(), o);
          if (!f.size()) continue;
          factors.push_back(&f);
        }
        objs.push_back(o);
        rec();
        objs.pop_back();
        if (depth > 0) factors.pop_back();
      }
    };
    rec();
  }
  finish();
}

void CyclicBar::faces(const Block& b, const std::vector<std::uint32_t>& g,
                      const std::function<void(std::size_t, const std::vector<std::uint32_t>&, Scalar)>& emit) const {
  const int j = b.j;
  if (j == 0) return;
  const auto& o = b.objects;
  const DgCategory& A = *cat_;
  auto next = [j](int i) { return static_cast<std::size_t>((i + 1) % (j + 1)); };
  // Position 0 holds a full hom; the others are middle homs.
  auto orig = [&](int i) {
    return i == 0 ? g[0] : middle_->original(o[static_cast<std::size_t>(i)], o[next(i)], g[static_cast<std::size_t>(i)]);
  };
  std::vector<std::uint32_t> objs, gens;
  for (int i = 0; i < j; ++i) {
    objs.assign(o.begin(), o.end());
    objs.erase(objs.begin() + i + 1);
    auto blk = find_block(j - 1, objs);
    if (!blk) continue;
    const Scalar s = field_.sign(i);
    const auto x = o[static_cast<std::size_t>(i)], y = o[static_cast<std::size_t>(i) + 1], z = o[next(i + 1)];
    for (const auto& e : A.product(x, y, z, orig(i), orig(i + 1))) {
      std::int64_t r = e.index;
      if (i > 0) r = middle_->reduced(x, z, e.index);
      if (r < 0) continue;
      gens.assign(g.begin(), g.end());
      gens.erase(gens.begin() + i);
      gens[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(r);
      emit(*blk, gens, field_.mul(s, e.value));
    }
  }
  // Wrap-around: (h_j h_0) * h_1 * ... * h_{j-1}.
  objs.assign(o.begin(), o.end() - 1);
  objs[0] = o[static_cast<std::size_t>(j)];
  auto blk = find_block(j - 1, objs);
  if (!blk) return;
  long rest = 0;
  for (int i = 0; i < j; ++i) rest += b.factors[static_cast<std::size_t>(i)]->degree(g[static_cast<std::size_t>(i)]);
  const long last = b.factors[static_cast<std::size_t>(j)]->degree(g[static_cast<std::size_t>(j)]);
  const Scalar s = field_.mul(field_.sign(j), field_.sign(last * rest));
  for (const auto& e : A.product(o[static_cast<std::size_t>(j)], o[0], o[1], orig(j), g[0])) {
    gens.assign(g.begin(), g.end() - 1);
    gens[0] = e.index;
    emit(*blk, gens, field_.mul(s, e.value));
  }
}

// --- compose and Hochschild --------------------------------------------------

void check_composable(const Bimodule& v1, const Bimodule& v2, int truncation) {
  check_compatible(v1.field(), v1.grading(), v2.field(), v2.grading(), "compose");
  if (!same_category(v1.right_ptr(), v2.left_ptr()))
    throw Error(ErrorKind::CategoryMismatch, "compose: middle categories differ");
  if (truncation < 1) throw Error(ErrorKind::TruncationTooSmall, "truncation must be at least 1");
  if (!v1.right().unital()) throw Error(ErrorKind::NonUnitalMiddle, "compose: middle category has no units");
}

std::unique_ptr<BarComplex> compose_slot(std::shared_ptr<const Bimodule> v1, std::shared_ptr<const Bimodule> v2,
                                         std::size_t a, std::size_t c, int truncation, bool normalized) {
  check_composable(*v1, *v2, truncation);
  auto middle = std::make_shared<const MiddleHoms>(v1->right(), normalized);
  return std::make_unique<BarComplex>(std::move(v1), std::move(v2), std::move(middle), a, c, truncation);
}

Bimodule compose(const Bimodule& v1_in, const Bimodule& v2_in, int truncation, bool normalized) {
  check_composable(v1_in, v2_in, truncation);
  auto v1 = std::make_shared<const Bimodule>(v1_in);
  auto v2 = std::make_shared<const Bimodule>(v2_in);
  auto middle = std::make_shared<const MiddleHoms>(v1->right(), normalized);
  const FieldSpec& fld = v1->field();
  const DgCategory &A = v1->left(), &C = v2->right();
  const std::size_t na = A.object_count(), nc = C.object_count();

  std::vector<std::unique_ptr<BarComplex>> bars;
  std::vector<Materialized> slots;
  Bimodule out(v1->left_ptr(), v2->right_ptr());
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c) {
      bars.push_back(std::make_unique<BarComplex>(v1, v2, middle, a, c, truncation));
      slots.push_back(materialize_indexed(*bars.back()));
      out.set_slot(a, c, slots.back().complex);
    }

  std::vector<std::uint32_t> gens;
  std::size_t bi;
  // f . (v * ... ) = (-1)^(|f| j) (f v) * ...
  for (std::size_t a2 = 0; a2 < na; ++a2)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t c = 0; c < nc; ++c) {
        const auto& hf = A.hom(a2, a);
        const BarComplex &src = *bars[a * nc + c], &dst = *bars[a2 * nc + c];
        const Materialized& target = slots[a2 * nc + c];
        for (const auto& [key, idx] : slots[a * nc + c].index) {
          src.decode(key, bi, gens);
          const auto& blk = src.blocks()[bi];
          auto tb = dst.find_block(blk.j, blk.objects);
          const std::uint32_t v = gens[0];
          for (std::size_t f = 0; f < hf.size(); ++f) {
            SparseVec res;
            const Scalar s = fld.sign(static_cast<long>(hf.degree(f)) * blk.j);
            for (const auto& e : v1->lact(a2, a, blk.objects[0], f, v)) {
              gens[0] = e.index;
              res.push_back({target.index.at(dst.encode(*tb, gens)), fld.mul(s, e.value)});
            }
            gens[0] = v;
            if (!res.empty()) out.set_lact(a2, a, c, f, idx, std::move(res));
          }
        }
      }
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t c = 0; c < nc; ++c)
      for (std::size_t c2 = 0; c2 < nc; ++c2) {
        const auto& hg = C.hom(c, c2);
        const BarComplex &src = *bars[a * nc + c], &dst = *bars[a * nc + c2];
        const Materialized& target = slots[a * nc + c2];
        for (const auto& [key, idx] : slots[a * nc + c].index) {
          src.decode(key, bi, gens);
          const auto& blk = src.blocks()[bi];
          auto tb = dst.find_block(blk.j, blk.objects);
          const std::uint32_t w = gens.back();
          for (std::size_t g = 0; g < hg.size(); ++g) {
            SparseVec res;
            for (const auto& e : v2->ract(blk.objects.back(), c, c2, w, g)) {
              gens.back() = e.index;
              res.push_back({target.index.at(dst.encode(*tb, gens)), e.value});
            }
            gens.back() = w;
            if (!res.empty()) out.set_ract(a, c, c2, idx, g, std::move(res));
          }
        }
      }
  return out;
}

std::optional<int> safe_degree_bound(const Bimodule& v1, const Bimodule& v2, int truncation) {
  if (v1.grading() == Grading::Z2) return std::nullopt;
  const auto b = v1.right().min_degree();
  const auto m1 = v1.min_degree(), m2 = v2.min_degree();
  if (!b || !m1 || !m2) return std::numeric_limits<int>::max();
  if (*b + 1 <= 0) return std::nullopt;
  return 2 * std::min(*m1, *m2) + (truncation + 1) * (*b + 1) - 2;
}

std::optional<int> hochschild_safe_bound(const DgCategory& a, int truncation) {
  if (a.grading() == Grading::Z2) return std::nullopt;
  const auto m = a.min_degree();
  if (!m) return std::numeric_limits<int>::max();
  if (*m + 1 <= 0) return std::nullopt;
  return (truncation + 2) * *m + truncation - 1;
}

std::unique_ptr<CyclicBar> hochschild_complex(CategoryPtr a, int truncation, bool normalized) {
  require_unital(*a, ErrorKind::NonUnital, "hochschild");
  if (truncation < 1) throw Error(ErrorKind::TruncationTooSmall, "truncation must be at least 1");
  auto middle = std::make_shared<const MiddleHoms>(*a, normalized);
  return std::make_unique<CyclicBar>(std::move(a), std::move(middle), truncation);
}

ChainComplex hochschild_direct(CategoryPtr a, int truncation, bool normalized) {
  return materialize(*hochschild_complex(std::move(a), truncation, normalized));
}

std::unique_ptr<BarComplex> hochschild_adj_complex(CategoryPtr a, int truncation, bool normalized) {
  require_unital(*a, ErrorKind::NonUnital, "hochschild");
  const Bimodule d = diagonal(a);
  auto v1 = std::make_shared<const Bimodule>(adj(d));
  auto v2 = std::make_shared<const Bimodule>(adj_op(d));
  return compose_slot(std::move(v1), std::move(v2), 0, 0, truncation, normalized);
}

ChainComplex hochschild_via_adj(CategoryPtr a, int truncation, bool normalized) {
  return materialize(*hochschild_adj_complex(std::move(a), truncation, normalized));
}

QuasiIsoReport quasi_iso_report(const ChainComplex& c1, const ChainComplex& c2, int lo, int hi) {
  check_compatible(c1.field(), c1.grading(), c2.field(), c2.grading(), "quasi_iso_report");
  QuasiIsoReport r;
  for (int t = lo; t <= hi; ++t) {
    r.first[t] = betti(c1, t);
    r.second[t] = betti(c2, t);
  }
  r.equal = r.first == r.second;
  return r;
}

}  // namespace dgc
