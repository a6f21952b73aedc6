#include "dgc/dgcat.hpp"

#include <set>

namespace dgc {

DgCategory::DgCategory(FieldSpec field, Grading grading, std::vector<std::string> objects)
    : field_(field), grading_(grading), objects_(std::move(objects)) {
  std::set<std::string> seen;
  for (const auto& o : objects_) {
    if (o.empty() || o.find('|') != std::string::npos || o.find(':') != std::string::npos)
      throw Error(ErrorKind::InvalidArgument, "object name '" + o + "' must be nonempty without '|' or ':'");
    if (!seen.insert(o).second) throw Error(ErrorKind::InvalidArgument, "duplicate object '" + o + "'");
  }
  const std::size_t k = n();
  homs_.assign(k * k, zero_complex(field, grading));
  comp_.assign(k * k * k, {});
}

std::optional<std::size_t> DgCategory::find_object(const std::string& name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  return std::nullopt;
}

void DgCategory::resize_products(std::size_t a, std::size_t b) {
  const std::size_t k = n();
  for (std::size_t c = 0; c < k; ++c) {
    comp_[(a * k + b) * k + c].assign(hom(a, b).size() * hom(b, c).size(), {});
    comp_[(c * k + a) * k + b].assign(hom(c, a).size() * hom(a, b).size(), {});
  }
}

void DgCategory::set_hom(std::size_t a, std::size_t b, ChainComplex c) {
  check_compatible(field_, grading_, c.field(), c.grading(), "hom complex");
  homs_.at(a * n() + b) = std::move(c);
  resize_products(a, b);
  if (units_ && a == b) (*units_)[a].clear();
}

void DgCategory::set_product(std::size_t a, std::size_t b, std::size_t c, std::size_t f, std::size_t g,
                             SparseVec out) {
  normalize(field_, out);
  if (f >= hom(a, b).size() || g >= hom(b, c).size() || (!out.empty() && out.back().index >= hom(a, c).size()))
    throw Error(ErrorKind::DimensionMismatch, "structure constant out of range");
  comp_[(a * n() + b) * n() + c][f * hom(b, c).size() + g] = std::move(out);
}

void DgCategory::set_unit(std::size_t a, SparseVec u) {
  normalize(field_, u);
  if (!u.empty() && u.back().index >= hom(a, a).size()) throw Error(ErrorKind::DimensionMismatch, "unit out of range");
  if (!units_) units_.emplace(n());
  (*units_)[a] = std::move(u);
}

std::optional<std::vector<std::size_t>> DgCategory::unit_generators() const {
  std::vector<std::size_t> out;
  if (objects_.empty()) return out;
  if (!units_) return std::nullopt;
  for (const auto& u : *units_) {
    if (u.size() != 1 || u[0].value != 1) return std::nullopt;
    out.push_back(u[0].index);
  }
  return out;
}

std::optional<int> DgCategory::min_degree() const {
  std::optional<int> m;
  for (const auto& h : homs_)
    if (h.size() && (!m || h.min_degree() < *m)) m = h.min_degree();
  return m;
}

std::size_t DgCategory::total_dim() const {
  std::size_t s = 0;
  for (const auto& h : homs_) s += h.size();
  return s;
}

bool operator==(const DgCategory& a, const DgCategory& b) {
  return a.field_ == b.field_ && a.grading_ == b.grading_ && a.objects_ == b.objects_ && a.homs_ == b.homs_ &&
         a.comp_ == b.comp_ && a.units_ == b.units_;
}

void require_unital(const DgCategory& a, ErrorKind kind, const std::string& what) {
  if (!a.unital()) throw Error(kind, what + " requires a unital category");
}

namespace {

// Bilinear extension of the structure constants.
SparseVec multiply(const DgCategory& cat, std::size_t a, std::size_t b, std::size_t c, const SparseVec& x,
                   const SparseVec& y) {
  const FieldSpec& f = cat.field();
  SparseVec out;
  for (const auto& ex : x)
    for (const auto& ey : y)
      for (const auto& e : cat.product(a, b, c, ex.index, ey.index))
        out.push_back({e.index, f.mul(f.mul(ex.value, ey.value), e.value)});
  normalize(f, out);
  return out;
}

SparseVec basis_vec(std::size_t i) { return {{static_cast<std::uint32_t>(i), 1}}; }

std::string ref(const DgCategory& cat, std::size_t a, std::size_t b, std::size_t g) {
  return cat.object(a) + "|" + cat.object(b) + ":" + cat.hom(a, b).name(g);
}

}  // namespace

ValidationReport validate_category(const DgCategory& cat) {
  ValidationReport report;
  const FieldSpec& fld = cat.field();
  const std::size_t k = cat.object_count();

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      auto sub = validate_complex(cat.hom(a, b));
      report.merge(sub, "hom " + cat.object(a) + "|" + cat.object(b) + ": ");
    }

  // Leibniz rule.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c) {
        const auto &hab = cat.hom(a, b), &hbc = cat.hom(b, c), &hac = cat.hom(a, c);
        for (std::size_t f = 0; f < hab.size(); ++f)
          for (std::size_t g = 0; g < hbc.size(); ++g) {
            const int deg = hac.normalize_degree(hab.degree(f) + hbc.degree(g));
            for (const auto& e : cat.product(a, b, c, f, g))
              if (hac.degree(e.index) != deg) {
                report.fail("product of (" + ref(cat, a, b, f) + ", " + ref(cat, b, c, g) + ") is not in degree " +
                            std::to_string(deg));
                break;
              }
            SparseVec lhs = hac.differential().apply(cat.product(a, b, c, f, g));
            SparseVec rhs = multiply(cat, a, b, c, hab.boundary(f), basis_vec(g));
            axpy(fld, fld.sign(hab.degree(f)), multiply(cat, a, b, c, basis_vec(f), hbc.boundary(g)), rhs);
            if (lhs != rhs)
              report.fail("composition is not a chain map at (" + ref(cat, a, b, f) + ", " + ref(cat, b, c, g) + ")");
          }
      }

  // Associativity.
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < k; ++c)
        for (std::size_t e = 0; e < k; ++e) {
          const auto &hab = cat.hom(a, b), &hbc = cat.hom(b, c), &hce = cat.hom(c, e);
          if (!hab.size() || !hbc.size() || !hce.size()) continue;
          for (std::size_t f = 0; f < hab.size(); ++f)
            for (std::size_t g = 0; g < hbc.size(); ++g)
              for (std::size_t h = 0; h < hce.size(); ++h) {
                SparseVec left = multiply(cat, a, c, e, cat.product(a, b, c, f, g), basis_vec(h));
                SparseVec right = multiply(cat, a, b, e, basis_vec(f), cat.product(b, c, e, g, h));
                if (left != right)
                  report.fail("associativity fails at (" + ref(cat, a, b, f) + ", " + ref(cat, b, c, g) + ", " +
                              ref(cat, c, e, h) + ")");
              }
        }

  if (cat.unital()) {
    for (std::size_t a = 0; a < k; ++a) {
      const auto& haa = cat.hom(a, a);
      const SparseVec& u = cat.unit(a);
      if (u.empty()) {
        report.fail("unit of " + cat.object(a) + " is zero");
        continue;
      }
      bool degree_zero = true;
      for (const auto& e : u) degree_zero = degree_zero && haa.degree(e.index) == 0;
      if (!degree_zero) report.fail("unit of " + cat.object(a) + " is not in degree 0");
      if (!haa.differential().apply(u).empty()) report.fail("unit of " + cat.object(a) + " is not a cycle");
      for (std::size_t b = 0; b < k; ++b) {
        const auto& hab = cat.hom(a, b);
        for (std::size_t f = 0; f < hab.size(); ++f) {
          if (multiply(cat, a, a, b, u, basis_vec(f)) != basis_vec(f))
            report.fail("left unit law fails at " + ref(cat, a, b, f));
        }
        const auto& hba = cat.hom(b, a);
        for (std::size_t f = 0; f < hba.size(); ++f) {
          if (multiply(cat, b, a, a, basis_vec(f), u) != basis_vec(f))
            report.fail("right unit law fails at " + ref(cat, b, a, f));
        }
      }
    }
  }
  return report;
}

DgCategory unit_cat(FieldSpec field, Grading grading) {
  DgCategory k(field, grading, {"*"});
  k.set_hom(0, 0, unit_complex(field, grading));
  k.set_product(0, 0, 0, 0, 0, {{0, 1}});
  k.set_unit(0, {{0, 1}});
  return k;
}

DgCategory empty_cat(FieldSpec field, Grading grading) { return DgCategory(field, grading, {}); }

DgCategory opposite(const DgCategory& a) {
  const std::size_t k = a.object_count();
  const FieldSpec& fld = a.field();
  DgCategory op(fld, a.grading(), a.objects());
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) op.set_hom(x, y, a.hom(y, x));
  // f in op(x,y) = A(y,x), g in op(y,z) = A(z,y); f.g = (-1)^{|f||g|} g f in A(z,x) = op(x,z).
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      for (std::size_t z = 0; z < k; ++z) {
        const auto &hf = a.hom(y, x), &hg = a.hom(z, y);
        for (std::size_t f = 0; f < hf.size(); ++f)
          for (std::size_t g = 0; g < hg.size(); ++g) {
            SparseVec out = a.product(z, y, x, g, f);
            if (out.empty()) continue;
            const Scalar s = fld.sign(static_cast<long>(hf.degree(f)) * hg.degree(g));
            for (auto& e : out) e.value = fld.mul(s, e.value);
            op.set_product(x, y, z, f, g, std::move(out));
          }
      }
  if (a.unital())
    for (std::size_t x = 0; x < k; ++x) op.set_unit(x, a.unit(x));
  return op;
}

DgCategory tensor_cat(const DgCategory& a, const DgCategory& b) {
  check_compatible(a.field(), a.grading(), b.field(), b.grading(), "tensor_cat");
  const FieldSpec& fld = a.field();
  const std::size_t na = a.object_count(), nb = b.object_count();
  std::vector<std::string> objs;
  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y) objs.push_back("(" + a.object(x) + "," + b.object(y) + ")");
  DgCategory t(fld, a.grading(), std::move(objs));
  auto id = [nb](std::size_t x, std::size_t y) { return x * nb + y; };

  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      for (std::size_t x2 = 0; x2 < na; ++x2)
        for (std::size_t y2 = 0; y2 < nb; ++y2) t.set_hom(id(x, y), id(x2, y2), tensor_cx(a.hom(x, x2), b.hom(y, y2)));

  for (std::size_t x = 0; x < na; ++x)
    for (std::size_t y = 0; y < nb; ++y)
      for (std::size_t x2 = 0; x2 < na; ++x2)
        for (std::size_t y2 = 0; y2 < nb; ++y2)
          for (std::size_t x3 = 0; x3 < na; ++x3)
            for (std::size_t y3 = 0; y3 < nb; ++y3) {
              const auto &a1 = a.hom(x, x2), &a2 = a.hom(x2, x3), &b1 = b.hom(y, y2), &b2 = b.hom(y2, y3);
              if (!a1.size() || !a2.size() || !b1.size() || !b2.size()) continue;
              TensorIndex i1(a1, b1), i2(a2, b2), i3(a.hom(x, x3), b.hom(y, y3));
              for (std::size_t f = 0; f < a1.size(); ++f)
                for (std::size_t g = 0; g < b1.size(); ++g)
                  for (std::size_t f2 = 0; f2 < a2.size(); ++f2)
                    for (std::size_t g2 = 0; g2 < b2.size(); ++g2) {
                      const SparseVec& pa = a.product(x, x2, x3, f, f2);
                      const SparseVec& pb = b.product(y, y2, y3, g, g2);
                      if (pa.empty() || pb.empty()) continue;
                      const Scalar s = fld.sign(static_cast<long>(b1.degree(g)) * a2.degree(f2));
                      SparseVec out;
                      for (const auto& ea : pa)
                        for (const auto& eb : pb)
                          out.push_back({i3(ea.index, eb.index), fld.mul(s, fld.mul(ea.value, eb.value))});
                      t.set_product(id(x, y), id(x2, y2), id(x3, y3), i1(f, g), i2(f2, g2), std::move(out));
                    }
            }

  if (a.unital() && b.unital()) {
    for (std::size_t x = 0; x < na; ++x)
      for (std::size_t y = 0; y < nb; ++y) {
        TensorIndex ix(a.hom(x, x), b.hom(y, y));
        SparseVec u;
        for (const auto& ea : a.unit(x))
          for (const auto& eb : b.unit(y)) u.push_back({ix(ea.index, eb.index), fld.mul(ea.value, eb.value)});
        t.set_unit(id(x, y), std::move(u));
      }
  }
  return t;
}

DgCategory sum_cat(const DgCategory& a, const DgCategory& b) {
  check_compatible(a.field(), a.grading(), b.field(), b.grading(), "sum_cat");
  const std::size_t na = a.object_count(), nb = b.object_count();
  std::vector<std::string> objs;
  bool collide = false;
  for (const auto& o : b.objects()) collide = collide || a.find_object(o).has_value();
  for (const auto& o : a.objects()) objs.push_back(collide ? "1." + o : o);
  for (const auto& o : b.objects()) objs.push_back(collide ? "2." + o : o);

  DgCategory s(a.field(), a.grading(), std::move(objs));
  auto copy = [&](const DgCategory& src, std::size_t shift) {
    const std::size_t k = src.object_count();
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y) s.set_hom(x + shift, y + shift, src.hom(x, y));
    for (std::size_t x = 0; x < k; ++x)
      for (std::size_t y = 0; y < k; ++y)
        for (std::size_t z = 0; z < k; ++z)
          for (std::size_t f = 0; f < src.hom(x, y).size(); ++f)
            for (std::size_t g = 0; g < src.hom(y, z).size(); ++g)
              if (!src.product(x, y, z, f, g).empty())
                s.set_product(x + shift, y + shift, z + shift, f, g, src.product(x, y, z, f, g));
  };
  copy(a, 0);
  copy(b, na);
  if ((a.unital() || na == 0) && (b.unital() || nb == 0) && (na + nb) > 0) {
    for (std::size_t x = 0; x < na; ++x) s.set_unit(x, a.unit(x));
    for (std::size_t x = 0; x < nb; ++x) s.set_unit(na + x, b.unit(x));
  }
  return s;
}

}  // namespace dgc
