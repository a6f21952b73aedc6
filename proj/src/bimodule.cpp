#include "dgc/bimodule.hpp"

#include <algorithm>
#include <memory>

namespace dgc {

namespace {

SparseVec basis_vec(std::size_t i) { return {{static_cast<std::uint32_t>(i), 1}}; }

void scale(const FieldSpec& f, Scalar s, SparseVec& v) {
  for (auto& e : v) e.value = f.mul(s, e.value);
}

}  // namespace

bool same_category(const CategoryPtr& a, const CategoryPtr& b) { return a == b || *a == *b; }

Bimodule::Bimodule(CategoryPtr left, CategoryPtr right) : left_(std::move(left)), right_(std::move(right)) {
  check_compatible(left_->field(), left_->grading(), right_->field(), right_->grading(), "bimodule categories");
  slots_.assign(nl() * nr(), zero_complex(field(), grading()));
  lact_.assign(nl() * nl() * nr(), {});
  ract_.assign(nl() * nr() * nr(), {});
}

void Bimodule::set_slot(std::size_t a, std::size_t b, ChainComplex c) {
  check_compatible(field(), grading(), c.field(), c.grading(), "bimodule slot");
  slots_.at(a * nr() + b) = std::move(c);
  for (std::size_t x = 0; x < nl(); ++x) {
    lact_[(x * nl() + a) * nr() + b].assign(left_->hom(x, a).size() * slot(a, b).size(), {});
    lact_[(a * nl() + x) * nr() + b].assign(left_->hom(a, x).size() * slot(x, b).size(), {});
  }
  for (std::size_t y = 0; y < nr(); ++y) {
    ract_[(a * nr() + b) * nr() + y].assign(slot(a, b).size() * right_->hom(b, y).size(), {});
    ract_[(a * nr() + y) * nr() + b].assign(slot(a, y).size() * right_->hom(y, b).size(), {});
  }
}

void Bimodule::set_lact(std::size_t a2, std::size_t a, std::size_t b, std::size_t f, std::size_t v, SparseVec out) {
  normalize(field(), out);
  if (f >= left_->hom(a2, a).size() || v >= slot(a, b).size() ||
      (!out.empty() && out.back().index >= slot(a2, b).size()))
    throw Error(ErrorKind::DimensionMismatch, "left action constant out of range");
  lact_[(a2 * nl() + a) * nr() + b][f * slot(a, b).size() + v] = std::move(out);
}

void Bimodule::set_ract(std::size_t a, std::size_t b, std::size_t b2, std::size_t v, std::size_t g, SparseVec out) {
  normalize(field(), out);
  if (v >= slot(a, b).size() || g >= right_->hom(b, b2).size() ||
      (!out.empty() && out.back().index >= slot(a, b2).size()))
    throw Error(ErrorKind::DimensionMismatch, "right action constant out of range");
  ract_[(a * nr() + b) * nr() + b2][v * right_->hom(b, b2).size() + g] = std::move(out);
}

std::optional<int> Bimodule::min_degree() const {
  std::optional<int> m;
  for (const auto& s : slots_)
    if (s.size() && (!m || s.min_degree() < *m)) m = s.min_degree();
  return m;
}

std::size_t Bimodule::total_dim() const {
  std::size_t t = 0;
  for (const auto& s : slots_) t += s.size();
  return t;
}

bool operator==(const Bimodule& x, const Bimodule& y) {
  return same_category(x.left_, y.left_) && same_category(x.right_, y.right_) && x.slots_ == y.slots_ &&
         x.lact_ == y.lact_ && x.ract_ == y.ract_;
}

// --- validation -------------------------------------------------------------

namespace {

struct Actions {
  const Bimodule& m;

  SparseVec left(std::size_t a2, std::size_t a, std::size_t b, const SparseVec& f, const SparseVec& v) const {
    const FieldSpec& fld = m.field();
    SparseVec out;
    for (const auto& ef : f)
      for (const auto& ev : v)
        for (const auto& e : m.lact(a2, a, b, ef.index, ev.index))
          out.push_back({e.index, fld.mul(fld.mul(ef.value, ev.value), e.value)});
    normalize(fld, out);
    return out;
  }
  SparseVec right(std::size_t a, std::size_t b, std::size_t b2, const SparseVec& v, const SparseVec& g) const {
    const FieldSpec& fld = m.field();
    SparseVec out;
    for (const auto& ev : v)
      for (const auto& eg : g)
        for (const auto& e : m.ract(a, b, b2, ev.index, eg.index))
          out.push_back({e.index, fld.mul(fld.mul(ev.value, eg.value), e.value)});
    normalize(fld, out);
    return out;
  }
};

}  // namespace

ValidationReport validate_bimodule(const Bimodule& m) {
  ValidationReport report;
  const DgCategory &L = m.left(), &R = m.right();
  const FieldSpec& fld = m.field();
  const std::size_t nl = L.object_count(), nr = R.object_count();
  Actions act{m};
  auto sref = [&](std::size_t a, std::size_t b, std::size_t v) {
    return L.object(a) + "|" + R.object(b) + ":" + m.slot(a, b).name(v);
  };
  auto lref = [&](std::size_t a, std::size_t b, std::size_t f) {
    return L.object(a) + "|" + L.object(b) + ":" + L.hom(a, b).name(f);
  };
  auto rref = [&](std::size_t a, std::size_t b, std::size_t f) {
    return R.object(a) + "|" + R.object(b) + ":" + R.hom(a, b).name(f);
  };

  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b) report.merge(validate_complex(m.slot(a, b)), "slot " + L.object(a) + "|" + R.object(b) + ": ");

  for (std::size_t a2 = 0; a2 < nl; ++a2)
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b) {
        const auto &hf = L.hom(a2, a), &sv = m.slot(a, b), &out = m.slot(a2, b);
        for (std::size_t f = 0; f < hf.size(); ++f)
          for (std::size_t v = 0; v < sv.size(); ++v) {
            const int deg = out.normalize_degree(hf.degree(f) + sv.degree(v));
            for (const auto& e : m.lact(a2, a, b, f, v))
              if (out.degree(e.index) != deg) {
                report.fail("left action of (" + lref(a2, a, f) + ", " + sref(a, b, v) + ") is not in degree " +
                            std::to_string(deg));
                break;
              }
            SparseVec lhs = out.differential().apply(m.lact(a2, a, b, f, v));
            SparseVec rhs = act.left(a2, a, b, hf.boundary(f), basis_vec(v));
            axpy(fld, fld.sign(hf.degree(f)), act.left(a2, a, b, basis_vec(f), sv.boundary(v)), rhs);
            if (lhs != rhs) report.fail("left action is not a chain map at (" + lref(a2, a, f) + ", " + sref(a, b, v) + ")");
          }
      }

  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b)
      for (std::size_t b2 = 0; b2 < nr; ++b2) {
        const auto &sv = m.slot(a, b), &hg = R.hom(b, b2), &out = m.slot(a, b2);
        for (std::size_t v = 0; v < sv.size(); ++v)
          for (std::size_t g = 0; g < hg.size(); ++g) {
            const int deg = out.normalize_degree(sv.degree(v) + hg.degree(g));
            for (const auto& e : m.ract(a, b, b2, v, g))
              if (out.degree(e.index) != deg) {
                report.fail("right action of (" + sref(a, b, v) + ", " + rref(b, b2, g) + ") is not in degree " +
                            std::to_string(deg));
                break;
              }
            SparseVec lhs = out.differential().apply(m.ract(a, b, b2, v, g));
            SparseVec rhs = act.right(a, b, b2, sv.boundary(v), basis_vec(g));
            axpy(fld, fld.sign(sv.degree(v)), act.right(a, b, b2, basis_vec(v), hg.boundary(g)), rhs);
            if (lhs != rhs)
              report.fail("right action is not a chain map at (" + sref(a, b, v) + ", " + rref(b, b2, g) + ")");
          }
      }

  // (f'' f) v = f'' (f v)
  for (std::size_t a3 = 0; a3 < nl; ++a3)
    for (std::size_t a2 = 0; a2 < nl; ++a2)
      for (std::size_t a = 0; a < nl; ++a)
        for (std::size_t b = 0; b < nr; ++b) {
          const auto &h1 = L.hom(a3, a2), &h2 = L.hom(a2, a), &sv = m.slot(a, b);
          if (!h1.size() || !h2.size() || !sv.size()) continue;
          for (std::size_t f1 = 0; f1 < h1.size(); ++f1)
            for (std::size_t f2 = 0; f2 < h2.size(); ++f2)
              for (std::size_t v = 0; v < sv.size(); ++v) {
                SparseVec lhs = act.left(a3, a, b, L.product(a3, a2, a, f1, f2), basis_vec(v));
                SparseVec rhs = act.left(a3, a2, b, basis_vec(f1), m.lact(a2, a, b, f2, v));
                if (lhs != rhs)
                  report.fail("left action is not associative at (" + lref(a3, a2, f1) + ", " + lref(a2, a, f2) + ", " +
                              sref(a, b, v) + ")");
              }
        }

  // v (g g') = (v g) g'
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b)
      for (std::size_t b2 = 0; b2 < nr; ++b2)
        for (std::size_t b3 = 0; b3 < nr; ++b3) {
          const auto &sv = m.slot(a, b), &g1 = R.hom(b, b2), &g2 = R.hom(b2, b3);
          if (!sv.size() || !g1.size() || !g2.size()) continue;
          for (std::size_t v = 0; v < sv.size(); ++v)
            for (std::size_t x = 0; x < g1.size(); ++x)
              for (std::size_t y = 0; y < g2.size(); ++y) {
                SparseVec lhs = act.right(a, b, b3, basis_vec(v), R.product(b, b2, b3, x, y));
                SparseVec rhs = act.right(a, b2, b3, m.ract(a, b, b2, v, x), basis_vec(y));
                if (lhs != rhs)
                  report.fail("right action is not associative at (" + sref(a, b, v) + ", " + rref(b, b2, x) + ", " +
                              rref(b2, b3, y) + ")");
              }
        }

  // (f v) g = f (v g)
  for (std::size_t a2 = 0; a2 < nl; ++a2)
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b)
        for (std::size_t b2 = 0; b2 < nr; ++b2) {
          const auto &hf = L.hom(a2, a), &sv = m.slot(a, b), &hg = R.hom(b, b2);
          if (!hf.size() || !sv.size() || !hg.size()) continue;
          for (std::size_t f = 0; f < hf.size(); ++f)
            for (std::size_t v = 0; v < sv.size(); ++v)
              for (std::size_t g = 0; g < hg.size(); ++g) {
                SparseVec lhs = act.right(a2, b, b2, m.lact(a2, a, b, f, v), basis_vec(g));
                SparseVec rhs = act.left(a2, a, b2, basis_vec(f), m.ract(a, b, b2, v, g));
                if (lhs != rhs)
                  report.fail("actions do not commute at (" + lref(a2, a, f) + ", " + sref(a, b, v) + ", " +
                              rref(b, b2, g) + ")");
              }
        }

  if (L.unital())
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b)
        for (std::size_t v = 0; v < m.slot(a, b).size(); ++v)
          if (act.left(a, a, b, L.unit(a), basis_vec(v)) != basis_vec(v))
            report.fail("left unit does not act as identity on " + sref(a, b, v));
  if (R.unital())
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b)
        for (std::size_t v = 0; v < m.slot(a, b).size(); ++v)
          if (act.right(a, b, b, basis_vec(v), R.unit(b)) != basis_vec(v))
            report.fail("right unit does not act as identity on " + sref(a, b, v));
  return report;
}

// --- constructions ----------------------------------------------------------

Bimodule diagonal(CategoryPtr a) {
  Bimodule m(a, a);
  const std::size_t k = a->object_count();
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y) m.set_slot(x, y, a->hom(x, y));
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      for (std::size_t z = 0; z < k; ++z)
        for (std::size_t f = 0; f < a->hom(x, y).size(); ++f)
          for (std::size_t g = 0; g < a->hom(y, z).size(); ++g) {
            const SparseVec& p = a->product(x, y, z, f, g);
            if (p.empty()) continue;
            m.set_lact(x, y, z, f, g, p);
            m.set_ract(x, y, z, f, g, p);
          }
  return m;
}

Bimodule ext_tensor(const Bimodule& v1, const Bimodule& v2) {
  check_compatible(v1.field(), v1.grading(), v2.field(), v2.grading(), "ext_tensor");
  const FieldSpec& fld = v1.field();
  auto L = std::make_shared<const DgCategory>(tensor_cat(v1.left(), v2.left()));
  auto R = std::make_shared<const DgCategory>(tensor_cat(v1.right(), v2.right()));
  const std::size_t nA = v1.left().object_count(), nB = v1.right().object_count();
  const std::size_t nC = v2.left().object_count(), nD = v2.right().object_count();
  Bimodule m(L, R);
  auto lid = [nC](std::size_t a, std::size_t c) { return a * nC + c; };
  auto rid = [nD](std::size_t b, std::size_t d) { return b * nD + d; };

  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t c = 0; c < nC; ++c)
      for (std::size_t b = 0; b < nB; ++b)
        for (std::size_t d = 0; d < nD; ++d) m.set_slot(lid(a, c), rid(b, d), tensor_cx(v1.slot(a, b), v2.slot(c, d)));

  // (f*g).(v*w) = (-1)^{|g||v|} (f v)*(g w)
  for (std::size_t a2 = 0; a2 < nA; ++a2)
    for (std::size_t c2 = 0; c2 < nC; ++c2)
      for (std::size_t a = 0; a < nA; ++a)
        for (std::size_t c = 0; c < nC; ++c)
          for (std::size_t b = 0; b < nB; ++b)
            for (std::size_t d = 0; d < nD; ++d) {
              const auto &hf = v1.left().hom(a2, a), &hg = v2.left().hom(c2, c);
              const auto &sv = v1.slot(a, b), &sw = v2.slot(c, d);
              if (!hf.size() || !hg.size() || !sv.size() || !sw.size()) continue;
              TensorIndex ih(hf, hg), is(sv, sw), io(v1.slot(a2, b), v2.slot(c2, d));
              for (std::size_t f = 0; f < hf.size(); ++f)
                for (std::size_t g = 0; g < hg.size(); ++g)
                  for (std::size_t v = 0; v < sv.size(); ++v)
                    for (std::size_t w = 0; w < sw.size(); ++w) {
                      const auto &p = v1.lact(a2, a, b, f, v), &q = v2.lact(c2, c, d, g, w);
                      if (p.empty() || q.empty()) continue;
                      const Scalar s = fld.sign(static_cast<long>(hg.degree(g)) * sv.degree(v));
                      SparseVec out;
                      for (const auto& ep : p)
                        for (const auto& eq : q)
                          out.push_back({io(ep.index, eq.index), fld.mul(s, fld.mul(ep.value, eq.value))});
                      m.set_lact(lid(a2, c2), lid(a, c), rid(b, d), ih(f, g), is(v, w), std::move(out));
                    }
            }

  // (v*w).(f*g) = (-1)^{|w||f|} (v f)*(w g)
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t c = 0; c < nC; ++c)
      for (std::size_t b = 0; b < nB; ++b)
        for (std::size_t d = 0; d < nD; ++d)
          for (std::size_t b2 = 0; b2 < nB; ++b2)
            for (std::size_t d2 = 0; d2 < nD; ++d2) {
              const auto &sv = v1.slot(a, b), &sw = v2.slot(c, d);
              const auto &hf = v1.right().hom(b, b2), &hg = v2.right().hom(d, d2);
              if (!hf.size() || !hg.size() || !sv.size() || !sw.size()) continue;
              TensorIndex ih(hf, hg), is(sv, sw), io(v1.slot(a, b2), v2.slot(c, d2));
              for (std::size_t v = 0; v < sv.size(); ++v)
                for (std::size_t w = 0; w < sw.size(); ++w)
                  for (std::size_t f = 0; f < hf.size(); ++f)
                    for (std::size_t g = 0; g < hg.size(); ++g) {
                      const auto &p = v1.ract(a, b, b2, v, f), &q = v2.ract(c, d, d2, w, g);
                      if (p.empty() || q.empty()) continue;
                      const Scalar s = fld.sign(static_cast<long>(sw.degree(w)) * hf.degree(f));
                      SparseVec out;
                      for (const auto& ep : p)
                        for (const auto& eq : q)
                          out.push_back({io(ep.index, eq.index), fld.mul(s, fld.mul(ep.value, eq.value))});
                      m.set_ract(lid(a, c), rid(b, d), rid(b2, d2), is(v, w), ih(f, g), std::move(out));
                    }
            }
  return m;
}

namespace {

// f v g for basis elements, as a vector in V(a2, b2).
SparseVec sandwich(const Bimodule& v, std::size_t a2, std::size_t a, std::size_t b, std::size_t b2, std::size_t f,
                   std::size_t x, std::size_t g) {
  const FieldSpec& fld = v.field();
  SparseVec out;
  for (const auto& e : v.lact(a2, a, b, f, x))
    for (const auto& e2 : v.ract(a2, b, b2, e.index, g)) out.push_back({e2.index, fld.mul(e.value, e2.value)});
  normalize(fld, out);
  return out;
}

}  // namespace

Bimodule adj(const Bimodule& v) {
  const FieldSpec& fld = v.field();
  const DgCategory &A = v.left(), &B = v.right();
  auto K = std::make_shared<const DgCategory>(unit_cat(fld, v.grading()));
  auto Aop = opposite(A);
  auto R = std::make_shared<const DgCategory>(tensor_cat(Aop, B));
  const std::size_t nA = A.object_count(), nB = B.object_count();
  Bimodule m(K, R);
  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t b = 0; b < nB; ++b) m.set_slot(0, a * nB + b, v.slot(a, b));

  for (std::size_t a = 0; a < nA; ++a)
    for (std::size_t b = 0; b < nB; ++b) {
      for (std::size_t x = 0; x < v.slot(a, b).size(); ++x) m.set_lact(0, 0, a * nB + b, 0, x, basis_vec(x));
      for (std::size_t a2 = 0; a2 < nA; ++a2)
        for (std::size_t b2 = 0; b2 < nB; ++b2) {
          const auto &hf = Aop.hom(a, a2), &hg = B.hom(b, b2), &sv = v.slot(a, b);
          if (!hf.size() || !hg.size() || !sv.size()) continue;
          TensorIndex ih(hf, hg);
          for (std::size_t x = 0; x < sv.size(); ++x)
            for (std::size_t f = 0; f < hf.size(); ++f)
              for (std::size_t g = 0; g < hg.size(); ++g) {
                SparseVec out = sandwich(v, a2, a, b, b2, f, x, g);
                if (out.empty()) continue;
                scale(fld, fld.sign(static_cast<long>(hf.degree(f)) * sv.degree(x)), out);
                m.set_ract(0, a * nB + b, a2 * nB + b2, x, ih(f, g), std::move(out));
              }
        }
    }
  return m;
}

Bimodule adj_op(const Bimodule& v) {
  const FieldSpec& fld = v.field();
  const DgCategory &A = v.left(), &B = v.right();
  auto K = std::make_shared<const DgCategory>(unit_cat(fld, v.grading()));
  auto Bop = opposite(B);
  auto L = std::make_shared<const DgCategory>(tensor_cat(Bop, A));
  const std::size_t nA = A.object_count(), nB = B.object_count();
  Bimodule m(L, K);
  for (std::size_t b = 0; b < nB; ++b)
    for (std::size_t a = 0; a < nA; ++a) m.set_slot(b * nA + a, 0, v.slot(a, b));

  for (std::size_t b = 0; b < nB; ++b)
    for (std::size_t a = 0; a < nA; ++a) {
      const auto& sv = v.slot(a, b);
      for (std::size_t x = 0; x < sv.size(); ++x) m.set_ract(b * nA + a, 0, 0, x, 0, basis_vec(x));
      // hom_L((b2,a2),(b,a)) = B(b,b2) (x) A(a2,a)
      for (std::size_t b2 = 0; b2 < nB; ++b2)
        for (std::size_t a2 = 0; a2 < nA; ++a2) {
          const auto &hg = Bop.hom(b2, b), &hf = A.hom(a2, a);
          if (!hf.size() || !hg.size() || !sv.size()) continue;
          TensorIndex ih(hg, hf);
          for (std::size_t g = 0; g < hg.size(); ++g)
            for (std::size_t f = 0; f < hf.size(); ++f)
              for (std::size_t x = 0; x < sv.size(); ++x) {
                SparseVec out = sandwich(v, a2, a, b, b2, f, x, g);
                if (out.empty()) continue;
                scale(fld, fld.sign(static_cast<long>(hg.degree(g)) * (hf.degree(f) + sv.degree(x))), out);
                m.set_lact(b2 * nA + a2, b * nA + a, 0, ih(g, f), x, std::move(out));
              }
        }
    }
  return m;
}

// --- natural transformations -----------------------------------------------

NatBasis nat_basis(const Bimodule& v1, const Bimodule& v2) {
  if (!same_category(v1.left_ptr(), v2.left_ptr()) || !same_category(v1.right_ptr(), v2.right_ptr()))
    throw Error(ErrorKind::CategoryMismatch, "nat_complex needs bimodules over the same categories");
  const FieldSpec& fld = v1.field();
  const Grading grading = v1.grading();
  const DgCategory &L = v1.left(), &R = v1.right();
  const std::size_t nl = L.object_count(), nr = R.object_count();
  const std::size_t nslots = nl * nr;

  // Pre-space: direct sum over slots of hom_cx(V1(a,b), V2(a,b)).
  // Variable (slot s, x, y) is the coefficient of the elementary map x -> y.
  std::vector<std::size_t> var_base(nslots + 1, 0);
  for (std::size_t s = 0; s < nslots; ++s)
    var_base[s + 1] = var_base[s] + v1.slot(s / nr, s % nr).size() * v2.slot(s / nr, s % nr).size();
  const std::size_t nvars = var_base[nslots];
  auto var = [&](std::size_t a, std::size_t b, std::size_t x, std::size_t y) {
    return var_base[a * nr + b] + x * v2.slot(a, b).size() + y;
  };
  std::vector<int> var_degree(nvars);
  std::vector<SparseVec> pre_d(nvars);  // hom differential on the pre-space
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b) {
      const auto &s1 = v1.slot(a, b), &s2 = v2.slot(a, b);
      for (std::size_t x = 0; x < s1.size(); ++x)
        for (std::size_t y = 0; y < s2.size(); ++y) {
          const std::size_t i = var(a, b, x, y);
          var_degree[i] = (grading == Grading::Z) ? s2.degree(y) - s1.degree(x)
                                                  : ((s2.degree(y) - s1.degree(x)) % 2 + 2) % 2;
        }
      // Df = f d1 + (-1)^{n+1} d2 f on elementary maps.
      for (std::size_t z = 0; z < s1.size(); ++z)
        for (const auto& e : s1.boundary(z))
          for (std::size_t y = 0; y < s2.size(); ++y)
            pre_d[var(a, b, e.index, y)].push_back({static_cast<std::uint32_t>(var(a, b, z, y)), e.value});
      for (std::size_t x = 0; x < s1.size(); ++x)
        for (std::size_t y = 0; y < s2.size(); ++y) {
          const Scalar sg = fld.sign(var_degree[var(a, b, x, y)] + 1);
          for (const auto& e : s2.boundary(y))
            pre_d[var(a, b, x, y)].push_back({static_cast<std::uint32_t>(var(a, b, x, e.index)), fld.mul(sg, e.value)});
        }
    }
  for (auto& col : pre_d) normalize(fld, col);

  std::vector<int> degrees;
  for (int d : var_degree) degrees.push_back(d);
  std::sort(degrees.begin(), degrees.end());
  degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());

  struct Piece {
    std::vector<std::size_t> vars;           // global variables of this degree
    std::vector<std::uint32_t> local;        // global -> local (valid for vars of this degree)
    KernelResult kernel;
  };
  std::map<int, Piece> pieces;
  std::vector<std::uint32_t> local_of(nvars);
  for (int n : degrees) {
    Piece& p = pieces[n];
    for (std::size_t i = 0; i < nvars; ++i)
      if (var_degree[i] == n) {
        local_of[i] = static_cast<std::uint32_t>(p.vars.size());
        p.vars.push_back(i);
      }
  }

  for (auto& [n, piece] : pieces) {
    // Constraint rows, each a combination of this degree's variables.
    std::vector<SparseVec> rows;
    auto emit = [&](std::map<std::size_t, SparseVec>& by_output) {
      for (auto& [z, row] : by_output) {
        normalize(fld, row);
        if (!row.empty()) rows.push_back(std::move(row));
      }
    };
    auto in_piece = [&](std::size_t gv) { return var_degree[gv] == n; };

    // phi(f v) - (-1)^{n|f|} f phi(v) = 0 in V2(a2,b)
    for (std::size_t a2 = 0; a2 < nl; ++a2)
      for (std::size_t a = 0; a < nl; ++a)
        for (std::size_t b = 0; b < nr; ++b) {
          const auto &hf = L.hom(a2, a), &s1 = v1.slot(a, b), &s2 = v2.slot(a, b), &t2 = v2.slot(a2, b);
          for (std::size_t f = 0; f < hf.size(); ++f)
            for (std::size_t x = 0; x < s1.size(); ++x) {
              std::map<std::size_t, SparseVec> by_output;
              for (const auto& u : v1.lact(a2, a, b, f, x))
                for (std::size_t z = 0; z < t2.size(); ++z) {
                  std::size_t gv = var(a2, b, u.index, z);
                  if (in_piece(gv)) by_output[z].push_back({local_of[gv], u.value});
                }
              const Scalar sg = fld.neg(fld.sign(static_cast<long>(n) * hf.degree(f)));
              for (std::size_t y = 0; y < s2.size(); ++y) {
                std::size_t gv = var(a, b, x, y);
                if (!in_piece(gv)) continue;
                for (const auto& w : v2.lact(a2, a, b, f, y))
                  by_output[w.index].push_back({local_of[gv], fld.mul(sg, w.value)});
              }
              emit(by_output);
            }
        }
    // phi(v g) - phi(v) g = 0 in V2(a,b2)
    for (std::size_t a = 0; a < nl; ++a)
      for (std::size_t b = 0; b < nr; ++b)
        for (std::size_t b2 = 0; b2 < nr; ++b2) {
          const auto &hg = R.hom(b, b2), &s1 = v1.slot(a, b), &s2 = v2.slot(a, b), &t2 = v2.slot(a, b2);
          for (std::size_t x = 0; x < s1.size(); ++x)
            for (std::size_t g = 0; g < hg.size(); ++g) {
              std::map<std::size_t, SparseVec> by_output;
              for (const auto& u : v1.ract(a, b, b2, x, g))
                for (std::size_t z = 0; z < t2.size(); ++z) {
                  std::size_t gv = var(a, b2, u.index, z);
                  if (in_piece(gv)) by_output[z].push_back({local_of[gv], u.value});
                }
              for (std::size_t y = 0; y < s2.size(); ++y) {
                std::size_t gv = var(a, b, x, y);
                if (!in_piece(gv)) continue;
                for (const auto& w : v2.ract(a, b, b2, y, g))
                  by_output[w.index].push_back({local_of[gv], fld.neg(w.value)});
              }
              emit(by_output);
            }
        }

    SparseMatrix constraints(fld, rows.size(), piece.vars.size());
    {
      std::vector<SparseVec> cols(piece.vars.size());
      for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& e : rows[r]) cols[e.index].push_back({static_cast<std::uint32_t>(r), e.value});
      for (std::size_t c = 0; c < cols.size(); ++c) constraints.set_column(c, std::move(cols[c]));
    }
    piece.kernel = kernel_with_free_columns(constraints);
  }

  // Assemble the complex on the kernel bases.
  std::vector<ChainComplex::Generator> gens;
  std::vector<SparseVec> families;
  std::map<int, std::size_t> first;
  for (auto& [n, piece] : pieces) {
    first[n] = gens.size();
    for (std::size_t i = 0; i < piece.kernel.basis.size(); ++i) {
      gens.push_back({n, "nat" + std::to_string(n) + "." + std::to_string(i)});
      SparseVec fam;
      for (std::size_t l = 0; l < piece.vars.size(); ++l)
        if (piece.kernel.basis[i][l]) fam.push_back({static_cast<std::uint32_t>(piece.vars[l]), piece.kernel.basis[i][l]});
      families.push_back(std::move(fam));
    }
  }
  SparseMatrix d(fld, gens.size(), gens.size());
  for (auto& [n, piece] : pieces) {
    const int m = (grading == Grading::Z) ? n - 1 : 1 - n;
    for (std::size_t i = 0; i < piece.kernel.basis.size(); ++i) {
      // D applied to the family, in global variable coordinates.
      SparseVec image;
      const auto& vec = piece.kernel.basis[i];
      for (std::size_t l = 0; l < vec.size(); ++l)
        if (vec[l]) axpy(fld, vec[l], pre_d[piece.vars[l]], image);
      if (image.empty()) continue;
      auto target = pieces.find(m);
      if (target == pieces.end()) throw Error(ErrorKind::InvalidComplex, "differential leaves the natural complex");
      const Piece& tp = target->second;
      std::vector<Scalar> dense(tp.vars.size(), 0);
      for (const auto& e : image) dense[local_of[e.index]] = e.value;
      SparseVec col;
      std::vector<Scalar> check(tp.vars.size(), 0);
      for (std::size_t j = 0; j < tp.kernel.basis.size(); ++j) {
        Scalar c = dense[tp.kernel.free_columns[j]];
        if (!c) continue;
        col.push_back({static_cast<std::uint32_t>(first[m] + j), c});
        for (std::size_t l = 0; l < check.size(); ++l) check[l] = fld.add(check[l], fld.mul(c, tp.kernel.basis[j][l]));
      }
      if (check != dense) throw Error(ErrorKind::InvalidComplex, "differential leaves the natural complex");
      d.set_column(first[n] + i, std::move(col));
    }
  }
  return {ChainComplex(fld, grading, std::move(gens), std::move(d)), std::move(families)};
}

ChainComplex nat_complex(const Bimodule& v1, const Bimodule& v2) { return nat_basis(v1, v2).complex; }

std::size_t pi_k(const Bimodule& v1, const Bimodule& v2, int k) {
  ChainComplex n = nat_complex(v1, v2);
  return betti(n, k);
}

}  // namespace dgc
