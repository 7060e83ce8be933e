#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cdga/field.hpp"
#include "cdga/graded.hpp"

namespace cdga {

/// Accumulates human-readable violations; empty means the checked laws hold.
struct CheckReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
  void fail(const std::string& what) { violations.push_back(what); }
};

/// Key of a basis-pair product: (degree, index) of each factor.
struct ProdKey {
  int da = 0, ia = 0, db = 0, ib = 0;
  friend auto operator<=>(const ProdKey&, const ProdKey&) = default;
};

/// A finite-dimensional differential graded algebra with a chosen basis.
///
/// The product is stored as sparse structure constants on basis pairs; the
/// differential as degreewise matrices. An optional truncation degree records
/// that everything above it was discarded, which makes products landing
/// beyond the stored range zero by construction.
template <class K>
struct Algebra {
  FieldSpec field;
  std::string name;
  GradedVectorSpace space;
  GradedLinearMap<K> d;  // shift +1
  std::map<ProdKey, std::vector<std::pair<int, K>>> prod;
  int unitIndex = 0;
  std::optional<int> truncation;

  int maxDegree() const { return space.maxDegree(); }

  Elt<K> unitElt() const { return basisElt<K>(space, 0, unitIndex); }

  Vec<K> mulBasis(int da, int ia, int db, int ib) const {
    int target = da + db;
    Vec<K> out = zeroVec<K>(space.dim(target));
    auto it = prod.find(ProdKey{da, ia, db, ib});
    if (it != prod.end())
      for (const auto& [idx, c] : it->second) out[idx] += c;
    return out;
  }

  /// Bilinear product of homogeneous elements; lands in degree |a|+|b| (the
  /// zero space when that exceeds the stored range).
  Elt<K> mul(const Elt<K>& a, const Elt<K>& b) const {
    int target = a.deg + b.deg;
    Elt<K> out{target, zeroVec<K>(space.dim(target))};
    if (out.v.empty()) return out;
    for (int ia = 0; ia < static_cast<int>(a.v.size()); ++ia) {
      if (isZero(a.v[ia])) continue;
      for (int ib = 0; ib < static_cast<int>(b.v.size()); ++ib) {
        if (isZero(b.v[ib])) continue;
        auto it = prod.find(ProdKey{a.deg, ia, b.deg, ib});
        if (it == prod.end()) continue;
        K f = a.v[ia] * b.v[ib];
        for (const auto& [idx, c] : it->second) out.v[idx] += f * c;
      }
    }
    return out;
  }

  Elt<K> diff(const Elt<K>& e) const { return d.apply(e); }

  K signFor(int degA, int degB) const { return koszulSign<K>(degA, degB); }

  Complex<K> asComplex() const { return Complex<K>{field, space, d}; }
};

namespace detail {
inline std::string basisName(const GradedVectorSpace& sp, int d, int i) {
  std::ostringstream os;
  os << sp.label(d, i) << " (degree " << d << ")";
  return os.str();
}
}  // namespace detail

/// Verifies the laws of a (graded-commutative, unital) differential graded
/// algebra on the given presentation: well-formed tables, a two-sided unit in
/// degree 0, squared differential zero, sign-twisted commutativity, the
/// graded product rule of the differential, and associativity.
///
/// `checkAssociativity` can be disabled by callers that construct products in
/// a way that is associative by construction and whose triple loop would be
/// expensive.
template <class K>
CheckReport checkCDGA(const Algebra<K>& alg, bool checkAssociativity = true) {
  CheckReport rep;
  const GradedVectorSpace& sp = alg.space;

  if (auto dup = sp.duplicateLabel())
    rep.fail("duplicate basis label: " + *dup);

  if (alg.truncation && *alg.truncation < sp.maxDegree())
    rep.fail("basis extends past the declared truncation degree");

  if (sp.dim(0) == 0 || alg.unitIndex < 0 || alg.unitIndex >= sp.dim(0)) {
    rep.fail("unit index does not name a degree-0 basis vector");
    return rep;
  }

  // Structure table sanity: keys must reference real basis vectors and
  // entries must land in the right degree.
  for (const auto& [key, entries] : alg.prod) {
    if (key.ia >= sp.dim(key.da) || key.ib >= sp.dim(key.db) || key.ia < 0 || key.ib < 0) {
      rep.fail("product table references a missing basis vector");
      return rep;
    }
    for (const auto& [idx, c] : entries) {
      (void)c;
      if (idx < 0 || idx >= sp.dim(key.da + key.db)) {
        rep.fail("product table entry lands outside its target degree");
        return rep;
      }
    }
  }

  const Elt<K> one = alg.unitElt();

  for (int deg = 0; deg <= sp.maxDegree(); ++deg) {
    for (int i = 0; i < sp.dim(deg); ++i) {
      Elt<K> x = basisElt<K>(sp, deg, i);
      if (!(alg.mul(one, x).v == x.v))
        rep.fail("left unit law fails on " + detail::basisName(sp, deg, i));
      if (!(alg.mul(x, one).v == x.v))
        rep.fail("right unit law fails on " + detail::basisName(sp, deg, i));
    }
  }

  // Squared differential.
  for (int deg = 0; deg <= sp.maxDegree(); ++deg) {
    for (int i = 0; i < sp.dim(deg); ++i) {
      Elt<K> x = basisElt<K>(sp, deg, i);
      if (!isZeroVec(alg.diff(alg.diff(x)).v))
        rep.fail("differential does not square to zero on " + detail::basisName(sp, deg, i));
    }
  }

  // Differential of the unit.
  if (!isZeroVec(alg.diff(one).v)) rep.fail("differential of the unit is nonzero");

  // Sign-twisted commutativity and the product rule.
  for (int da = 0; da <= sp.maxDegree(); ++da) {
    for (int ia = 0; ia < sp.dim(da); ++ia) {
      Elt<K> x = basisElt<K>(sp, da, ia);
      Elt<K> dx = alg.diff(x);
      for (int db = 0; db <= sp.maxDegree(); ++db) {
        for (int ib = 0; ib < sp.dim(db); ++ib) {
          Elt<K> y = basisElt<K>(sp, db, ib);
          Elt<K> xy = alg.mul(x, y);
          Elt<K> yx = alg.mul(y, x);
          K s = alg.signFor(da, db);
          if (!(xy.v == scaleVec(s, yx.v)))
            rep.fail("commutativity sign fails on " + detail::basisName(sp, da, ia) + " * " +
                     detail::basisName(sp, db, ib));
          Elt<K> lhs = alg.diff(xy);
          Elt<K> dy = alg.diff(y);
          K se = (da % 2 == 0) ? K(1) : K(-1);
          Vec<K> rhs = addVec(alg.mul(dx, y).v, scaleVec(se, alg.mul(x, dy).v));
          if (!(lhs.v == rhs))
            rep.fail("product rule fails on " + detail::basisName(sp, da, ia) + " * " +
                     detail::basisName(sp, db, ib));
        }
      }
    }
  }

  if (checkAssociativity) {
    for (int da = 0; da <= sp.maxDegree(); ++da)
      for (int ia = 0; ia < sp.dim(da); ++ia) {
        Elt<K> x = basisElt<K>(sp, da, ia);
        for (int db = 0; da + db <= sp.maxDegree(); ++db)
          for (int ib = 0; ib < sp.dim(db); ++ib) {
            Elt<K> y = basisElt<K>(sp, db, ib);
            Elt<K> xy = alg.mul(x, y);
            for (int dc = 0; dc <= sp.maxDegree(); ++dc)
              for (int ic = 0; ic < sp.dim(dc); ++ic) {
                Elt<K> z = basisElt<K>(sp, dc, ic);
                Elt<K> lhs = alg.mul(xy, z);
                Elt<K> rhs = alg.mul(x, alg.mul(y, z));
                if (!(lhs.v == rhs.v))
                  rep.fail("associativity fails on " + detail::basisName(sp, da, ia) + " * " +
                           detail::basisName(sp, db, ib) + " * " + detail::basisName(sp, dc, ic));
              }
          }
      }
  }

  return rep;
}

}  // namespace cdga
