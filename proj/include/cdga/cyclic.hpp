#pragma once

#include "cdga/algebra.hpp"

namespace cdga {

/// A top-degree functional. Its defining laws (nonzero, vanishing on exact
/// top-degree elements) are verified by checkOrientation, not assumed.
template <class K>
struct Orientation {
  int degree = 0;
  Vec<K> row;

  K value(const Elt<K>& e) const {
    if (e.deg != degree) return K(0);
    K acc(0);
    for (std::size_t i = 0; i < row.size() && i < e.v.size(); ++i) acc += row[i] * e.v[i];
    return acc;
  }
};

/// A degreewise pairing between complementary degrees i and n-i, stored as
/// one Gram matrix per left degree: value(a, b) = a^T gram[|a|] b.
/// Non-complementary degrees pair to zero.
template <class K>
struct CyclicPairing {
  int degree = 0;               // n
  std::vector<Matrix<K>> gram;  // gram[i]: dim(i) x dim(n-i), i = 0..n

  static CyclicPairing zeroOn(const GradedVectorSpace& sp, int n) {
    CyclicPairing pr;
    pr.degree = n;
    pr.gram.resize(n + 1);
    for (int i = 0; i <= n; ++i) pr.gram[i] = Matrix<K>(sp.dim(i), sp.dim(n - i));
    return pr;
  }

  const Matrix<K>& gramAt(int i) const { return gram[i]; }

  K value(const Elt<K>& a, const Elt<K>& b) const {
    if (a.deg < 0 || a.deg > degree || a.deg + b.deg != degree) return K(0);
    const Matrix<K>& g = gram[a.deg];
    K acc(0);
    for (int r = 0; r < g.rows(); ++r) {
      if (isZero(a.v[r])) continue;
      for (int c = 0; c < g.cols(); ++c)
        if (!isZero(g.at(r, c))) acc += a.v[r] * g.at(r, c) * b.v[c];
    }
    return acc;
  }
};

template <class K>
Orientation<K> orientationFromPairing(const Algebra<K>& alg, const CyclicPairing<K>& pr) {
  Orientation<K> o;
  o.degree = pr.degree;
  o.row = zeroVec<K>(alg.space.dim(pr.degree));
  Elt<K> one = alg.unitElt();
  for (int i = 0; i < alg.space.dim(pr.degree); ++i)
    o.row[i] = pr.value(basisElt<K>(alg.space, pr.degree, i), one);
  if (isZeroVec(o.row))
    throw std::invalid_argument("pairing against the unit is zero; no orientation exists");
  return o;
}

template <class K>
CyclicPairing<K> pairingFromOrientation(const Algebra<K>& alg, const Orientation<K>& orient) {
  CyclicPairing<K> pr;
  pr.degree = orient.degree;
  int n = orient.degree;
  pr.gram.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    pr.gram[i] = Matrix<K>(alg.space.dim(i), alg.space.dim(n - i));
    for (int a = 0; a < alg.space.dim(i); ++a) {
      Elt<K> ea = basisElt<K>(alg.space, i, a);
      for (int b = 0; b < alg.space.dim(n - i); ++b) {
        Elt<K> eb = basisElt<K>(alg.space, n - i, b);
        pr.gram[i].at(a, b) = orient.value(alg.mul(ea, eb));
      }
    }
  }
  return pr;
}

/// Laws of an orientation: nonzero in its degree, and zero on every image of
/// the differential landing in that degree.
template <class K>
CheckReport checkOrientation(const GradedVectorSpace& sp, const GradedLinearMap<K>& d,
                             const Orientation<K>& orient) {
  CheckReport rep;
  int n = orient.degree;
  if (n < 0 || n > sp.maxDegree()) {
    rep.fail("orientation degree is outside the stored range");
    return rep;
  }
  if (static_cast<int>(orient.row.size()) != sp.dim(n)) {
    rep.fail("orientation functional has the wrong dimension");
    return rep;
  }
  if (isZeroVec(orient.row)) rep.fail("orientation functional is zero");
  for (int i = 0; i < sp.dim(n - 1); ++i) {
    Elt<K> de = d.apply(basisElt<K>(sp, n - 1, i));
    if (!isZero(orient.value(de)))
      rep.fail("orientation does not vanish on the boundary of " + detail::basisName(sp, n - 1, i));
  }
  return rep;
}

template <class K>
CheckReport checkOrientation(const Algebra<K>& alg, const Orientation<K>& orient) {
  return checkOrientation(alg.space, alg.d, orient);
}

/// Laws of a cyclic pairing on a cochain complex: graded symmetry across
/// complementary degrees and the sign rule binding it to the differential.
template <class K>
CheckReport checkCyclic(const GradedVectorSpace& sp, const GradedLinearMap<K>& d,
                        const CyclicPairing<K>& pr) {
  CheckReport rep;
  int n = pr.degree;
  if (n < 0) {
    rep.fail("pairing degree is negative");
    return rep;
  }
  if (static_cast<int>(pr.gram.size()) != n + 1) {
    rep.fail("pairing must carry one block per degree from 0 to its degree");
    return rep;
  }
  for (int i = 0; i <= n; ++i)
    if (pr.gram[i].rows() != sp.dim(i) || pr.gram[i].cols() != sp.dim(n - i)) {
      rep.fail("pairing block " + std::to_string(i) + " has the wrong shape");
      return rep;
    }

  // Graded symmetry: <x, y> = (-1)^{|x||y|} <y, x>.
  for (int i = 0; i <= n; ++i) {
    K s = koszulSign<K>(i, n - i);
    for (int a = 0; a < sp.dim(i); ++a)
      for (int b = 0; b < sp.dim(n - i); ++b)
        if (!(pr.gram[i].at(a, b) == s * pr.gram[n - i].at(b, a))) {
          rep.fail("pairing symmetry fails between degrees " + std::to_string(i) + " and " +
                   std::to_string(n - i));
          goto symDone;
        }
  }
symDone:;

  // Compatibility with the differential: <Dx, y> = (-1)^{1+|x||y|} <Dy, x>.
  for (int i = 0; i + 1 <= n; ++i) {
    int j = n - 1 - i;
    if (j < 0 || sp.dim(i) == 0 || sp.dim(j) == 0) continue;
    for (int a = 0; a < sp.dim(i); ++a) {
      Elt<K> x = basisElt<K>(sp, i, a);
      Elt<K> dx = d.apply(x);
      for (int b = 0; b < sp.dim(j); ++b) {
        Elt<K> y = basisElt<K>(sp, j, b);
        Elt<K> dy = d.apply(y);
        K lhs = pr.value(dx, y);
        K rhs = K(-1) * koszulSign<K>(i, j) * pr.value(dy, x);
        if (!(lhs == rhs)) {
          rep.fail("pairing is not compatible with the differential between degrees " +
                   std::to_string(i) + " and " + std::to_string(j));
          return rep;
        }
      }
    }
  }
  return rep;
}

template <class K>
CheckReport checkCyclic(const Complex<K>& cx, const CyclicPairing<K>& pr) {
  return checkCyclic(cx.space, cx.d, pr);
}

/// On an algebra the pairing must additionally be rotation-invariant over the
/// product: <x*y, z> = (-1)^{|z|(|x|+|y|)} <z*x, y>.
template <class K>
CheckReport checkCyclic(const Algebra<K>& alg, const CyclicPairing<K>& pr) {
  CheckReport rep = checkCyclic(alg.space, alg.d, pr);
  if (!rep.ok()) return rep;
  const GradedVectorSpace& sp = alg.space;
  int n = pr.degree;
  for (int da = 0; da <= n; ++da)
    for (int db = 0; da + db <= n; ++db) {
      int dc = n - da - db;
      if (sp.dim(da) == 0 || sp.dim(db) == 0 || sp.dim(dc) == 0) continue;
      for (int a = 0; a < sp.dim(da); ++a)
        for (int b = 0; b < sp.dim(db); ++b)
          for (int c = 0; c < sp.dim(dc); ++c) {
            Elt<K> x = basisElt<K>(sp, da, a);
            Elt<K> y = basisElt<K>(sp, db, b);
            Elt<K> z = basisElt<K>(sp, dc, c);
            K s = koszulSign<K>(dc, da + db);
            K lhs = pr.value(alg.mul(x, y), z);
            K rhs = s * pr.value(alg.mul(z, x), y);
            if (!(lhs == rhs)) {
              rep.fail("pairing is not rotation-invariant on degrees (" + std::to_string(da) +
                       ", " + std::to_string(db) + ", " + std::to_string(dc) + ")");
              return rep;
            }
          }
    }
  return rep;
}

/// An algebra bundled with its orientation, when it has one. The unit of
/// exchange for documents, corpus entries, and the command-line surface.
template <class K>
struct OrientedAlgebra {
  Algebra<K> alg;
  std::optional<Orientation<K>> orient;
};

/// When both structures are present they must be the two faces of one datum:
/// the functional is pairing-against-the-unit, and the pairing is the
/// functional of products.
template <class K>
CheckReport checkOrientationPairingMatch(const Algebra<K>& alg, const Orientation<K>& orient,
                                         const CyclicPairing<K>& pr) {
  CheckReport rep;
  if (orient.degree != pr.degree) {
    rep.fail("orientation and pairing disagree on the top degree");
    return rep;
  }
  Orientation<K> fromPr = orientationFromPairing(alg, pr);
  if (!(fromPr.row == orient.row))
    rep.fail("pairing against the unit does not reproduce the orientation");
  CyclicPairing<K> fromOr = pairingFromOrientation(alg, orient);
  for (int i = 0; i <= pr.degree; ++i)
    if (!(fromOr.gram[i] == pr.gram[i])) {
      rep.fail("orientation of products does not reproduce the pairing in degree " +
               std::to_string(i));
      break;
    }
  return rep;
}

}  // namespace cdga
