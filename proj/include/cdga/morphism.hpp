#pragma once

#include "cdga/homology.hpp"

namespace cdga {

/// Verdicts on one degree-preserving linear map between two algebras.
/// `orientationCompatible` is absent when either side carries no orientation.
struct MorphismReport {
  bool chainMap = false;
  bool multiplicative = false;
  bool unital = false;
  bool quasiIso = false;
  std::optional<bool> orientationCompatible;
  int comparedThrough = 0;  // homology was compared in degrees up to here

  bool ok() const {
    return chainMap && multiplicative && unital && quasiIso && orientationCompatible.value_or(true);
  }
};

/// Checks whether f respects the differential, the product, the unit, the
/// homology (an isomorphism in every degree both sides can vouch for), and
/// the orientations.
///
/// Homology is compared through min(trusted source, trusted target) — a
/// truncated side cannot vouch for its boundary degree, an untruncated side
/// vouches for everything (its homology is genuinely zero past its basis).
template <class K>
MorphismReport checkMorphism(const GradedLinearMap<K>& f, const OrientedAlgebra<K>& src,
                             const OrientedAlgebra<K>& dst) {
  const Algebra<K>& a = src.alg;
  const Algebra<K>& b = dst.alg;
  if (f.shift != 0) throw std::invalid_argument("a morphism must preserve degree");
  for (int d = 0; d <= a.space.maxDegree(); ++d)
    if (f.block(d).rows() != b.space.dim(d) || f.block(d).cols() != a.space.dim(d))
      throw std::invalid_argument("morphism blocks do not match the two spaces");

  MorphismReport rep;

  rep.chainMap = true;
  for (int d = 0; d <= a.space.maxDegree() && rep.chainMap; ++d) {
    Matrix<K> viaSrc = (d + 1 <= a.space.maxDegree())
                           ? f.block(d + 1) * a.d.block(d)
                           : Matrix<K>(b.space.dim(d + 1), a.space.dim(d));
    Matrix<K> viaDst = (d <= b.space.maxDegree())
                           ? b.d.block(d) * f.block(d)
                           : Matrix<K>(b.space.dim(d + 1), a.space.dim(d));
    if (!(viaSrc == viaDst)) rep.chainMap = false;
  }

  Elt<K> unitImage = f.apply(a.unitElt());
  rep.unital = unitImage.v == b.unitElt().v;

  rep.multiplicative = true;
  for (int da = 0; da <= a.space.maxDegree() && rep.multiplicative; ++da)
    for (int db = 0; db <= a.space.maxDegree() && rep.multiplicative; ++db) {
      int sum = da + db;
      if (b.space.dim(sum) == 0) continue;  // both sides land in the zero space
      for (int ia = 0; ia < a.space.dim(da) && rep.multiplicative; ++ia)
        for (int ib = 0; ib < a.space.dim(db); ++ib) {
          Vec<K> lhs = zeroVec<K>(b.space.dim(sum));
          if (sum <= a.space.maxDegree()) lhs = f.block(sum).apply(a.mulBasis(da, ia, db, ib));
          Elt<K> fx{da, f.block(da).column(ia)};
          Elt<K> fy{db, f.block(db).column(ib)};
          Vec<K> rhs = b.mul(fx, fy).v;
          if (!(lhs == rhs)) {
            rep.multiplicative = false;
            break;
          }
        }
    }

  HomologyData<K> ha = computeHomology(a);
  HomologyData<K> hb = computeHomology(b);
  int scanTop = std::max(a.space.maxDegree(), b.space.maxDegree());
  rep.comparedThrough = std::min({scanTop,
                                  a.truncation ? *a.truncation - 1 : scanTop,
                                  b.truncation ? *b.truncation - 1 : scanTop});
  rep.quasiIso = true;
  for (int d = 0; d <= rep.comparedThrough && rep.quasiIso; ++d) {
    if (ha.dim(d) != hb.dim(d)) {
      rep.quasiIso = false;
      break;
    }
    if (ha.dim(d) == 0) continue;
    Matrix<K> induced(hb.dim(d), ha.dim(d));
    for (int j = 0; j < ha.dim(d); ++j) {
      Elt<K> rep_j{d, ha.reps[d].column(j)};
      Elt<K> image = (d <= a.space.maxDegree()) ? f.apply(rep_j) : Elt<K>{d, {}};
      if (static_cast<int>(image.v.size()) != b.space.dim(d)) image.v = zeroVec<K>(b.space.dim(d));
      std::optional<Vec<K>> cls = hb.classOf(image);
      if (!cls) {
        rep.quasiIso = false;
        break;
      }
      for (int r = 0; r < hb.dim(d); ++r) induced.at(r, j) = (*cls)[r];
    }
    if (rep.quasiIso && rank(induced) != induced.rows()) rep.quasiIso = false;
  }

  if (src.orient && dst.orient) {
    bool compatible = src.orient->degree == dst.orient->degree;
    int n = src.orient->degree;
    if (compatible)
      for (int j = 0; j < ha.dim(n); ++j) {
        Elt<K> rep_j{n, ha.reps[n].column(j)};
        Elt<K> image = f.apply(rep_j);
        if (!(dst.orient->value(image) == src.orient->value(rep_j))) {
          compatible = false;
          break;
        }
      }
    rep.orientationCompatible = compatible;
  }

  return rep;
}

/// Whether f carries the source pairing to the target pairing on the nose:
/// F_i^T G'_i F_{n-i} = G_i in every degree.
template <class K>
bool preservesPairing(const GradedLinearMap<K>& f, const CyclicPairing<K>& src,
                      const CyclicPairing<K>& dst) {
  if (src.degree != dst.degree) return false;
  int n = src.degree;
  for (int i = 0; i <= n; ++i) {
    if (src.gram[i].rows() == 0 || src.gram[i].cols() == 0) continue;
    Matrix<K> pushed = f.block(i).transpose() * dst.gram[i] * f.block(n - i);
    if (!(pushed == src.gram[i])) return false;
  }
  return true;
}

/// Whether every block of f has full column rank (f is degreewise injective).
template <class K>
bool injectiveDegreewise(const GradedLinearMap<K>& f) {
  for (const Matrix<K>& b : f.blocks)
    if (b.cols() > 0 && rank(b) != b.cols()) return false;
  return true;
}

}  // namespace cdga
