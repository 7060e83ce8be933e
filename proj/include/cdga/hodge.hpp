#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdga/cyclic.hpp"
#include "cdga/homology.hpp"

namespace cdga {

/// A degreewise splitting of a complex into three summands, each given by its
/// columns in chain coordinates:
///   h  — harmonic: closed vectors whose classes form a homology basis,
///   im — exact: the image of the differential,
///   c  — coexact: a complement on which the differential is injective.
template <class K>
struct HodgeData {
  std::vector<Matrix<K>> h;
  std::vector<Matrix<K>> im;
  std::vector<Matrix<K>> c;

  int maxDegree() const { return static_cast<int>(h.size()) - 1; }
};

/// A change of the harmonic and coexact complements inside a fixed splitting,
/// indexed by degree. All blocks are expressed in the coordinates of the
/// splitting they modify:
///   eta[d] : harmonic -> exact      (im-columns x h-columns)
///   mu1[d] : coexact  -> harmonic   (h-columns  x c-columns)
///   mu2[d] : coexact  -> exact      (im-columns x c-columns)
/// The new harmonic part is {x + eta(x)}, the new coexact part is
/// {mu1(y) + mu2(y) + y}. Blocks may be omitted (or left 0x0) to mean zero.
template <class K>
struct TwistMaps {
  std::vector<Matrix<K>> eta;
  std::vector<Matrix<K>> mu1;
  std::vector<Matrix<K>> mu2;
};

/// A machine-checkable reason why no exact-direction shear of the coexact
/// complements can make them pair to zero: two witnesses, in chain
/// coordinates, that lie in the coexact parts of complementary degrees, pair
/// to zero with everything exact, yet pair nontrivially with each other.
/// Their pairing value is invariant under every such shear.
template <class K>
struct TwistObstruction {
  int degreeA = 0;
  int degreeB = 0;
  Vec<K> witnessA;
  Vec<K> witnessB;
  std::string note;
};

/// Result of searching for an exact-direction shear: either the shear (as the
/// mu2 component of a TwistMaps) or an obstruction certificate.
template <class K>
struct TwistOutcome {
  bool feasible = false;
  TwistMaps<K> maps;
  std::optional<TwistObstruction<K>> obstruction;
};

/// A splitting produced by applying twist maps, together with directly
/// evaluated verdicts on the result.
template <class K>
struct TwistedSplitting {
  HodgeData<K> data;
  bool validSplitting = false;  // still a three-part decomposition
  bool hOrthogonal = false;     // harmonic and coexact parts orthogonal
  bool hodge = false;           // additionally, coexact pairs to zero with itself
};

/// A complex obtained by collapsing the radical of the pairing, with the
/// projection, a chosen section, the induced (nondegenerate) pairing, and a
/// literal acyclicity verdict on the collapsed part.
template <class K>
struct QuotientComplex {
  Complex<K> complex;
  GradedLinearMap<K> projection;  // blocks per source degree
  GradedLinearMap<K> inclusion;   // blocks per quotient degree; columns are standard vectors
  CyclicPairing<K> pairing;
  std::vector<Matrix<K>> degenerate;
  bool quasiIso = false;
};

/// The same collapse performed on an oriented algebra: the radical is a
/// differential ideal, so the quotient carries an induced algebra structure
/// and orientation.
template <class K>
struct QuotientAlgebra {
  OrientedAlgebra<K> doc;
  GradedLinearMap<K> projection;
  GradedLinearMap<K> inclusion;
  std::vector<Matrix<K>> degenerate;
  bool quasiIso = false;
};

namespace detail {

/// The pairing block between degrees i and n-i, extended by zero-width blocks
/// outside the stored range so degree arithmetic never needs special cases.
template <class K>
Matrix<K> gramBlock(const CyclicPairing<K>& pr, const GradedVectorSpace& sp, int i) {
  if (i >= 0 && i <= pr.degree) return pr.gram[i];
  return Matrix<K>(sp.dim(i), sp.dim(pr.degree - i));
}

/// vec[d] when d indexes a stored degree, else an empty block of the right
/// height.
template <class K>
Matrix<K> splitBlock(const std::vector<Matrix<K>>& vec, const GradedVectorSpace& sp, int d) {
  if (d >= 0 && d < static_cast<int>(vec.size())) return vec[d];
  return Matrix<K>(sp.dim(d), 0);
}

template <class K>
Vec<K> rowOf(const Matrix<K>& m, int r) {
  Vec<K> v(m.cols(), K(0));
  for (int c = 0; c < m.cols(); ++c) v[c] = m.at(r, c);
  return v;
}

template <class K>
K dot(const Vec<K>& x, const Vec<K>& y) {
  K acc(0);
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class K>
TwistMaps<K> zeroShapedMaps(const Complex<K>& cx, const HodgeData<K>& hd) {
  int top = cx.space.maxDegree();
  TwistMaps<K> m;
  m.eta.resize(top + 1);
  m.mu1.resize(top + 1);
  m.mu2.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    m.eta[d] = Matrix<K>(hd.im[d].cols(), hd.h[d].cols());
    m.mu1[d] = Matrix<K>(hd.h[d].cols(), hd.c[d].cols());
    m.mu2[d] = Matrix<K>(hd.im[d].cols(), hd.c[d].cols());
  }
  return m;
}

/// Resolves one block of a TwistMaps to the expected shape, treating missing
/// or 0x0 blocks as zero and rejecting any other mismatch.
template <class K>
Matrix<K> blockOrEmpty(const std::vector<Matrix<K>>& vec, int d, int rows, int cols,
                       const char* what) {
  if (d >= static_cast<int>(vec.size())) return Matrix<K>(rows, cols);
  const Matrix<K>& m = vec[d];
  if (m.rows() == 0 && m.cols() == 0) return Matrix<K>(rows, cols);
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument(std::string(what) + " block has the wrong shape in degree " +
                                std::to_string(d));
  return m;
}

}  // namespace detail

/// Splits a complex along its differential: harmonic representatives from the
/// homology computation, the exact image, and the first standard vectors
/// completing the cycles as the coexact part. Deterministic.
template <class K>
HodgeData<K> splitComplex(const Complex<K>& cx, const HomologyData<K>& hom) {
  int top = cx.space.maxDegree();
  HodgeData<K> hd;
  hd.h.resize(top + 1);
  hd.im.resize(top + 1);
  hd.c.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    hd.h[d] = hom.reps[d];
    hd.im[d] = hom.boundaries[d];
    std::vector<int> picked =
        independentExtension(hom.cycles[d], Matrix<K>::identity(cx.space.dim(d)));
    Matrix<K> c(cx.space.dim(d), static_cast<int>(picked.size()));
    for (int j = 0; j < c.cols(); ++j) c.at(picked[j], j) = K(1);
    hd.c[d] = std::move(c);
  }
  return hd;
}

template <class K>
HodgeData<K> splitComplex(const Complex<K>& cx) {
  return splitComplex(cx, computeHomology(cx));
}

/// Certifies the three-part shape: the blocks form a basis in every degree,
/// harmonic columns are closed, the exact block is precisely the image of the
/// differential, and the differential is injective on the coexact block.
template <class K>
CheckReport checkDecomposition(const Complex<K>& cx, const HodgeData<K>& hd) {
  CheckReport rep;
  int top = cx.space.maxDegree();
  if (static_cast<int>(hd.h.size()) != top + 1 || static_cast<int>(hd.im.size()) != top + 1 ||
      static_cast<int>(hd.c.size()) != top + 1) {
    rep.fail("splitting blocks do not cover every degree of the space");
    return rep;
  }
  for (int d = 0; d <= top; ++d) {
    int nd = cx.space.dim(d);
    if (hd.h[d].rows() != nd || hd.im[d].rows() != nd || hd.c[d].rows() != nd) {
      rep.fail("degree " + std::to_string(d) + ": block heights do not match the space");
      return rep;
    }
  }
  for (int d = 0; d <= top; ++d) {
    int nd = cx.space.dim(d);
    std::string deg = std::to_string(d);
    Matrix<K> basis = hd.h[d].hcat(hd.im[d]).hcat(hd.c[d]);
    if (basis.cols() != nd || (nd > 0 && rank(basis) != nd))
      rep.fail("degree " + deg + ": the three blocks do not form a basis");
    if (!(cx.d.block(d) * hd.h[d]).isZeroMatrix())
      rep.fail("degree " + deg + ": harmonic columns are not closed");
    if (d == 0) {
      if (hd.im[0].cols() != 0) rep.fail("degree 0: nothing can be exact");
    } else {
      const Matrix<K>& dm = cx.d.block(d - 1);
      if (hd.im[d].cols() != rank(dm) || !solveColumns(dm, hd.im[d]))
        rep.fail("degree " + deg + ": the exact block is not the image of the differential");
    }
    if (hd.c[d].cols() > 0 && rank(cx.d.block(d) * hd.c[d]) != hd.c[d].cols())
      rep.fail("degree " + deg + ": the differential is not injective on the coexact block");
  }
  return rep;
}

/// checkDecomposition plus orthogonality: closed vectors pair to zero with
/// exact ones (a consequence of the pairing laws, re-verified on the data),
/// and harmonic vectors pair to zero with coexact ones.
template <class K>
CheckReport checkHOrthogonal(const Complex<K>& cx, const CyclicPairing<K>& pr,
                             const HodgeData<K>& hd) {
  CheckReport rep = checkDecomposition(cx, hd);
  if (!rep.ok()) return rep;
  int n = pr.degree;
  int top = cx.space.maxDegree();
  for (int i = 0; i <= std::min(n, top); ++i) {
    int j = n - i;
    Matrix<K> g = detail::gramBlock(pr, cx.space, i);
    Matrix<K> closed = hd.h[i].hcat(hd.im[i]);
    if (!(closed.transpose() * g * detail::splitBlock(hd.im, cx.space, j)).isZeroMatrix())
      rep.fail("degrees " + std::to_string(i) + " and " + std::to_string(j) +
               ": closed and exact vectors pair nontrivially");
    if (!(hd.h[i].transpose() * g * detail::splitBlock(hd.c, cx.space, j)).isZeroMatrix())
      rep.fail("degrees " + std::to_string(i) + " and " + std::to_string(j) +
               ": harmonic and coexact vectors pair nontrivially");
  }
  return rep;
}

/// checkHOrthogonal plus self-orthogonality of the coexact part across
/// complementary degrees.
template <class K>
CheckReport checkHodge(const Complex<K>& cx, const CyclicPairing<K>& pr, const HodgeData<K>& hd) {
  CheckReport rep = checkHOrthogonal(cx, pr, hd);
  if (!rep.ok()) return rep;
  int n = pr.degree;
  int top = cx.space.maxDegree();
  for (int i = 0; i <= std::min(n, top); ++i) {
    Matrix<K> g = detail::gramBlock(pr, cx.space, i);
    if (!(hd.c[i].transpose() * g * detail::splitBlock(hd.c, cx.space, n - i)).isZeroMatrix())
      rep.fail("degrees " + std::to_string(i) + " and " + std::to_string(n - i) +
               ": coexact vectors pair nontrivially");
  }
  return rep;
}

namespace detail {

template <class K>
HodgeData<K> hOrthogonalizeImpl(const Complex<K>& cx, const CyclicPairing<K>& pr,
                                const std::vector<Matrix<K>>* harmonicBasis) {
  int top = cx.space.maxDegree();
  int n = pr.degree;
  HomologyData<K> hom = computeHomology(cx);
  HodgeData<K> hd = splitComplex(cx, hom);

  if (harmonicBasis) {
    const auto& hb = *harmonicBasis;
    if (static_cast<int>(hb.size()) != top + 1)
      throw std::invalid_argument("harmonic basis must provide one block per degree");
    for (int d = 0; d <= top; ++d) {
      if (hb[d].rows() != cx.space.dim(d) || hb[d].cols() != hom.reps[d].cols())
        throw std::invalid_argument("harmonic block has the wrong shape in degree " +
                                    std::to_string(d));
      if (!(cx.d.block(d) * hb[d]).isZeroMatrix())
        throw std::invalid_argument("harmonic columns must be closed (degree " +
                                    std::to_string(d) + ")");
      int hdim = hom.reps[d].cols();
      Matrix<K> classes(hdim, hdim);
      for (int j = 0; j < hdim; ++j) {
        std::optional<Vec<K>> cls = hom.classOf(Elt<K>{d, hb[d].column(j)});
        for (int r = 0; r < hdim; ++r) classes.at(r, j) = (*cls)[r];
      }
      if (hdim > 0 && rank(classes) != hdim)
        throw std::invalid_argument("supplied columns do not span homology in degree " +
                                    std::to_string(d));
    }
    hd.h = hb;
  }

  // The correction below inverts the homology pairing, so it must be perfect
  // in every complementary pair of degrees up to the pairing degree.
  auto hdim = [&](int i) { return (i >= 0 && i <= top) ? hd.h[i].cols() : 0; };
  for (int i = 0; i <= n; ++i) {
    int j = n - i;
    if (hdim(i) != hdim(j))
      throw std::invalid_argument("homology dimensions differ between degrees " +
                                  std::to_string(i) + " and " + std::to_string(j) +
                                  ", so the homology pairing cannot be perfect");
    if (hdim(i) == 0) continue;
    Matrix<K> gi = gramBlock(pr, cx.space, i);
    Matrix<K> hg = hd.h[i].transpose() * gi * hd.h[j];
    if (rank(hg) != hdim(i))
      throw std::invalid_argument("the homology pairing is degenerate in degree " +
                                  std::to_string(i));
  }

  // Subtract from each coexact column its harmonic shadow: the unique
  // harmonic combination with the same pairing values against the
  // complementary harmonics.
  for (int d = 0; d <= top; ++d) {
    int j = n - d;
    if (hd.c[d].cols() == 0 || hdim(j) == 0) continue;
    Matrix<K> a = gramBlock(pr, cx.space, d) * hd.h[j];      // dim(d) x hdim(j)
    Matrix<K> g = (hd.h[d].transpose() * a).transpose();     // hdim(j) x hdim(d)
    Matrix<K> t = (hd.c[d].transpose() * a).transpose();     // hdim(j) x cdim
    std::optional<Matrix<K>> ginv = inverseMatrix(g);
    if (!ginv) throw std::logic_error("internal: perfect homology pairing failed to invert");
    hd.c[d] = hd.c[d] - hd.h[d] * (*ginv * t);
  }
  return hd;
}

}  // namespace detail

/// Rebuilds the splitting so the coexact part pairs to zero with the
/// harmonics, using the homology representatives as the harmonic basis.
/// Throws std::invalid_argument when the homology pairing is not perfect in
/// the degrees the correction needs.
template <class K>
HodgeData<K> hOrthogonalize(const Complex<K>& cx, const CyclicPairing<K>& pr) {
  return detail::hOrthogonalizeImpl<K>(cx, pr, nullptr);
}

/// Same, honoring a caller-chosen harmonic basis (one block per degree,
/// closed columns whose classes span homology).
template <class K>
HodgeData<K> hOrthogonalize(const Complex<K>& cx, const CyclicPairing<K>& pr,
                            const std::vector<Matrix<K>>& harmonicBasis) {
  return detail::hOrthogonalizeImpl<K>(cx, pr, &harmonicBasis);
}

/// The contraction determined by a splitting: it inverts the differential
/// from the exact part back into the coexact part of the degree below and
/// kills the harmonic and coexact parts. Satisfies, degree by degree,
///   h D + D h = (projection onto the harmonic part) - identity,
///   h h = 0.
/// Throws std::invalid_argument when the blocks do not decompose the space.
template <class K>
GradedLinearMap<K> standardHomotopy(const Complex<K>& cx, const HodgeData<K>& hd) {
  int top = cx.space.maxDegree();
  if (static_cast<int>(hd.h.size()) != top + 1 || static_cast<int>(hd.im.size()) != top + 1 ||
      static_cast<int>(hd.c.size()) != top + 1)
    throw std::invalid_argument("splitting blocks do not cover every degree of the space");

  GradedLinearMap<K> h;
  h.shift = -1;
  h.blocks.resize(top + 1);
  std::vector<Matrix<K>> harmonicProj(top + 1);

  for (int d = 0; d <= top; ++d) {
    int nd = cx.space.dim(d);
    Matrix<K> dc = (d >= 1) ? cx.d.block(d - 1) * hd.c[d - 1] : Matrix<K>(nd, 0);
    Matrix<K> basis = hd.h[d].hcat(dc).hcat(hd.c[d]);
    std::optional<Matrix<K>> inv;
    if (basis.rows() == nd && basis.cols() == nd) inv = inverseMatrix(basis);
    if (!inv)
      throw std::invalid_argument(
          "degree " + std::to_string(d) +
          ": harmonic, differentiated-coexact, and coexact columns must form a basis");
    int hdim = hd.h[d].cols();
    int k = dc.cols();
    Matrix<K> alpha(hdim, nd);
    for (int r = 0; r < hdim; ++r)
      for (int c = 0; c < nd; ++c) alpha.at(r, c) = inv->at(r, c);
    Matrix<K> beta(k, nd);
    for (int r = 0; r < k; ++r)
      for (int c = 0; c < nd; ++c) beta.at(r, c) = inv->at(hdim + r, c);
    harmonicProj[d] = hd.h[d] * alpha;
    h.blocks[d] = (d >= 1) ? (hd.c[d - 1] * beta).scaled(K(-1)) : Matrix<K>(0, nd);
  }

  // The construction satisfies the contraction identities exactly; verify
  // them anyway so corrupted inputs cannot smuggle a wrong operator out.
  for (int d = 0; d <= top; ++d) {
    int nd = cx.space.dim(d);
    Matrix<K> viaUp = ((d < top) ? h.blocks[d + 1] : Matrix<K>(nd, 0)) * cx.d.block(d);
    Matrix<K> viaDown = (d >= 1) ? cx.d.block(d - 1) * h.blocks[d] : Matrix<K>(nd, nd);
    Matrix<K> want = harmonicProj[d] - Matrix<K>::identity(nd);
    if (!(viaUp + viaDown == want))
      throw std::logic_error("internal: contraction identity failed in degree " +
                             std::to_string(d));
    if (!(h.blocks[d] * hd.h[d]).isZeroMatrix() || !(h.blocks[d] * hd.c[d]).isZeroMatrix())
      throw std::logic_error("internal: contraction does not kill its complement in degree " +
                             std::to_string(d));
    if (d >= 1 && !(h.blocks[d - 1] * h.blocks[d]).isZeroMatrix())
      throw std::logic_error("internal: contraction does not square to zero in degree " +
                             std::to_string(d));
  }
  return h;
}

/// The radical of the pairing, degree by degree: all vectors pairing to zero
/// with the entire complementary degree. Degrees without a stored
/// complementary partner are wholly degenerate.
template <class K>
std::vector<Matrix<K>> degenerateSubspace(const GradedVectorSpace& sp, const CyclicPairing<K>& pr) {
  int top = sp.maxDegree();
  std::vector<Matrix<K>> perp(top + 1);
  for (int i = 0; i <= top; ++i)
    perp[i] = Matrix<K>::fromColumns(kernelBasis(detail::gramBlock(pr, sp, i).transpose()),
                                     sp.dim(i));
  return perp;
}

/// The radical computed on an algebra, verified to be a differential ideal —
/// which the pairing laws force, so a violation indicates corrupted data and
/// throws std::logic_error.
template <class K>
std::vector<Matrix<K>> degenerateSubspace(const Algebra<K>& alg, const CyclicPairing<K>& pr) {
  std::vector<Matrix<K>> perp = degenerateSubspace(alg.space, pr);
  int top = alg.space.maxDegree();
  for (int d = 0; d < top; ++d) {
    if (perp[d].cols() == 0) continue;
    Matrix<K> img = alg.d.block(d) * perp[d];
    if (img.isZeroMatrix()) continue;
    if (!solveColumns(perp[d + 1], img))
      throw std::logic_error("degenerate subspace is not closed under the differential (degree " +
                             std::to_string(d) + ")");
  }
  for (int da = 0; da <= top; ++da)
    for (int i = 0; i <= top; ++i) {
      int target = da + i;
      if (target > top || perp[i].cols() == 0 || alg.space.dim(da) == 0 ||
          alg.space.dim(target) == 0)
        continue;
      std::vector<Vec<K>> cols;
      for (int r = 0; r < alg.space.dim(da); ++r) {
        Elt<K> x = basisElt<K>(alg.space, da, r);
        for (int c = 0; c < perp[i].cols(); ++c)
          cols.push_back(alg.mul(x, Elt<K>{i, perp[i].column(c)}).v);
      }
      Matrix<K> prods = Matrix<K>::fromColumns(cols, alg.space.dim(target));
      if (prods.isZeroMatrix()) continue;
      if (!solveColumns(perp[target], prods))
        throw std::logic_error(
            "degenerate subspace does not absorb multiplication (degrees " +
            std::to_string(da) + " x " + std::to_string(i) + ")");
    }
  return perp;
}

/// Collapses the radical of the pairing. The quotient basis consists of the
/// first standard vectors independent of the radical (labels inherited),
/// trailing empty degrees are dropped, and the induced pairing is
/// nondegenerate by construction. Throws std::invalid_argument when the
/// radical is not a subcomplex (no induced differential exists then).
template <class K>
QuotientComplex<K> nondegQuotient(const Complex<K>& cx, const CyclicPairing<K>& pr) {
  int top = cx.space.maxDegree();
  QuotientComplex<K> out;
  out.degenerate = degenerateSubspace(cx.space, pr);
  const std::vector<Matrix<K>>& perp = out.degenerate;

  // The radical must be a subcomplex; record the differential restricted to
  // it, in radical coordinates, for the acyclicity verdict below.
  std::vector<Matrix<K>> perpD(top + 1);
  for (int d = 0; d <= top; ++d) {
    Matrix<K> img = cx.d.block(d) * perp[d];
    Matrix<K> next = (d + 1 <= top) ? perp[d + 1] : Matrix<K>(0, 0);
    std::optional<Matrix<K>> coords = solveColumns(next, img);
    if (!coords)
      throw std::invalid_argument(
          "the degenerate subspace is not a subcomplex, so no quotient complex exists");
    perpD[d] = std::move(*coords);
  }

  std::vector<std::vector<int>> picked(top + 1);
  int qtop = -1;
  for (int d = 0; d <= top; ++d) {
    picked[d] = independentExtension(perp[d], Matrix<K>::identity(cx.space.dim(d)));
    if (!picked[d].empty()) qtop = d;
  }

  GradedVectorSpace qs;
  qs.labels.resize(qtop + 1);
  for (int d = 0; d <= qtop; ++d)
    for (int idx : picked[d]) qs.labels[d].push_back(cx.space.labels[d][idx]);
  out.complex.field = cx.field;
  out.complex.space = qs;

  out.inclusion.shift = 0;
  out.inclusion.blocks.resize(qtop + 1);
  out.projection.shift = 0;
  out.projection.blocks.resize(top + 1);
  for (int d = 0; d <= top; ++d) {
    int nd = cx.space.dim(d);
    int qd = (d <= qtop) ? static_cast<int>(picked[d].size()) : 0;
    Matrix<K> incl(nd, qd);
    for (int c = 0; c < qd; ++c) incl.at(picked[d][c], c) = K(1);
    Matrix<K> full = incl.hcat(perp[d]);
    std::optional<Matrix<K>> inv;
    if (full.cols() == nd) inv = inverseMatrix(full);
    if (!inv) throw std::logic_error("internal: radical complement failed to close a basis");
    Matrix<K> proj(qd, nd);
    for (int r = 0; r < qd; ++r)
      for (int c = 0; c < nd; ++c) proj.at(r, c) = inv->at(r, c);
    out.projection.blocks[d] = std::move(proj);
    if (d <= qtop) out.inclusion.blocks[d] = std::move(incl);
  }

  out.complex.d = GradedLinearMap<K>::zero(qs, qs, 1);
  for (int d = 0; d < qtop; ++d) {
    if (qs.dim(d) == 0 || qs.dim(d + 1) == 0) continue;
    out.complex.d.blocks[d] =
        out.projection.blocks[d + 1] * (cx.d.block(d) * out.inclusion.blocks[d]);
  }

  out.pairing.degree = pr.degree;
  out.pairing.gram.resize(pr.degree + 1);
  for (int i = 0; i <= pr.degree; ++i) {
    int j = pr.degree - i;
    Matrix<K> left = (i >= 0 && i <= qtop) ? out.inclusion.blocks[i]
                                           : Matrix<K>(cx.space.dim(i), 0);
    Matrix<K> right = (j >= 0 && j <= qtop) ? out.inclusion.blocks[j]
                                            : Matrix<K>(cx.space.dim(j), 0);
    out.pairing.gram[i] = left.transpose() * detail::gramBlock(pr, cx.space, i) * right;
    if (out.pairing.gram[i].rows() != out.pairing.gram[i].cols())
      throw std::logic_error("internal: induced pairing block is not square in degree " +
                             std::to_string(i));
    if (out.pairing.gram[i].rows() > 0 &&
        rank(out.pairing.gram[i]) != out.pairing.gram[i].rows())
      throw std::logic_error("internal: induced pairing is degenerate in degree " +
                             std::to_string(i));
  }

  // The projection is a quasi-isomorphism exactly when the collapsed part is
  // acyclic; report that literally, on the stored degrees.
  GradedVectorSpace ps;
  ps.labels.resize(top + 1);
  for (int d = 0; d <= top; ++d)
    for (int k = 0; k < perp[d].cols(); ++k)
      ps.labels[d].push_back("r" + std::to_string(d) + "_" + std::to_string(k));
  GradedLinearMap<K> pd;
  pd.shift = 1;
  pd.blocks = perpD;
  HomologyData<K> ph = computeHomology(ps, pd);
  out.quasiIso = true;
  for (int d = 0; d <= top; ++d)
    if (ph.dim(d) != 0) {
      out.quasiIso = false;
      break;
    }
  return out;
}

/// Collapses the radical of an oriented algebra's pairing. The radical is
/// verified to be a differential ideal, so the projection is an algebra
/// morphism and the quotient inherits products, unit, and orientation. The
/// quotient stores no truncation: its products are exact in every degree it
/// keeps, and everything above its top degree is genuinely zero.
template <class K>
QuotientAlgebra<K> nondegQuotient(const OrientedAlgebra<K>& src) {
  if (!src.orient)
    throw std::invalid_argument("collapsing the radical needs an orientation to define the pairing");
  const Algebra<K>& alg = src.alg;
  CyclicPairing<K> pr = pairingFromOrientation(alg, *src.orient);
  std::vector<Matrix<K>> perp = degenerateSubspace(alg, pr);
  QuotientComplex<K> qc = nondegQuotient(alg.asComplex(), pr);

  QuotientAlgebra<K> out;
  out.projection = qc.projection;
  out.inclusion = qc.inclusion;
  out.degenerate = std::move(perp);
  out.quasiIso = qc.quasiIso;

  Algebra<K>& q = out.doc.alg;
  q.field = alg.field;
  q.name = alg.name.empty() ? "quotient" : alg.name + "-quotient";
  q.space = qc.complex.space;
  q.d = qc.complex.d;
  q.truncation = std::nullopt;

  int qtop = q.space.maxDegree();
  int unitPos = -1;
  if (qtop >= 0)
    for (int c = 0; c < out.inclusion.blocks[0].cols(); ++c)
      if (!isZero(out.inclusion.blocks[0].at(alg.unitIndex, c))) {
        unitPos = c;
        break;
      }
  if (unitPos < 0)
    throw std::logic_error("the unit pairs to zero with everything, so no unital quotient exists");
  q.unitIndex = unitPos;

  for (int da = 0; da <= qtop; ++da)
    for (int db = 0; db <= qtop; ++db) {
      int ds = da + db;
      if (ds > qtop || q.space.dim(da) == 0 || q.space.dim(db) == 0 || q.space.dim(ds) == 0)
        continue;
      for (int ia = 0; ia < q.space.dim(da); ++ia)
        for (int ib = 0; ib < q.space.dim(db); ++ib) {
          Elt<K> x{da, out.inclusion.blocks[da].column(ia)};
          Elt<K> y{db, out.inclusion.blocks[db].column(ib)};
          Vec<K> image = out.projection.blocks[ds].apply(alg.mul(x, y).v);
          std::vector<std::pair<int, K>> entries;
          for (int r = 0; r < static_cast<int>(image.size()); ++r)
            if (!isZero(image[r])) entries.push_back({r, image[r]});
          if (!entries.empty()) q.prod[ProdKey{da, ia, db, ib}] = std::move(entries);
        }
    }

  Orientation<K> orQ;
  orQ.degree = src.orient->degree;
  orQ.row = zeroVec<K>(q.space.dim(orQ.degree));
  if (orQ.degree <= qtop)
    for (int a = 0; a < q.space.dim(orQ.degree); ++a) {
      Vec<K> col = out.inclusion.blocks[orQ.degree].column(a);
      K acc(0);
      for (std::size_t r = 0; r < col.size() && r < src.orient->row.size(); ++r)
        acc += src.orient->row[r] * col[r];
      orQ.row[a] = acc;
    }
  out.doc.orient = std::move(orQ);
  return out;
}

namespace detail {

template <class K>
struct TwistPairResult {
  std::optional<TwistObstruction<K>> obstruction;
  Matrix<K> lower;  // shear block for the lower degree of the pair
  Matrix<K> upper;  // shear block for the upper degree (same block when equal)
};

/// Completes kernel columns to a basis by standard vectors and returns the
/// assembled invertible matrix.
template <class K>
Matrix<K> kernelCompletion(const Matrix<K>& kmat) {
  Matrix<K> t = kmat;
  for (int idx : independentExtension(kmat, Matrix<K>::identity(kmat.rows()))) {
    Vec<K> e(kmat.rows(), K(0));
    e[idx] = K(1);
    t = t.hcat(Matrix<K>::fromColumns({e}, kmat.rows()));
  }
  return t;
}

/// Solves the self-pairing equation for one complementary pair of degrees
/// (i, n-i): find exact-direction shears of both coexact blocks making them
/// pair to zero, or certify that none exist.
template <class K>
TwistPairResult<K> solveTwistPair(const Complex<K>& cx, const CyclicPairing<K>& pr,
                                  const HodgeData<K>& hd, int i) {
  int n = pr.degree;
  int j = n - i;
  Matrix<K> imi = splitBlock(hd.im, cx.space, i);
  Matrix<K> ci = splitBlock(hd.c, cx.space, i);
  Matrix<K> imj = splitBlock(hd.im, cx.space, j);
  Matrix<K> cj = splitBlock(hd.c, cx.space, j);
  Matrix<K> g = gramBlock(pr, cx.space, i);

  TwistPairResult<K> out;
  out.lower = Matrix<K>(imi.cols(), ci.cols());
  out.upper = (i == j) ? out.lower : Matrix<K>(imj.cols(), cj.cols());
  if (ci.cols() == 0 || cj.cols() == 0) return out;

  Matrix<K> B = ci.transpose() * g * cj;
  Matrix<K> A = imi.transpose() * g * cj;

  if (i == j) {
    // One unknown shear M; the equation couples M with its own transpose, and
    // a solution exists exactly when the self-pairing vanishes on the part of
    // the coexact block that nothing exact can see.
    std::vector<Vec<K>> kv = kernelBasis(A);
    for (std::size_t a = 0; a < kv.size(); ++a)
      for (std::size_t b = 0; b < kv.size(); ++b) {
        K val = dot(kv[a], B.apply(kv[b]));
        if (!isZero(val)) {
          TwistObstruction<K> ob;
          ob.degreeA = i;
          ob.degreeB = j;
          ob.witnessA = ci.apply(kv[a]);
          ob.witnessB = cj.apply(kv[b]);
          ob.note =
              "both witnesses pair to zero with everything exact, so their nonzero pairing "
              "value survives every exact-direction shear";
          out.obstruction = std::move(ob);
          return out;
        }
      }
    int cdim = ci.cols();
    int p = static_cast<int>(kv.size());
    Matrix<K> t = kernelCompletion(Matrix<K>::fromColumns(kv, cdim));
    std::optional<Matrix<K>> ti = inverseMatrix(t);
    if (!ti) throw std::logic_error("internal: kernel completion is singular");
    Matrix<K> bt = t.transpose() * B * t;
    K half = FieldOps<K>::fromInt(1, cx.field) / FieldOps<K>::fromInt(2, cx.field);
    Matrix<K> xt(cdim, cdim);
    for (int r = 0; r < p; ++r)
      for (int c = p; c < cdim; ++c) xt.at(r, c) = -bt.at(r, c);
    for (int r = p; r < cdim; ++r)
      for (int c = p; c < cdim; ++c) xt.at(r, c) = -(bt.at(r, c) * half);
    Matrix<K> x = ti->transpose() * xt * (*ti);
    Matrix<K> at = A.transpose();
    Matrix<K> m(imi.cols(), cdim);
    for (int a = 0; a < cdim; ++a) {
      std::optional<Vec<K>> sol = solveLinear(at, rowOf(x, a));
      if (!sol) throw std::logic_error("internal: middle shear system is inconsistent");
      for (int r = 0; r < m.rows(); ++r) m.at(r, a) = (*sol)[r];
    }
    // The construction leaned on the graded symmetry of the pairing; verify
    // the shear equation directly so corrupted data cannot slip through.
    Matrix<K> aStar = ci.transpose() * g * imj;
    if (!(m.transpose() * A + aStar * m + B).isZeroMatrix())
      throw std::invalid_argument(
          "the pairing violates the symmetry the middle-degree shear relies on");
    out.lower = m;
    out.upper = m;
    return out;
  }

  // Distinct degrees: two independent unknowns. The shear on the upper block
  // must absorb what the lower kernel cannot reach, and the lower shear mops
  // up the remainder row by row.
  Matrix<K> aPrime = ci.transpose() * g * imj;
  std::vector<Vec<K>> kv = kernelBasis(A);
  std::vector<Vec<K>> ys;
  for (const Vec<K>& v : kv) {
    Vec<K> rhs = scaleVec(K(-1), B.apply(v));
    std::optional<Vec<K>> y = solveLinear(aPrime, rhs);
    if (!y) {
      for (const Vec<K>& u : kernelBasis(aPrime.transpose())) {
        K val = dot(u, B.apply(v));
        if (!isZero(val)) {
          TwistObstruction<K> ob;
          ob.degreeA = i;
          ob.degreeB = j;
          ob.witnessA = ci.apply(u);
          ob.witnessB = cj.apply(v);
          ob.note =
              "both witnesses pair to zero with everything exact, so their nonzero pairing "
              "value survives every exact-direction shear";
          out.obstruction = std::move(ob);
          return out;
        }
      }
      throw std::logic_error("internal: unsolvable column without a certifying witness");
    }
    ys.push_back(std::move(*y));
  }
  Matrix<K> kmat = Matrix<K>::fromColumns(kv, cj.cols());
  Matrix<K> t = kernelCompletion(kmat);
  std::optional<Matrix<K>> ti = inverseMatrix(t);
  if (!ti) throw std::logic_error("internal: kernel completion is singular");
  Matrix<K> y0(imj.cols(), cj.cols());
  for (int k = 0; k < static_cast<int>(ys.size()); ++k)
    for (int r = 0; r < y0.rows(); ++r) y0.at(r, k) = ys[k][r];
  Matrix<K> mj = y0 * (*ti);
  Matrix<K> rem = (B + aPrime * mj).scaled(K(-1));
  Matrix<K> at = A.transpose();
  Matrix<K> mi(imi.cols(), ci.cols());
  for (int a = 0; a < ci.cols(); ++a) {
    std::optional<Vec<K>> sol = solveLinear(at, rowOf(rem, a));
    if (!sol) throw std::logic_error("internal: residual shear system is inconsistent");
    for (int r = 0; r < mi.rows(); ++r) mi.at(r, a) = (*sol)[r];
  }
  if (!(mi.transpose() * A + aPrime * mj + B).isZeroMatrix())
    throw std::logic_error("internal: shear verification failed");
  out.lower = mi;
  out.upper = mj;
  return out;
}

template <class K>
void requireValidSplitting(const Complex<K>& cx, const HodgeData<K>& hd, const char* who) {
  CheckReport rep = checkDecomposition(cx, hd);
  if (!rep.ok())
    throw std::invalid_argument(std::string(who) + " needs a valid splitting: " +
                                rep.violations.front());
}

}  // namespace detail

/// Checks an obstruction certificate against the data it speaks about:
/// both witnesses lie in the coexact parts of complementary degrees, pair to
/// zero with everything exact there, and pair nontrivially with each other.
template <class K>
bool verifyTwistObstruction(const Complex<K>& cx, const CyclicPairing<K>& pr,
                            const HodgeData<K>& hd, const TwistObstruction<K>& ob) {
  int i = ob.degreeA, j = ob.degreeB;
  if (i + j != pr.degree) return false;
  if (static_cast<int>(ob.witnessA.size()) != cx.space.dim(i) ||
      static_cast<int>(ob.witnessB.size()) != cx.space.dim(j))
    return false;
  Matrix<K> ci = detail::splitBlock(hd.c, cx.space, i);
  Matrix<K> cj = detail::splitBlock(hd.c, cx.space, j);
  if (!spanContains(ci, ob.witnessA) || !spanContains(cj, ob.witnessB)) return false;
  Elt<K> wa{i, ob.witnessA};
  Elt<K> wb{j, ob.witnessB};
  Matrix<K> imi = detail::splitBlock(hd.im, cx.space, i);
  Matrix<K> imj = detail::splitBlock(hd.im, cx.space, j);
  for (int s = 0; s < imj.cols(); ++s)
    if (!isZero(pr.value(wa, Elt<K>{j, imj.column(s)}))) return false;
  for (int r = 0; r < imi.cols(); ++r)
    if (!isZero(pr.value(Elt<K>{i, imi.column(r)}, wb))) return false;
  return !isZero(pr.value(wa, wb));
}

/// Searches for exact-direction shears of the coexact blocks making all
/// complementary pairs of them orthogonal, scanning degree pairs from the
/// outside in. Infeasibility is a value: the outcome carries a certificate
/// for the first obstructed pair instead of throwing.
template <class K>
TwistOutcome<K> solveTwist(const Complex<K>& cx, const CyclicPairing<K>& pr,
                           const HodgeData<K>& hd) {
  detail::requireValidSplitting(cx, hd, "solveTwist");
  TwistOutcome<K> out;
  out.maps = detail::zeroShapedMaps(cx, hd);
  int n = pr.degree;
  int top = cx.space.maxDegree();
  for (int i = 0; 2 * i <= n; ++i) {
    detail::TwistPairResult<K> res = detail::solveTwistPair(cx, pr, hd, i);
    if (res.obstruction) {
      out.feasible = false;
      out.maps = detail::zeroShapedMaps(cx, hd);
      out.obstruction = std::move(res.obstruction);
      return out;
    }
    if (i <= top) out.maps.mu2[i] = std::move(res.lower);
    int j = n - i;
    if (j != i && j <= top) out.maps.mu2[j] = std::move(res.upper);
  }
  out.feasible = true;
  return out;
}

/// The single degree pair where shear feasibility can fail first: the exact
/// middle degree when the pairing degree is even, the innermost distinct pair
/// when it is odd. Everything farther out never obstructs on its own in the
/// presence of enough exact directions, so this is the cheapest meaningful
/// feasibility probe.
template <class K>
TwistOutcome<K> middleDegreeObstruction(const Complex<K>& cx, const CyclicPairing<K>& pr,
                                        const HodgeData<K>& hd) {
  detail::requireValidSplitting(cx, hd, "middleDegreeObstruction");
  TwistOutcome<K> out;
  out.maps = detail::zeroShapedMaps(cx, hd);
  int n = pr.degree;
  int top = cx.space.maxDegree();
  int i = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
  detail::TwistPairResult<K> res = detail::solveTwistPair(cx, pr, hd, i);
  if (res.obstruction) {
    out.feasible = false;
    out.obstruction = std::move(res.obstruction);
    return out;
  }
  if (i <= top) out.maps.mu2[i] = std::move(res.lower);
  int j = n - i;
  if (j != i && j <= top) out.maps.mu2[j] = std::move(res.upper);
  out.feasible = true;
  return out;
}

/// Applies twist maps to a splitting and reports, by direct evaluation, what
/// the result satisfies. Blocks of the maps may be omitted to mean zero;
/// present blocks must match the splitting's shapes.
template <class K>
TwistedSplitting<K> applyTwist(const Complex<K>& cx, const CyclicPairing<K>& pr,
                               const HodgeData<K>& hd, const TwistMaps<K>& maps) {
  int top = cx.space.maxDegree();
  TwistedSplitting<K> out;
  out.data = hd;
  for (int d = 0; d <= top; ++d) {
    int imdim = hd.im[d].cols(), hdim = hd.h[d].cols(), cdim = hd.c[d].cols();
    Matrix<K> eta = detail::blockOrEmpty<K>(maps.eta, d, imdim, hdim, "harmonic twist");
    Matrix<K> mu1 = detail::blockOrEmpty<K>(maps.mu1, d, hdim, cdim, "coexact-to-harmonic twist");
    Matrix<K> mu2 = detail::blockOrEmpty<K>(maps.mu2, d, imdim, cdim, "coexact-to-exact twist");
    out.data.h[d] = hd.h[d] + hd.im[d] * eta;
    out.data.c[d] = hd.c[d] + hd.h[d] * mu1 + hd.im[d] * mu2;
  }
  out.validSplitting = checkDecomposition(cx, out.data).ok();
  out.hOrthogonal = out.validSplitting && checkHOrthogonal(cx, pr, out.data).ok();
  out.hodge = out.hOrthogonal && checkHodge(cx, pr, out.data).ok();
  return out;
}

/// Rebuilds the coexact blocks of the upper half from a correction map:
/// within each upper degree, `chosen` selects coexact columns complementing
/// the blind part (the columns pairing to zero with the whole complementary
/// coexact block), and `correction` assigns each chosen column an exact
/// vector reproducing its pairing values. The output subtracts the correction
/// (half of it in the exact middle degree) and keeps the blind part, which
/// makes the whole coexact part self-orthogonal.
///
/// Throws std::invalid_argument when the input is not orthogonal, the chosen
/// columns do not complement the blind part, or the correction fails its
/// reproduction duties; the result is re-certified before being returned.
template <class K>
HodgeData<K> hodgeFromRho(const Complex<K>& cx, const CyclicPairing<K>& pr,
                          const HodgeData<K>& hd, const std::vector<Matrix<K>>& chosen,
                          const std::vector<Matrix<K>>& correction) {
  CheckReport entry = checkHOrthogonal(cx, pr, hd);
  if (!entry.ok())
    throw std::invalid_argument("the input splitting is not orthogonal: " +
                                entry.violations.front());
  int top = cx.space.maxDegree();
  int n = pr.degree;
  if (static_cast<int>(chosen.size()) != top + 1 ||
      static_cast<int>(correction.size()) != top + 1)
    throw std::invalid_argument("chosen columns and corrections must cover every degree");

  std::vector<Matrix<K>> blind(top + 1);
  for (int d = 0; d <= top; ++d) {
    std::string deg = std::to_string(d);
    if (chosen[d].rows() != cx.space.dim(d) || correction[d].rows() != cx.space.dim(d))
      throw std::invalid_argument("block height does not match the space in degree " + deg);
    if (correction[d].cols() != chosen[d].cols())
      throw std::invalid_argument("correction must assign one column per chosen column (degree " +
                                  deg + ")");
    Matrix<K> b = hd.c[d].transpose() * detail::gramBlock(pr, cx.space, d) *
                  detail::splitBlock(hd.c, cx.space, n - d);
    blind[d] = hd.c[d] * Matrix<K>::fromColumns(kernelBasis(b.transpose()), hd.c[d].cols());
    if (!solveColumns(hd.c[d], chosen[d]))
      throw std::invalid_argument("a chosen column lies outside the coexact part in degree " +
                                  deg);
    if (chosen[d].cols() + blind[d].cols() != hd.c[d].cols() ||
        (hd.c[d].cols() > 0 && rank(chosen[d].hcat(blind[d])) != hd.c[d].cols()))
      throw std::invalid_argument(
          "the chosen columns do not complement the blind part in degree " + deg);
  }

  HodgeData<K> out = hd;
  K half = FieldOps<K>::fromInt(1, cx.field) / FieldOps<K>::fromInt(2, cx.field);
  int lo = (n + 1) / 2;
  for (int i = lo; i <= std::min(n, top); ++i) {
    std::string deg = std::to_string(i);
    const Matrix<K>& r = correction[i];
    if (!solveColumns(detail::splitBlock(hd.im, cx.space, i), r))
      throw std::invalid_argument("the correction lands outside the exact part in degree " + deg);
    int j = n - i;
    Matrix<K> gj = detail::gramBlock(pr, cx.space, j);  // dim(j) x dim(i)
    Matrix<K> lhs = chosen[j].transpose() * gj * r;
    Matrix<K> rhs = chosen[j].transpose() * gj * chosen[i];
    for (int a = 0; a < lhs.rows(); ++a)
      for (int b = 0; b < lhs.cols(); ++b)
        if (!(lhs.at(a, b) == rhs.at(a, b)))
          throw std::invalid_argument(
              "the correction does not reproduce the pairing of chosen column " +
              std::to_string(b) + " (degree " + deg + ") against chosen column " +
              std::to_string(a) + " (degree " + std::to_string(j) + ")");
    Matrix<K> zl = blind[j].transpose() * gj * r;
    for (int a = 0; a < zl.rows(); ++a)
      for (int b = 0; b < zl.cols(); ++b)
        if (!isZero(zl.at(a, b)))
          throw std::invalid_argument(
              "the correction of chosen column " + std::to_string(b) + " (degree " + deg +
              ") pairs nontrivially with blind column " + std::to_string(a) + " (degree " +
              std::to_string(j) + ")");
    Matrix<K> shifted = (2 * i == n) ? chosen[i] - r.scaled(half) : chosen[i] - r;
    out.c[i] = shifted.hcat(blind[i]);
  }

  CheckReport rep = checkHodge(cx, pr, out);
  if (!rep.ok())
    throw std::logic_error("internal: rebuilt splitting failed certification: " +
                           rep.violations.front());
  return out;
}

}  // namespace cdga
