#pragma once

#include "cdga/cyclic.hpp"

namespace cdga {

/// Degreewise homology of a cochain complex: cycle bases, boundary bases, and
/// chosen representatives whose classes form a basis of each homology group.
template <class K>
struct HomologyData {
  std::vector<Matrix<K>> cycles;      // columns span ker d in each degree
  std::vector<Matrix<K>> boundaries;  // columns span im d in each degree
  std::vector<Matrix<K>> reps;        // columns: chosen homology representatives

  int maxDegree() const { return static_cast<int>(reps.size()) - 1; }

  int dim(int deg) const {
    if (deg < 0 || deg > maxDegree()) return 0;
    return reps[deg].cols();
  }

  /// Coordinates of [v] in the representative basis, or nullopt if v is not a
  /// cycle. Boundary summands are discarded.
  std::optional<Vec<K>> classOf(const Elt<K>& e) const {
    if (e.deg < 0 || e.deg > maxDegree()) return Vec<K>{};
    const Matrix<K>& h = reps[e.deg];
    const Matrix<K>& b = boundaries[e.deg];
    Matrix<K> sys = h.hcat(b);
    std::optional<Vec<K>> sol = solveLinear(sys, e.v);
    if (!sol) return std::nullopt;
    Vec<K> coords(sol->begin(), sol->begin() + h.cols());
    return coords;
  }
};

template <class K>
HomologyData<K> computeHomology(const GradedVectorSpace& sp, const GradedLinearMap<K>& d) {
  int top = sp.maxDegree();
  HomologyData<K> h;
  h.cycles.resize(top + 1);
  h.boundaries.resize(top + 1);
  h.reps.resize(top + 1);
  for (int deg = 0; deg <= top; ++deg) {
    int rows = sp.dim(deg);
    const Matrix<K>& dm = d.block(deg);
    h.cycles[deg] = Matrix<K>::fromColumns(kernelBasis(dm), rows);

    if (deg == 0) {
      h.boundaries[deg] = Matrix<K>(rows, 0);
    } else {
      const Matrix<K>& prev = d.block(deg - 1);
      std::vector<int> picked = independentExtension(Matrix<K>(rows, 0), prev);
      std::vector<Vec<K>> basis;
      for (int idx : picked) basis.push_back(prev.column(idx));
      h.boundaries[deg] = Matrix<K>::fromColumns(basis, rows);
    }

    std::vector<int> picked = independentExtension(h.boundaries[deg], h.cycles[deg]);
    std::vector<Vec<K>> repCols;
    for (int idx : picked) repCols.push_back(h.cycles[deg].column(idx));
    h.reps[deg] = Matrix<K>::fromColumns(repCols, rows);
  }
  return h;
}

template <class K>
HomologyData<K> computeHomology(const Complex<K>& cx) {
  return computeHomology(cx.space, cx.d);
}

template <class K>
HomologyData<K> computeHomology(const Algebra<K>& alg) {
  return computeHomology(alg.space, alg.d);
}

/// Highest degree in which homology is reliable: everything when the algebra
/// is untruncated, one below the truncation bound otherwise (cycles at the
/// bound may be killed by differentials out of discarded degrees).
template <class K>
int trustedDegree(const Algebra<K>& alg) {
  if (alg.truncation) return *alg.truncation - 1;
  return alg.space.maxDegree();
}

/// Functional induced on top-degree homology representatives.
template <class K>
Vec<K> inducedOrientationRow(const Orientation<K>& orient, const HomologyData<K>& h) {
  int n = orient.degree;
  Vec<K> row = zeroVec<K>(h.dim(n));
  for (int j = 0; j < h.dim(n); ++j) {
    Elt<K> rep{n, h.reps[n].column(j)};
    row[j] = orient.value(rep);
  }
  return row;
}

/// Gram blocks of the pairing restricted to homology representatives:
/// block i is reps_i^T gram_i reps_{n-i}.
template <class K>
std::vector<Matrix<K>> inducedHomologyGram(const CyclicPairing<K>& pr, const HomologyData<K>& h) {
  int n = pr.degree;
  std::vector<Matrix<K>> blocks(n + 1);
  for (int i = 0; i <= n; ++i)
    blocks[i] = h.reps[i].transpose() * pr.gram[i] * h.reps[n - i];
  return blocks;
}

/// Structural summary of an oriented algebra.
struct Classification {
  bool connected = false;        // one-dimensional in degree 0
  bool simplyConnected = false;  // connected with nothing in degree 1
  bool isDPD = false;            // pairing perfect on chains degreewise
  bool isPDGA = false;           // pairing perfect on homology, none above top
  int degree = 0;                // the orientation degree
  std::vector<int> homologyDims;
  int trusted = 0;
};

template <class K>
Classification classify(const Algebra<K>& alg, const Orientation<K>& orient,
                        const HomologyData<K>& h, const CyclicPairing<K>& pr) {
  Classification c;
  int n = orient.degree;
  c.degree = n;
  c.connected = alg.space.dim(0) == 1;
  c.simplyConnected = c.connected && alg.space.dim(1) == 0;
  c.trusted = trustedDegree(alg);
  for (int deg = 0; deg <= alg.space.maxDegree(); ++deg) c.homologyDims.push_back(h.dim(deg));

  // Perfect on chains: every complementary-degree block square and invertible,
  // nothing hiding above the top degree, and no truncation cutting below it.
  c.isDPD = !(alg.truncation && *alg.truncation < n);
  for (int i = 0; i <= std::max(n, alg.space.maxDegree()) && c.isDPD; ++i) {
    int rows = alg.space.dim(i);
    int cols = (n - i >= 0) ? alg.space.dim(n - i) : 0;
    if (rows != cols) {
      c.isDPD = false;
      break;
    }
    if (i <= n && rows > 0 && rank(pr.gram[i]) != rows) c.isDPD = false;
  }

  // Perfect on homology: induced blocks square and invertible through degree
  // n, and homology vanishing strictly above n (as far as can be trusted).
  std::vector<Matrix<K>> hg = inducedHomologyGram(pr, h);
  c.isPDGA = true;
  for (int i = 0; i <= n; ++i) {
    int rows = h.dim(i);
    int cols = h.dim(n - i);
    if (rows != cols || (rows > 0 && rank(hg[i]) != rows)) {
      c.isPDGA = false;
      break;
    }
  }
  if (c.isPDGA)
    for (int i = n + 1; i <= std::min(c.trusted, alg.space.maxDegree()); ++i)
      if (h.dim(i) != 0) {
        c.isPDGA = false;
        break;
      }
  return c;
}

template <class K>
Classification classify(const Algebra<K>& alg, const Orientation<K>& orient) {
  HomologyData<K> h = computeHomology(alg);
  CyclicPairing<K> pr = pairingFromOrientation(alg, orient);
  return classify(alg, orient, h, pr);
}

}  // namespace cdga
