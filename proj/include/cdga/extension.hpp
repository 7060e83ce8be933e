#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdga/free_algebra.hpp"
#include "cdga/hodge.hpp"
#include "cdga/homology.hpp"

namespace cdga {

/// Thrown when an even pairing degree admits no self-orthogonal complement in
/// its middle degree, so no amount of generator adjunction can help. Carries a
/// machine-checkable witness pair.
template <class K>
class MiddleObstructionError : public std::runtime_error {
 public:
  explicit MiddleObstructionError(TwistObstruction<K> cert)
      : std::runtime_error("no self-orthogonal middle complement exists: " + cert.note),
        certificate(std::move(cert)) {}

  TwistObstruction<K> certificate;
};

/// Mutable bookkeeping for the level-by-level adjunction of contractible
/// generator pairs. `blind[d]` spans the coexact columns of degree d that pair
/// to zero with the entire coexact block of the complementary degree, `e[d]`
/// is the chosen complement of `blind[d]` inside the coexact block, and
/// `rho[d]` assigns one exact column to each column of `e[d]` (zero width
/// until the level owning that degree has been processed). `word[d][i]` counts
/// how many adjoined generators the i-th basis vector of degree d contains;
/// the original basis sits at word zero. `level` is the last degree whose
/// complement has been given its corrections.
template <class K>
struct ExtensionState {
  OrientedAlgebra<K> doc;
  GradedLinearMap<K> inclusion;   // original algebra into the current one
  GradedLinearMap<K> retraction;  // current algebra onto the original one
  HodgeData<K> hd;
  std::vector<Matrix<K>> blind;
  std::vector<Matrix<K>> e;
  std::vector<Matrix<K>> rho;
  std::vector<std::vector<int>> word;
  int degree = 0;  // pairing degree
  int level = 0;   // last completed level
  int pairsAdjoined = 0;
  std::vector<std::pair<int, int>> adjoinedPairs;  // (level, pairs added there)
  bool introducedDegreeOne = false;
};

namespace detail {

/// The columns of the coexact block of degree d that pair to zero with the
/// whole coexact block of the complementary degree, expressed in chain
/// coordinates.
template <class K>
Matrix<K> blindColumns(const CyclicPairing<K>& pr, const GradedVectorSpace& sp,
                       const std::vector<Matrix<K>>& c, int d) {
  Matrix<K> cd = splitBlock(c, sp, d);
  Matrix<K> b = cd.transpose() * gramBlock(pr, sp, d) * splitBlock(c, sp, pr.degree - d);
  std::vector<Vec<K>> ker = kernelBasis(b.transpose());
  return cd * Matrix<K>::fromColumns(ker, cd.cols());
}

/// Greedy complement of span(blindCols), drawing candidates first from
/// `preferred` (kept verbatim and in order) and then from `pool`. Returns the
/// chosen columns and how many came from `preferred`.
template <class K>
std::pair<Matrix<K>, int> complementColumns(const Matrix<K>& blindCols,
                                            const Matrix<K>& preferred, const Matrix<K>& pool) {
  Matrix<K> cand = preferred.hcat(pool);
  std::vector<int> picked = independentExtension(blindCols, cand);
  std::vector<Vec<K>> cols;
  int fromPreferred = 0;
  for (int idx : picked) {
    cols.push_back(cand.column(idx));
    if (idx < preferred.cols()) ++fromPreferred;
  }
  return {Matrix<K>::fromColumns(cols, cand.rows()), fromPreferred};
}

/// Recomputes the blind/complement split of the coexact part in every degree
/// of the state's current algebra. `preferred[d]` columns (empty for a free
/// choice) are kept first whenever they stay independent of the blind part;
/// the returned vector counts, per degree, how many of them were kept.
template <class K>
std::vector<int> splitCoexact(ExtensionState<K>& st, const CyclicPairing<K>& pr,
                              const std::vector<Matrix<K>>& preferred) {
  const GradedVectorSpace& sp = st.doc.alg.space;
  const int top = sp.maxDegree();
  st.blind.assign(top + 1, Matrix<K>());
  st.e.assign(top + 1, Matrix<K>());
  std::vector<int> kept(top + 1, 0);
  for (int d = 0; d <= top; ++d) {
    st.blind[d] = blindColumns(pr, sp, st.hd.c, d);
    Matrix<K> pref = d < static_cast<int>(preferred.size()) ? preferred[d] : Matrix<K>(sp.dim(d), 0);
    auto [cols, fromPref] = complementColumns(st.blind[d], pref, st.hd.c[d]);
    if (cols.cols() + st.blind[d].cols() != st.hd.c[d].cols())
      throw std::logic_error("internal: the chosen complement does not fill the coexact block in degree " +
                             std::to_string(d));
    st.e[d] = std::move(cols);
    kept[d] = fromPref;
  }
  return kept;
}

/// Adjoins one block of contractible exterior pairs at the given level: one
/// pair per column of the current complement there, lower generators one
/// degree below the level. Transfers the orientation so that single-generator
/// words read off the mirror-degree functionals of the chosen columns,
/// rebuilds the splitting and the blind/complement choices, extends the
/// inclusion/retraction pair, and installs the upper generators as the
/// corrections of the fresh level. Returns whether the mirror degree kept its
/// blind dimension (trivially true at the entry level); a false return asks
/// the caller to run another round at the same level.
template <class K>
bool adjoinRound(ExtensionState<K>& st, int level, int round) {
  const int n = st.degree;
  const int lo = (n + 1) / 2;
  const int T = n + 2;
  const int m = level < static_cast<int>(st.e.size()) ? st.e[level].cols() : 0;
  if (m == 0) return true;

  const Algebra<K>& A = st.doc.alg;  // replaced only at the commit point below
  const GradedVectorSpace& sp = A.space;
  const int oldTop = sp.maxDegree();
  const int oldUnit = A.unitIndex;
  const int dimOne = sp.dim(1);
  CyclicPairing<K> pr = pairingFromOrientation(A, *st.doc.orient);

  const int wDeg = level - 1;
  const int zDeg = level;
  const int j = n - level;

  // --- the contractible block: m exterior pairs, lower leg one degree below
  const std::string stem =
      std::to_string(level) + (round == 0 ? "" : "r" + std::to_string(round)) + "_";
  FreePresentation<K> pres;
  pres.generators.reserve(2 * static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) pres.generators.push_back({"w" + stem + std::to_string(i), wDeg});
  for (int i = 0; i < m; ++i) pres.generators.push_back({"z" + stem + std::to_string(i), zDeg});
  pres.differentials.assign(2 * static_cast<std::size_t>(m), {});
  for (int i = 0; i < m; ++i) {
    std::vector<int> ex(2 * static_cast<std::size_t>(m), 0);
    ex[static_cast<std::size_t>(m) + i] = 1;
    pres.differentials[i] = {PolyTerm<K>{ex, K(1)}};
  }
  FreeAlgebraData<K> lam = buildTruncatedFree<K>(A.field, "wz" + stem + "block", pres, T);
  const int lamUnit = lam.alg.unitIndex;
  std::vector<int> zMono(m, -1);
  for (int i = 0; i < m; ++i) {
    std::vector<int> ex(2 * static_cast<std::size_t>(m), 0);
    ex[static_cast<std::size_t>(m) + i] = 1;
    auto it = lam.index.find(ex);
    if (it == lam.index.end() || it->second.first != zDeg)
      throw std::logic_error("internal: an upper generator is missing from the adjoined block");
    zMono[i] = it->second.second;
  }

  const std::string tname =
      A.name + "+wz" + std::to_string(level) + (round == 0 ? "" : "r" + std::to_string(round));
  TensorData<K> td = tensorProduct(A, lam.alg, tname, T);
  const GradedVectorSpace& SP = td.alg.space;
  if (auto dup = SP.duplicateLabel())
    throw std::logic_error("internal: adjoined generators collide with an existing label: " + *dup);

  // --- mirror-degree functionals of the chosen columns. In degrees j and
  // j+1 the algebra splits as [harmonic | d(complement) | d(blind) |
  // complement | blind]; the rows of the inverse belonging to the complement
  // block (degree j) and to its image block (degree j+1) turn pairing values
  // against the chosen columns into functionals on the whole degree.
  const Matrix<K>& xi = st.e[level];
  Matrix<K> pairE = splitBlock(st.e, sp, j).transpose() * gramBlock(pr, sp, j) * xi;

  auto mirrorInverse = [&](int d) {
    Matrix<K> dm = d >= 1 ? A.d.block(d - 1) : Matrix<K>(sp.dim(d), 0);
    Matrix<K> M = splitBlock(st.hd.h, sp, d)
                      .hcat(dm * splitBlock(st.e, sp, d - 1))
                      .hcat(dm * splitBlock(st.blind, sp, d - 1))
                      .hcat(splitBlock(st.e, sp, d))
                      .hcat(splitBlock(st.blind, sp, d));
    std::optional<Matrix<K>> inv = inverseMatrix(M);
    if (!inv)
      throw std::logic_error("internal: the degreewise split is not a basis in degree " +
                             std::to_string(d));
    return *inv;
  };

  Matrix<K> MjInv = mirrorInverse(j);
  const int ejCols = splitBlock(st.e, sp, j).cols();
  const int offE = splitBlock(st.hd.h, sp, j).cols() + splitBlock(st.e, sp, j - 1).cols() +
                   splitBlock(st.blind, sp, j - 1).cols();
  Matrix<K> RE(ejCols, sp.dim(j));
  for (int r = 0; r < ejCols; ++r)
    for (int c = 0; c < sp.dim(j); ++c) RE.at(r, c) = MjInv.at(offE + r, c);
  Matrix<K> uZ = pairE.transpose() * RE;  // m x dim(j)

  Matrix<K> Mj1Inv = mirrorInverse(j + 1);
  const int offDE = splitBlock(st.hd.h, sp, j + 1).cols();
  Matrix<K> RDE(ejCols, sp.dim(j + 1));
  for (int r = 0; r < ejCols; ++r)
    for (int c = 0; c < sp.dim(j + 1); ++c) RDE.at(r, c) = Mj1Inv.at(offDE + r, c);
  const K sgn = (j % 2 == 0) ? K(-1) : K(1);
  Matrix<K> uW = (pairE.transpose() * RDE).scaled(sgn);  // m x dim(j+1)

  // --- transfer the orientation: word-zero vectors keep their value,
  // single-generator words read the mirror functionals, longer words vanish.
  Vec<K> row(SP.dim(n), K(0));
  for (int idx = 0; idx < SP.dim(n); ++idx) {
    const TensorFactor& f = td.factors[n][idx];
    if (f.degRight == 0 && f.idxRight == lamUnit) {
      row[idx] = st.doc.orient->row[f.idxLeft];
      continue;
    }
    if (lam.exponentSum(f.degRight, f.idxRight) != 1) continue;
    const std::vector<int>& ex = lam.exps[f.degRight][f.idxRight];
    int g = -1;
    for (int t = 0; t < 2 * m; ++t)
      if (ex[t] == 1) {
        g = t;
        break;
      }
    row[idx] = g < m ? uW.at(g, f.idxLeft) : uZ.at(g - m, f.idxLeft);
  }
  Orientation<K> orient2{n, row};
  {
    CheckReport orep = checkOrientation(td.alg, orient2);
    if (!orep.ok())
      throw std::logic_error("internal: the transferred orientation failed certification: " +
                             orep.violations.front());
    const Matrix<K>& inb = td.includeLeft.block(n);
    for (int t = 0; t < sp.dim(n); ++t) {
      K acc(0);
      for (int i = 0; i < SP.dim(n); ++i) acc += row[i] * inb.at(i, t);
      if (!(acc == st.doc.orient->row[t]))
        throw std::logic_error("internal: the transferred orientation does not restrict to the original one");
    }
  }

  OrientedAlgebra<K> doc2{td.alg, orient2};
  CyclicPairing<K> pr2 = pairingFromOrientation(td.alg, orient2);
  Complex<K> cx2 = td.alg.asComplex();

  // --- rebuild the splitting. Harmonic and coexact blocks are carried over
  // below the stored top; the top degree gets a fresh standard-vector
  // complement because the adjunction refreshes its leftover classes.
  auto mappedBlock = [&](const std::vector<Matrix<K>>& v, int d) {
    if (d <= oldTop) return td.includeLeft.block(d) * splitBlock(v, sp, d);
    return Matrix<K>(SP.dim(d), 0);
  };

  std::vector<Matrix<K>> h2(T + 1, Matrix<K>()), im2(T + 1, Matrix<K>()), c2(T + 1, Matrix<K>());
  im2[0] = Matrix<K>(SP.dim(0), 0);
  for (int d = 1; d <= T; ++d) im2[d] = canonicalSpan(cx2.d.block(d - 1));
  for (int d = 0; d < T; ++d) h2[d] = mappedBlock(st.hd.h, d);
  {
    std::vector<int> picked = independentExtension(im2[T], Matrix<K>::identity(SP.dim(T)));
    std::vector<Vec<K>> cols;
    for (int idx : picked) {
      Vec<K> v(SP.dim(T), K(0));
      v[idx] = K(1);
      cols.push_back(std::move(v));
    }
    h2[T] = Matrix<K>::fromColumns(cols, SP.dim(T));
  }

  // Projection away from the harmonic block, using the perfect pairing
  // between harmonic blocks of complementary degrees.
  auto offHarmonic = [&](int d, const Vec<K>& x) {
    const Matrix<K>& hd2 = h2[d];
    Matrix<K> hnd = (n - d >= 0 && n - d <= T) ? h2[n - d] : Matrix<K>(SP.dim(n - d), 0);
    if (hd2.cols() == 0 || hnd.cols() == 0) return x;
    Matrix<K> G = gramBlock(pr2, SP, d);
    Matrix<K> pairH = hd2.transpose() * G * hnd;
    Vec<K> b(hnd.cols(), K(0));
    for (int t = 0; t < hnd.cols(); ++t) {
      K acc(0);
      for (int r = 0; r < SP.dim(d); ++r)
        for (int c = 0; c < SP.dim(n - d); ++c) acc += x[r] * G.at(r, c) * hnd.at(c, t);
      b[t] = acc;
    }
    std::optional<Vec<K>> alpha = solveLinear(pairH.transpose(), b);
    if (!alpha) throw std::logic_error("internal: the harmonic pairing is not perfect");
    Vec<K> out = x;
    for (int r = 0; r < SP.dim(d); ++r) {
      K acc(0);
      for (int c = 0; c < hd2.cols(); ++c) acc += hd2.at(r, c) * (*alpha)[c];
      out[r] = out[r] - acc;
    }
    return out;
  };

  for (int d = 0; d < T; ++d) {
    Matrix<K> mc = mappedBlock(st.hd.c, d);
    // one column per (old basis vector) x (lower generator), pushed off the
    // harmonic block so orthogonality against it survives
    std::vector<Vec<K>> wCols;
    for (int idx = 0; idx < SP.dim(d); ++idx) {
      const TensorFactor& f = td.factors[d][idx];
      if (f.degRight != wDeg || lam.exponentSum(f.degRight, f.idxRight) != 1) continue;
      const std::vector<int>& ex = lam.exps[f.degRight][f.idxRight];
      bool isLower = false;
      for (int t = 0; t < m; ++t)
        if (ex[t] == 1) isLower = true;
      if (!isLower) continue;
      Vec<K> col(SP.dim(d), K(0));
      col[idx] = K(1);
      wCols.push_back(offHarmonic(d, col));
    }
    // longer words: a deterministic complement of their closed part
    std::vector<int> w2idx;
    for (int idx = 0; idx < SP.dim(d); ++idx) {
      const TensorFactor& f = td.factors[d][idx];
      if (lam.exponentSum(f.degRight, f.idxRight) >= 2) w2idx.push_back(idx);
    }
    Matrix<K> w2cols(SP.dim(d), 0);
    if (!w2idx.empty()) {
      std::vector<Vec<K>> cand;
      for (int idx : w2idx) {
        Vec<K> v(SP.dim(d), K(0));
        v[idx] = K(1);
        cand.push_back(std::move(v));
      }
      Matrix<K> candM = Matrix<K>::fromColumns(cand, SP.dim(d));
      std::vector<Vec<K>> ker = kernelBasis(cx2.d.block(d) * candM);
      Matrix<K> closed = candM * Matrix<K>::fromColumns(ker, candM.cols());
      std::vector<int> picked = independentExtension(closed, candM);
      std::vector<Vec<K>> chosen;
      for (int idx : picked) chosen.push_back(candM.column(idx));
      w2cols = Matrix<K>::fromColumns(chosen, SP.dim(d));
    }
    c2[d] = mc.hcat(Matrix<K>::fromColumns(wCols, SP.dim(d))).hcat(w2cols);
  }
  c2[T] = Matrix<K>(SP.dim(T), 0);

  HodgeData<K> hd2{std::move(h2), std::move(im2), std::move(c2)};
  {
    CheckReport srep = checkHOrthogonal(cx2, pr2, hd2);
    if (!srep.ok())
      throw std::logic_error("internal: the rebuilt splitting failed certification: " +
                             srep.violations.front());
  }

  // --- data carried across the commit point
  std::vector<Matrix<K>> preferred(T + 1, Matrix<K>());
  for (int d = 0; d <= T; ++d) preferred[d] = mappedBlock(st.e, d);
  Matrix<K> mappedOldBlindMirror = j >= 0 ? mappedBlock(st.blind, j) : Matrix<K>(SP.dim(j), 0);
  const int oldBlindMirror = mappedOldBlindMirror.cols();
  std::vector<int> oldECols(st.e.size(), 0);
  for (std::size_t d = 0; d < st.e.size(); ++d) oldECols[d] = st.e[d].cols();
  std::vector<Matrix<K>> oldRho = st.rho;

  std::vector<std::vector<int>> word2(T + 1);
  for (int d = 0; d <= T; ++d) {
    word2[d].resize(SP.dim(d), 0);
    for (int idx = 0; idx < SP.dim(d); ++idx) {
      const TensorFactor& f = td.factors[d][idx];
      word2[d][idx] = st.word[f.degLeft][f.idxLeft] + lam.exponentSum(f.degRight, f.idxRight);
    }
  }
  for (const auto& [key, entries] : td.alg.prod) {
    const int wsum = word2[key.da][key.ia] + word2[key.db][key.ib];
    for (const auto& [idx, coef] : entries)
      if (!(coef == K(0)) && word2[key.da + key.db][idx] != wsum)
        throw std::logic_error("internal: the product table broke the word grading");
  }
  for (int idx = 0; idx < SP.dim(n); ++idx)
    if (word2[n][idx] >= 2 && !(row[idx] == K(0)))
      throw std::logic_error("internal: the orientation does not vanish on longer words");

  GradedLinearMap<K> pStep = GradedLinearMap<K>::zero(SP, sp, 0);
  for (int d = 0; d <= T; ++d)
    for (int idx = 0; idx < SP.dim(d); ++idx) {
      const TensorFactor& f = td.factors[d][idx];
      if (f.degRight == 0 && f.idxRight == lamUnit) pStep.block(d).at(f.idxLeft, idx) = K(1);
    }

  // --- commit
  st.doc = std::move(doc2);
  st.hd = std::move(hd2);
  st.word = std::move(word2);
  st.inclusion = td.includeLeft.composeAfter(st.inclusion);
  st.retraction = st.retraction.composeAfter(pStep);
  st.pairsAdjoined += m;
  st.adjoinedPairs.push_back({level, m});
  if (wDeg == 1) st.introducedDegreeOne = true;

  std::vector<int> kept = splitCoexact(st, pr2, preferred);

  // --- mirror verdict and stability of the already-settled choices
  bool perpHolds = true;
  if (level > lo) {
    const int newBlindMirror = st.blind[j].cols();
    if (newBlindMirror > oldBlindMirror)
      throw std::logic_error("internal: the mirror blind block grew during an adjunction");
    for (int c = 0; c < newBlindMirror; ++c)
      if (!spanContains(mappedOldBlindMirror, st.blind[j].column(c)))
        throw std::logic_error("internal: the mirror blind block left the span of its predecessor");
    perpHolds = newBlindMirror == oldBlindMirror;
    if (!perpHolds && dimOne == 0)
      throw std::logic_error("internal: the mirror blind block shrank although degree one is zero");
  }
  const int settledTop = perpHolds ? level : level - 1;
  for (int i = lo; i <= settledTop; ++i) {
    const bool fresh = i == level;
    const int want = fresh ? m : (i < static_cast<int>(oldECols.size()) ? oldECols[i] : 0);
    if (kept[i] < want)
      throw std::logic_error("internal: a settled complement column fell into the blind block in degree " +
                             std::to_string(i));
    if (st.e[i].cols() != want)
      throw std::logic_error("internal: a settled complement changed width in degree " +
                             std::to_string(i));
  }

  // --- corrections: carried over at settled degrees, the fresh level takes
  // its upper generators, everything else is zero at matching width
  st.rho.assign(T + 1, Matrix<K>());
  for (int d = 0; d <= T; ++d) st.rho[d] = Matrix<K>(SP.dim(d), st.e[d].cols());
  for (int i = lo; i < level && i < static_cast<int>(oldRho.size()); ++i)
    if (i <= oldTop && oldRho[i].cols() > 0) st.rho[i] = td.includeLeft.block(i) * oldRho[i];
  {
    Matrix<K> rl(SP.dim(level), st.e[level].cols());
    for (int i = 0; i < m && i < rl.cols(); ++i) {
      int found = -1;
      for (int idx = 0; idx < SP.dim(level); ++idx) {
        const TensorFactor& f = td.factors[level][idx];
        if (f.degLeft == 0 && f.idxLeft == oldUnit && f.degRight == zDeg &&
            f.idxRight == zMono[i]) {
          found = idx;
          break;
        }
      }
      if (found < 0)
        throw std::logic_error("internal: an upper generator is missing from the tensor basis");
      rl.at(found, i) = K(1);
    }
    st.rho[level] = std::move(rl);
  }

  // --- every settled correction must reproduce its column's pairing values
  // and stay invisible to the blind block
  for (int i = lo; i <= settledTop; ++i) {
    const int ji = n - i;
    Matrix<K> G = gramBlock(pr2, SP, ji);
    Matrix<K> eji = splitBlock(st.e, SP, ji).transpose();
    if (!(eji * G * st.rho[i] == eji * G * st.e[i]))
      throw std::logic_error("internal: a correction lost its pairing duty in degree " +
                             std::to_string(i));
    if (!(splitBlock(st.blind, SP, ji).transpose() * G * st.rho[i]).isZeroMatrix())
      throw std::logic_error("internal: a correction pairs with the blind block in degree " +
                             std::to_string(i));
  }
  return perpHolds;
}

}  // namespace detail

/// Starting state for the level-by-level adjunction, from an explicit
/// orthogonal splitting. The splitting must certify as orthogonal for the
/// pairing induced by the orientation; the blind/complement choices are made
/// greedily, all corrections start at zero width, and the completed level sits
/// just below the first degree the correction pass owns.
template <class K>
ExtensionState<K> initExtension(const OrientedAlgebra<K>& doc, const HodgeData<K>& hd) {
  if (!doc.orient)
    throw std::invalid_argument("initExtension: the algebra carries no orientation");
  Complex<K> cx = doc.alg.asComplex();
  CyclicPairing<K> pr = pairingFromOrientation(doc.alg, *doc.orient);
  CheckReport rep = checkHOrthogonal(cx, pr, hd);
  if (!rep.ok())
    throw std::invalid_argument("initExtension: the starting splitting is not orthogonal: " +
                                rep.violations.front());

  ExtensionState<K> st;
  st.doc = doc;
  st.hd = hd;
  st.degree = doc.orient->degree;
  st.level = (st.degree + 1) / 2 - 1;
  st.inclusion = GradedLinearMap<K>::identityOn(doc.alg.space);
  st.retraction = st.inclusion;
  detail::splitCoexact(st, pr, {});
  const int top = doc.alg.space.maxDegree();
  st.rho.assign(top + 1, Matrix<K>());
  st.word.assign(top + 1, {});
  for (int d = 0; d <= top; ++d) {
    st.rho[d] = Matrix<K>(doc.alg.space.dim(d), st.e[d].cols());
    st.word[d].assign(doc.alg.space.dim(d), 0);
  }
  return st;
}

/// Starting state as above, with the orthogonal splitting computed here.
template <class K>
ExtensionState<K> initExtension(const OrientedAlgebra<K>& doc) {
  if (!doc.orient)
    throw std::invalid_argument("initExtension: the algebra carries no orientation");
  Complex<K> cx = doc.alg.asComplex();
  CyclicPairing<K> pr = pairingFromOrientation(doc.alg, *doc.orient);
  return initExtension(doc, hOrthogonalize(cx, pr));
}

/// Processes one level: pairs every surviving complement column of that
/// degree with a fresh contractible generator pair, iterating rounds at the
/// same level while the mirror degree's blind block keeps shrinking. Levels
/// must be processed in increasing order without gaps; a level whose
/// complement is already empty is a no-op. Throws std::invalid_argument for
/// out-of-order levels, for an entry level (or the degree just past an even
/// middle) that the presence of degree-one chains makes uncorrectable, and
/// for an algebra whose stored range cannot hold the new generators' products.
template <class K>
ExtensionState<K> extendOnce(const ExtensionState<K>& state, int level) {
  if (!state.doc.orient)
    throw std::invalid_argument("extendOnce: the algebra carries no orientation");
  if (level != state.level + 1)
    throw std::invalid_argument("extendOnce: level " + std::to_string(level) +
                                " is out of order; the completed level is " +
                                std::to_string(state.level));
  ExtensionState<K> st = state;
  const int n = st.degree;
  const int lo = (n + 1) / 2;
  const int m = (level >= 0 && level < static_cast<int>(st.e.size())) ? st.e[level].cols() : 0;
  if (m == 0) {
    st.level = level;
    return st;
  }

  const int dimOne = st.doc.alg.space.dim(1);
  if (level == lo && dimOne != 0)
    throw std::invalid_argument(
        "extendOnce: the entry level cannot be corrected while degree one is nonzero");
  if (dimOne != 0 && n % 2 == 0 && level == n / 2 + 1 && st.e[n / 2].cols() != 0)
    throw std::invalid_argument(
        "extendOnce: one step past an even middle requires an empty middle complement "
        "while degree one is nonzero");
  if (level < 2)
    throw std::logic_error("internal: generator degrees would not be positive at level " +
                           std::to_string(level));
  if (st.doc.alg.truncation && *st.doc.alg.truncation < n + 2)
    throw std::invalid_argument("extendOnce: adjoining a pair needs degrees stored through " +
                                std::to_string(n + 2) + "; the input algebra is stored only through " +
                                std::to_string(*st.doc.alg.truncation));

  const int mirror = n - level;
  const int maxRounds =
      ((mirror >= 0 && mirror < static_cast<int>(st.blind.size())) ? st.blind[mirror].cols() : 0) + 2;
  for (int round = 0;; ++round) {
    if (round >= maxRounds)
      throw std::logic_error("internal: the adjunction failed to stabilize the mirror blind block");
    if (detail::adjoinRound(st, level, round)) break;
  }
  st.level = level;
  return st;
}

/// Result of the full pipeline: the possibly enlarged algebra with its
/// transferred orientation, a fully self-orthogonal splitting for it, and the
/// inclusion/retraction pair connecting it to the input (the retraction sends
/// every adjoined generator to zero and is a left inverse of the inclusion).
template <class K>
struct HodgeExtension {
  OrientedAlgebra<K> doc;
  HodgeData<K> hodge;
  GradedLinearMap<K> inclusion;
  GradedLinearMap<K> retraction;
  std::vector<std::pair<int, int>> adjoinedPairs;
  int pairsAdjoined = 0;
  bool extended = false;
  bool middleTwistApplied = false;
  bool introducedDegreeOne = false;
};

/// Runs the whole construction: requires a connected, simply connected
/// algebra whose homology pairing is perfect; shears the middle complement to
/// self-orthogonality first when the pairing degree is even (throwing
/// MiddleObstructionError with a witness pair when impossible); then walks the
/// levels of the upper half, adjoining contractible pairs until the coexact
/// part pairs to zero with itself; finally certifies the assembled splitting
/// before returning it.
template <class K>
HodgeExtension<K> extendToHodgeType(const OrientedAlgebra<K>& doc) {
  if (!doc.orient)
    throw std::invalid_argument("extendToHodgeType: the algebra carries no orientation");
  Classification cls = classify(doc.alg, *doc.orient);
  if (!cls.connected)
    throw std::invalid_argument(
        "extendToHodgeType: the algebra must be connected (degree zero spanned by the unit)");
  if (!cls.simplyConnected)
    throw std::invalid_argument(
        "extendToHodgeType: the algebra must be simply connected (nothing in degree one)");
  if (!cls.isPDGA)
    throw std::invalid_argument(
        "extendToHodgeType: homology must pair perfectly through the orientation degree");

  const int n = doc.orient->degree;
  Complex<K> cx = doc.alg.asComplex();
  CyclicPairing<K> pr = pairingFromOrientation(doc.alg, *doc.orient);
  HodgeData<K> hd = hOrthogonalize(cx, pr);

  HodgeExtension<K> out;
  out.doc = doc;

  if (n <= 3) {
    CheckReport rep = checkHodge(cx, pr, hd);
    if (!rep.ok())
      throw std::logic_error(
          "internal: an orthogonal splitting in low pairing degree is not self-orthogonal: " +
          rep.violations.front());
    out.hodge = std::move(hd);
    out.inclusion = GradedLinearMap<K>::identityOn(doc.alg.space);
    out.retraction = out.inclusion;
    return out;
  }

  bool twisted = false;
  if (n % 2 == 0) {
    TwistOutcome<K> probe = middleDegreeObstruction(cx, pr, hd);
    if (!probe.feasible) {
      TwistObstruction<K> cert;
      if (probe.obstruction) cert = std::move(*probe.obstruction);
      else cert.note = "the middle-degree probe reported infeasibility without a witness";
      throw MiddleObstructionError<K>(std::move(cert));
    }
    TwistedSplitting<K> ts = applyTwist(cx, pr, hd, probe.maps);
    if (!ts.hOrthogonal)
      throw std::logic_error("internal: the middle shear broke orthogonality");
    hd = std::move(ts.data);
    for (const Matrix<K>& block : probe.maps.mu2)
      if (!block.isZeroMatrix()) {
        twisted = true;
        break;
      }
  }

  ExtensionState<K> st = initExtension(doc, hd);
  for (int l = (n + 1) / 2; l <= n; ++l) st = extendOnce(st, l);

  Complex<K> cxF = st.doc.alg.asComplex();
  CyclicPairing<K> prF = pairingFromOrientation(st.doc.alg, *st.doc.orient);
  out.hodge = hodgeFromRho(cxF, prF, st.hd, st.e, st.rho);
  out.doc = std::move(st.doc);
  out.inclusion = std::move(st.inclusion);
  out.retraction = std::move(st.retraction);
  out.adjoinedPairs = std::move(st.adjoinedPairs);
  out.pairsAdjoined = st.pairsAdjoined;
  out.extended = st.pairsAdjoined > 0;
  out.middleTwistApplied = twisted;
  out.introducedDegreeOne = st.introducedDegreeOne;

  for (int d = 0; d <= doc.alg.space.maxDegree(); ++d) {
    Matrix<K> comp = out.retraction.block(d) * out.inclusion.block(d);
    if (!(comp == Matrix<K>::identity(doc.alg.space.dim(d))))
      throw std::logic_error("internal: the retraction does not undo the inclusion in degree " +
                             std::to_string(d));
  }
  return out;
}

}  // namespace cdga
