#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cdga/corpus.hpp"

namespace cdga {

/// Construction record of a generated complex. Every block type has a known
/// effect on the radical of the pairing, so the record doubles as ground
/// truth for feasibility tests: the radical is acyclic exactly when no
/// cross-paired coexact block was inserted.
struct ComplexRecipe {
  int pairingDegree = 0;
  int harmonicPairs = 0;
  int hodgeQuads = 0;
  int obstructionQuads = 0;
  int degeneratePairs = 0;
  bool radicalAcyclic = true;
};

template <class K>
struct GeneratedComplex {
  Complex<K> cx;
  CyclicPairing<K> pr;
  ComplexRecipe recipe;
};

struct ComplexGenOptions {
  int minDegree = 2;
  int maxDegree = 8;
  /// Exact number of cross-paired coexact blocks, or -1 to let the generator
  /// flip a coin (roughly half the instances receive one or two).
  int obstructionQuads = -1;
};

namespace detail {

inline int pick(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

template <class K>
K unitValue(std::mt19937_64& rng, const FieldSpec& field) {
  static const int choices[] = {1, -1, 2, -2};
  return FieldOps<K>::fromInt(choices[pick(rng, 0, 3)], field);
}

/// I + (strictly upper triangular noise): always invertible, fixes the flag
/// of leading basis vectors, and never grows the matrix rank structure.
template <class K>
Matrix<K> unipotent(std::mt19937_64& rng, const FieldSpec& field, int m) {
  Matrix<K> u = Matrix<K>::identity(m);
  for (int r = 0; r < m; ++r)
    for (int c = r + 1; c < m; ++c)
      if (pick(rng, 0, 2) == 0) u.at(r, c) = FieldOps<K>::fromInt(pick(rng, -2, 2), field);
  return u;
}

}  // namespace detail

/// Assembles a random finite complex with a cyclic pairing out of certified
/// building blocks, then hides the seams behind a random basis change.
///
/// Blocks, all confined to degrees 0..n and pairwise orthogonal:
///  - harmonic dual pairs: closed vectors in complementary degrees with a
///    perfect pairing (a single self-paired vector at an even middle degree);
///  - differential quads c -> u in complementary degree pairs (p, n-1-p)
///    whose cross pairings satisfy the differential law, contributing
///    nothing to homology or to the radical;
///  - cross-paired coexact quads: two non-closed vectors in degrees p and
///    n-p that pair nontrivially while their differentials fall into the
///    radical -- each such block makes the radical non-acyclic and defeats
///    every basis-preserving shear;
///  - silent pairs c -> u with no pairing at all: radical but acyclic.
///
/// The homology pairing is perfect by construction, so feasibility of the
/// coexact shear is governed entirely by the obstruction count.
template <class K>
GeneratedComplex<K> randomCyclicComplex(std::mt19937_64& rng, const FieldSpec& field,
                                        const ComplexGenOptions& opt = {}) {
  using detail::pick;
  int n = pick(rng, opt.minDegree, opt.maxDegree);

  GradedVectorSpace sp;
  sp.labels.resize(n + 1);
  auto add = [&](int d, const std::string& l) {
    sp.labels[d].push_back(l);
    return static_cast<int>(sp.labels[d].size()) - 1;
  };

  struct DEdge {
    int deg, src, dst;
    K coeff;
  };
  struct GEntry {
    int deg, row, col;
    K val;
  };
  std::vector<DEdge> edges;
  std::vector<GEntry> entries;
  // Records <row, col> = s at left degree i together with the graded-
  // symmetric mirror entry.
  auto addPair = [&](int i, int r, int c, K s) {
    entries.push_back({i, r, c, s});
    int j = n - i;
    if (i != j)
      entries.push_back({j, c, r, koszulSign<K>(i, j) * s});
    else if (r != c)
      entries.push_back({i, c, r, koszulSign<K>(i, i) * s});
  };

  int harmonic = pick(rng, 1, 3);
  int quads = pick(rng, 0, 3);
  int degen = pick(rng, 0, 2);
  int obstructions = opt.obstructionQuads >= 0
                         ? opt.obstructionQuads
                         : (pick(rng, 0, 1) == 1 ? pick(rng, 1, 2) : 0);

  for (int k = 0; k < harmonic; ++k) {
    std::string t = std::to_string(k);
    int a = pick(rng, 0, n / 2);
    K s = detail::unitValue<K>(rng, field);
    if (2 * a == n) {
      if (a % 2 == 0) {
        int i = add(a, "h" + t);
        addPair(a, i, i, s);
      } else {
        int i1 = add(a, "ha" + t);
        int i2 = add(a, "hb" + t);
        addPair(a, i1, i2, s);
      }
    } else {
      int i1 = add(a, "ha" + t);
      int i2 = add(n - a, "hb" + t);
      addPair(a, i1, i2, s);
    }
  }

  for (int k = 0; k < quads; ++k) {
    std::string t = std::to_string(k);
    int p = pick(rng, 0, n - 1);
    int q = n - 1 - p;
    K coeff = detail::unitValue<K>(rng, field);
    int ca = add(p, "ca" + t);
    int ua = add(p + 1, "ua" + t);
    int cb = add(q, "cb" + t);
    int ub = add(q + 1, "ub" + t);
    edges.push_back({p, ca, ua, coeff});
    edges.push_back({q, cb, ub, coeff});
    K s = detail::unitValue<K>(rng, field);
    addPair(p, ca, ub, s);
    // The differential law pins the second cross pairing to (-1)^{1+p} s.
    addPair(p + 1, ua, cb, p % 2 == 0 ? -s : s);
  }

  for (int k = 0; k < obstructions; ++k) {
    std::string t = std::to_string(k);
    int p = pick(rng, 1, n / 2);
    int q = n - p;
    int ca = add(p, "oa" + t);
    int ua = add(p + 1, "pa" + t);
    int cb = add(q, "ob" + t);
    int ub = add(q + 1, "pb" + t);
    edges.push_back({p, ca, ua, detail::unitValue<K>(rng, field)});
    edges.push_back({q, cb, ub, detail::unitValue<K>(rng, field)});
    addPair(p, ca, cb, detail::unitValue<K>(rng, field));
  }

  for (int k = 0; k < degen; ++k) {
    std::string t = std::to_string(k);
    int r = pick(rng, 0, n - 1);
    int c = add(r, "na" + t);
    int u = add(r + 1, "nb" + t);
    edges.push_back({r, c, u, detail::unitValue<K>(rng, field)});
  }

  Complex<K> cx;
  cx.field = field;
  cx.space = sp;
  cx.d = GradedLinearMap<K>::zero(sp, sp, 1);
  for (const DEdge& e : edges) cx.d.block(e.deg).at(e.dst, e.src) += e.coeff;

  CyclicPairing<K> pr = CyclicPairing<K>::zeroOn(sp, n);
  for (const GEntry& e : entries) pr.gram[e.deg].at(e.row, e.col) += e.val;

  // Random change of basis: pushes the block structure out of sight while
  // preserving the differential, the pairing laws, and the radical homology.
  if (pick(rng, 0, 3) > 0) {
    std::vector<Matrix<K>> g(n + 1), gi(n + 1);
    for (int d = 0; d <= n; ++d) {
      g[d] = detail::unipotent<K>(rng, field, sp.dim(d));
      gi[d] = *inverseMatrix(g[d]);
    }
    for (int d = 0; d < n; ++d) cx.d.block(d) = g[d + 1] * cx.d.block(d) * gi[d];
    for (int i = 0; i <= n; ++i) pr.gram[i] = gi[i].transpose() * pr.gram[i] * gi[n - i];
  }

  GeneratedComplex<K> out;
  out.cx = std::move(cx);
  out.pr = std::move(pr);
  out.recipe = {n, harmonic, quads, obstructions, degen, obstructions == 0};
  return out;
}

/// The four-class oriented algebra {1, x, y, xy} with x in degree a and y in
/// degree n-a: zero differential, x*y spanning the top, perfect chain-level
/// pairing, connected and simply connected for a >= 2.
inline OrientedAlgebra<Rational> dualPairCore(int a, int n) {
  if (a < 2 || n - a < a)
    throw std::invalid_argument("a dual pair core needs 2 <= a <= n-a");
  AlgebraBuilder<Rational> b(FieldSpec::rationals(),
                             "s" + std::to_string(a) + "x" + std::to_string(n - a));
  b.basis(0, {"1"});
  if (a == n - a) {
    b.basis(a, {"x", "y"});
  } else {
    b.basis(a, {"x"});
    b.basis(n - a, {"y"});
  }
  b.basis(n, {"v"});
  b.product("x", "y", {{"v", 1}});
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(n, {{"v", 1}});
  return out;
}

/// Adjoins two non-closed generators in complementary degrees p and n-p whose
/// product spans the top class while their differentials multiply to zero
/// with everything. Homology is unchanged (the block is acyclic), but both
/// differentials now generate radical homology classes that no shear of the
/// coexact summand can remove.
///
/// The base must be stored exactly through its top degree with nothing above,
/// so that the vanishing of all products out of the new generators is forced
/// by degree rather than by truncation.
inline OrientedAlgebra<Rational> adjoinObstructionBlock(const OrientedAlgebra<Rational>& base,
                                                        int p, int tag) {
  if (!base.orient) throw std::invalid_argument("adjoinObstructionBlock needs an orientation");
  const Algebra<Rational>& A = base.alg;
  int n = base.orient->degree;
  if (A.truncation)
    throw std::invalid_argument("adjoinObstructionBlock needs an untruncated base");
  if (A.space.maxDegree() != n)
    throw std::invalid_argument("adjoinObstructionBlock needs the base to stop at its top degree");
  int q = n - p;
  if (p < 2 || q < p) throw std::invalid_argument("the block needs 2 <= p <= n-p");

  int topIdx = -1;
  for (int i = 0; i < static_cast<int>(base.orient->row.size()); ++i)
    if (!isZero(base.orient->row[i])) {
      topIdx = i;
      break;
    }
  if (topIdx < 0) throw std::invalid_argument("the orientation row is zero");

  std::string t = std::to_string(tag);
  Algebra<Rational> B = A;
  B.name = A.name + "+o" + t;
  auto push = [&](int d, const std::string& l) {
    if (B.space.find(l)) throw std::logic_error("label collision: " + l);
    B.space.labels[d].push_back(l);
    return static_cast<int>(B.space.labels[d].size()) - 1;
  };
  int ia = push(p, "oa" + t);
  int iu = push(p + 1, "da" + t);
  int ib = push(q, "ob" + t);
  int iv = push(q + 1, "db" + t);

  // Rebuild the differential on the grown space; appending basis vectors
  // keeps every old index valid.
  B.d = GradedLinearMap<Rational>::zero(B.space, B.space, 1);
  for (int d = 0; d < n; ++d) {
    const Matrix<Rational>& old = A.d.block(d);
    for (int r = 0; r < old.rows(); ++r)
      for (int c = 0; c < old.cols(); ++c)
        if (!isZero(old.at(r, c))) B.d.block(d).at(r, c) = old.at(r, c);
  }
  B.d.block(p).at(iu, ia) = Rational(1);
  B.d.block(q).at(iv, ib) = Rational(1);

  auto unitProducts = [&](int d, int i) {
    B.prod[ProdKey{0, A.unitIndex, d, i}] = {{i, Rational(1)}};
    B.prod[ProdKey{d, i, 0, A.unitIndex}] = {{i, Rational(1)}};
  };
  unitProducts(p, ia);
  unitProducts(p + 1, iu);
  unitProducts(q, ib);
  unitProducts(q + 1, iv);
  B.prod[ProdKey{p, ia, q, ib}] = {{topIdx, Rational(1)}};
  B.prod[ProdKey{q, ib, p, ia}] = {{topIdx, koszulSign<Rational>(p, q)}};

  OrientedAlgebra<Rational> out;
  out.alg = std::move(B);
  Orientation<Rational> o = *base.orient;
  o.row.resize(out.alg.space.dim(n), Rational(0));
  out.orient = std::move(o);
  return out;
}

/// Tensors a contractible two-generator factor (w -> z with z in the given
/// degree) onto an oriented algebra, truncating at the requested bound. The
/// orientation evaluates the left factor on monomials paired with the
/// factor's unit and annihilates everything else, so it keeps vanishing on
/// exact top-degree elements.
inline OrientedAlgebra<Rational> tensorAcyclicFactor(const OrientedAlgebra<Rational>& base,
                                                     int level, const std::string& suffix,
                                                     int trunc) {
  if (!base.orient) throw std::invalid_argument("tensorAcyclicFactor needs an orientation");
  if (level < 3)
    throw std::invalid_argument("the contractible factor needs its closed generator above degree 2");
  FreePresentation<Rational> pres;
  pres.generators = {{"w" + suffix, level - 1}, {"z" + suffix, level}};
  pres.differentials = {{PolyTerm<Rational>{{0, 1}, Rational(1)}}, {}};
  FreeAlgebraData<Rational> fa =
      buildTruncatedFree<Rational>(FieldSpec::rationals(), "wz" + suffix, pres, trunc);
  TensorData<Rational> td =
      tensorProduct<Rational>(base.alg, fa.alg, base.alg.name + "*wz" + suffix, trunc);

  int n = base.orient->degree;
  Orientation<Rational> o;
  o.degree = n;
  o.row = zeroVec<Rational>(td.alg.space.dim(n));
  for (int idx = 0; idx < td.alg.space.dim(n); ++idx) {
    const TensorFactor& f = td.factors[n][idx];
    if (f.degLeft == n && f.degRight == 0 && f.idxRight == fa.alg.unitIndex)
      o.row[idx] = base.orient->row[f.idxLeft];
  }
  OrientedAlgebra<Rational> out;
  out.alg = std::move(td.alg);
  out.orient = std::move(o);
  return out;
}

struct TransportedAlgebra {
  OrientedAlgebra<Rational> doc;
  /// The isomorphism from the source onto doc (degreewise unipotent).
  GradedLinearMap<Rational> map;
};

/// Pushes the whole oriented-algebra structure through a random degreewise
/// unipotent change of basis fixing degree zero: the returned map is an
/// isomorphism of everything (differential, products, unit, orientation).
inline TransportedAlgebra transportAlgebra(std::mt19937_64& rng,
                                           const OrientedAlgebra<Rational>& src) {
  if (!src.orient) throw std::invalid_argument("transportAlgebra needs an orientation");
  const Algebra<Rational>& A = src.alg;
  int top = A.space.maxDegree();

  std::vector<Matrix<Rational>> g(top + 1), gi(top + 1);
  for (int d = 0; d <= top; ++d) {
    g[d] = d == 0 ? Matrix<Rational>::identity(A.space.dim(0))
                  : detail::unipotent<Rational>(rng, A.field, A.space.dim(d));
    gi[d] = *inverseMatrix(g[d]);
  }

  Algebra<Rational> B;
  B.field = A.field;
  B.name = A.name + "-t";
  B.space = A.space;
  B.unitIndex = A.unitIndex;
  B.truncation = A.truncation;
  B.d = GradedLinearMap<Rational>::zero(B.space, B.space, 1);
  for (int d = 0; d < top; ++d) B.d.block(d) = g[d + 1] * A.d.block(d) * gi[d];

  for (int da = 0; da <= top; ++da)
    for (int db = 0; da + db <= top; ++db) {
      if (A.truncation && da + db > *A.truncation) continue;
      for (int ia = 0; ia < A.space.dim(da); ++ia)
        for (int ib = 0; ib < A.space.dim(db); ++ib) {
          Elt<Rational> x{da, gi[da].column(ia)};
          Elt<Rational> y{db, gi[db].column(ib)};
          Elt<Rational> m = A.mul(x, y);
          if (m.v.empty()) continue;
          Vec<Rational> v = g[da + db].apply(m.v);
          std::vector<std::pair<int, Rational>> terms;
          for (int i = 0; i < static_cast<int>(v.size()); ++i)
            if (!isZero(v[i])) terms.push_back({i, v[i]});
          if (!terms.empty()) B.prod[ProdKey{da, ia, db, ib}] = std::move(terms);
        }
    }

  Orientation<Rational> o;
  o.degree = src.orient->degree;
  int n = o.degree;
  o.row = zeroVec<Rational>(B.space.dim(n));
  for (int j = 0; j < B.space.dim(n); ++j)
    for (int i = 0; i < B.space.dim(n); ++i) o.row[j] += src.orient->row[i] * gi[n].at(i, j);

  GradedLinearMap<Rational> map = GradedLinearMap<Rational>::zero(A.space, B.space, 0);
  for (int d = 0; d <= top; ++d) map.block(d) = g[d];

  TransportedAlgebra out;
  out.doc.alg = std::move(B);
  out.doc.orient = std::move(o);
  out.map = std::move(map);
  return out;
}

struct PDGAOptions {
  /// Contractible tensor factors to attach (each truncates at degree + 2).
  int tensorFactors = 1;
  /// Off-middle cross-paired coexact blocks (possible for degree >= 5 only).
  int obstructions = 0;
  /// Plant the middle-degree block that no extension can repair (even degree).
  bool middleObstruction = false;
  /// Hide the construction behind a random basis change.
  bool transport = true;
};

struct PDGARecipe {
  std::string coreName;
  int degree = 0;
  std::vector<int> tensorLevels;
  std::vector<std::pair<int, int>> obstructionPairs;
  bool middlePair = false;
  bool hodgeType = true;
};

struct GeneratedPDGA {
  OrientedAlgebra<Rational> doc;
  OrientedAlgebra<Rational> plain;
  GradedLinearMap<Rational> fromPlain;
  PDGARecipe recipe;
};

/// Random oriented algebra with perfect homology pairing in degrees 4..7:
/// a known perfect-pairing core, optionally poisoned by cross-paired coexact
/// blocks (added while the top degree is still the last stored one), tensored
/// with contractible factors, and finally pushed through a random basis
/// change. The recipe records exactly which repairs are possible.
inline GeneratedPDGA randomPDGA(std::mt19937_64& rng, int degree, const PDGAOptions& opt = {}) {
  using detail::pick;
  if (degree < 4 || degree > 7)
    throw std::invalid_argument("generated instances cover degrees 4 through 7");

  PDGARecipe rec;
  rec.degree = degree;

  OrientedAlgebra<Rational> cur;
  switch (degree) {
    case 4:
      cur = pick(rng, 0, 1) == 0 ? dualPairCore(2, 4) : corpus::cp2Sum7();
      break;
    case 5:
      cur = dualPairCore(2, 5);
      break;
    case 6:
      cur = dualPairCore(pick(rng, 2, 3), 6);
      break;
    default: {
      int c = pick(rng, 0, 2);
      cur = c == 0 ? corpus::v2() : dualPairCore(c + 1, 7);
      break;
    }
  }
  rec.coreName = cur.alg.name;

  int tag = 0;
  for (int k = 0; k < opt.obstructions; ++k) {
    std::vector<int> ps;
    for (int p = 2; 2 * p < degree; ++p) ps.push_back(p);
    if (ps.empty())
      throw std::invalid_argument("no off-middle block fits below degree 5");
    int p = ps[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(ps.size()) - 1))];
    cur = adjoinObstructionBlock(cur, p, tag++);
    rec.obstructionPairs.push_back({p, degree - p});
  }
  if (opt.middleObstruction) {
    if (degree % 2 != 0)
      throw std::invalid_argument("a middle block needs an even top degree");
    cur = adjoinObstructionBlock(cur, degree / 2, tag++);
    rec.obstructionPairs.push_back({degree / 2, degree / 2});
    rec.middlePair = true;
  }
  std::sort(rec.obstructionPairs.begin(), rec.obstructionPairs.end());
  rec.hodgeType = rec.obstructionPairs.empty();

  for (int f = 0; f < opt.tensorFactors; ++f) {
    int level = pick(rng, 3, degree);
    cur = tensorAcyclicFactor(cur, level, "f" + std::to_string(f), degree + 2);
    rec.tensorLevels.push_back(level);
  }

  GeneratedPDGA out;
  out.plain = cur;
  if (opt.transport) {
    TransportedAlgebra t = transportAlgebra(rng, cur);
    out.doc = std::move(t.doc);
    out.fromPlain = std::move(t.map);
  } else {
    out.doc = cur;
    out.fromPlain = GradedLinearMap<Rational>::identityOn(cur.alg.space);
  }
  out.recipe = std::move(rec);
  return out;
}

}  // namespace cdga
