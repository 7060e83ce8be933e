#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdga/algebra.hpp"
#include "cdga/cyclic.hpp"
#include "cdga/hodge.hpp"

namespace cdga {

/// A rooted full binary tree with ordered leaves. Every node carries the
/// color of the edge directly above it (the root included): a white edge
/// applies the identity, a black edge applies the contraction operator.
/// Edges touching a leaf are always white, because the contraction vanishes
/// on harmonic leaves.
struct ColoredTree {
  struct Node {
    int leaf = -1;  // leaf position for leaf nodes, -1 for internal nodes
    int left = -1;
    int right = -1;
    bool black = false;  // color of the edge above this node
  };

  std::vector<Node> nodes;  // preorder; the root is node 0
  int leaves = 0;

  /// Canonical text form: color prefix, then `[name]` for a leaf or
  /// `(left right)` for an internal node. Leaves print their 1-based
  /// position unless names are supplied.
  std::string serialize(const std::vector<std::string>& leafNames = {}) const {
    std::string out;
    appendNode(0, leafNames, out);
    return out;
  }

 private:
  void appendNode(int at, const std::vector<std::string>& leafNames, std::string& out) const {
    const Node& nd = nodes[at];
    out += nd.black ? 'b' : 'w';
    if (nd.leaf >= 0) {
      out += '[';
      out += nd.leaf < static_cast<int>(leafNames.size()) ? leafNames[nd.leaf]
                                                          : std::to_string(nd.leaf + 1);
      out += ']';
    } else {
      out += '(';
      appendNode(nd.left, leafNames, out);
      out += ' ';
      appendNode(nd.right, leafNames, out);
      out += ')';
    }
  }
};

namespace detail {

/// All shapes of full binary trees with the given number of ordered leaves,
/// as all-white node lists. Leaves are numbered left to right.
inline void treeShapes(int leaves, int firstLeaf, std::vector<std::vector<ColoredTree::Node>>& out) {
  if (leaves == 1) {
    out.push_back({ColoredTree::Node{firstLeaf, -1, -1, false}});
    return;
  }
  for (int lcount = 1; lcount < leaves; ++lcount) {
    std::vector<std::vector<ColoredTree::Node>> ls, rs;
    treeShapes(lcount, firstLeaf, ls);
    treeShapes(leaves - lcount, firstLeaf + lcount, rs);
    for (const auto& l : ls) {
      for (const auto& r : rs) {
        std::vector<ColoredTree::Node> shape;
        shape.push_back(ColoredTree::Node{-1, 1, 1 + static_cast<int>(l.size()), false});
        for (ColoredTree::Node nd : l) {
          if (nd.leaf < 0) {
            nd.left += 1;
            nd.right += 1;
          }
          shape.push_back(nd);
        }
        int shiftR = 1 + static_cast<int>(l.size());
        for (ColoredTree::Node nd : r) {
          if (nd.leaf < 0) {
            nd.left += shiftR;
            nd.right += shiftR;
          }
          shape.push_back(nd);
        }
        out.push_back(std::move(shape));
      }
    }
  }
}

}  // namespace detail

/// Enumerates every colored tree on `l` ordered leaves whose value degree —
/// the sum of the leaf degrees minus the number of black edges — can stay
/// within `maxOutDegree`. Leaf-adjacent edges are forced white; the other
/// l-1 edges range over both colors, so an l-leaf shape contributes at most
/// 2^(l-1) trees. Shapes whose all-black coloring already exceeds the bound
/// are dropped wholesale.
inline std::vector<ColoredTree> enumerateTrees(int l, int maxOutDegree,
                                               const std::vector<int>& leafDegrees) {
  if (l < 1) throw std::invalid_argument("a tree needs at least one leaf");
  if (static_cast<int>(leafDegrees.size()) != l)
    throw std::invalid_argument("one degree per leaf is required");
  int degSum = 0;
  for (int d : leafDegrees) degSum += d;

  std::vector<ColoredTree> out;
  if (degSum - (l - 1) > maxOutDegree) return out;

  std::vector<std::vector<ColoredTree::Node>> shapes;
  detail::treeShapes(l, 0, shapes);
  for (const auto& shape : shapes) {
    std::vector<int> internals;
    for (int i = 0; i < static_cast<int>(shape.size()); ++i)
      if (shape[i].leaf < 0) internals.push_back(i);
    int m = static_cast<int>(internals.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      int black = 0;
      for (int b = 0; b < m; ++b)
        if (mask & (1u << b)) ++black;
      if (degSum - black > maxOutDegree) continue;
      ColoredTree t;
      t.leaves = l;
      t.nodes = shape;
      for (int b = 0; b < m; ++b)
        if (mask & (1u << b)) t.nodes[internals[b]].black = true;
      out.push_back(std::move(t));
    }
  }
  return out;
}

namespace detail {

template <class K>
Elt<K> evalNode(const Algebra<K>& a, const GradedLinearMap<K>& h, const ColoredTree& t, int at,
                const std::vector<Elt<K>>& leaves) {
  const ColoredTree::Node& nd = t.nodes[at];
  Elt<K> val;
  if (nd.leaf >= 0) {
    val = leaves[nd.leaf];
  } else {
    Elt<K> l = evalNode(a, h, t, nd.left, leaves);
    Elt<K> r = evalNode(a, h, t, nd.right, leaves);
    val = a.mul(l, r);
  }
  if (nd.black) val = h.apply(val);
  return val;
}

}  // namespace detail

/// Evaluates a colored tree: leaves are substituted in order, every internal
/// node multiplies its children, and each black edge applies the contraction
/// operator to the value passing through it.
template <class K>
Elt<K> evalTree(const Algebra<K>& a, const GradedLinearMap<K>& h, const ColoredTree& t,
                const std::vector<Elt<K>>& leaves) {
  if (static_cast<int>(leaves.size()) != t.leaves)
    throw std::invalid_argument("leaf count does not match the tree");
  return detail::evalNode(a, h, t, 0, leaves);
}

/// Convenience form that derives the contraction operator from a splitting
/// and insists the leaves are harmonic, which is what makes the degree
/// bounds for tree values hold.
template <class K>
Elt<K> evalTree(const Algebra<K>& a, const HodgeData<K>& hd, const ColoredTree& t,
                const std::vector<Elt<K>>& leaves) {
  if (static_cast<int>(leaves.size()) != t.leaves)
    throw std::invalid_argument("leaf count does not match the tree");
  for (const Elt<K>& e : leaves) {
    if (e.deg < 0 || e.deg > hd.maxDegree() || !spanContains(hd.h[e.deg], e.v))
      throw std::invalid_argument("evaluation leaves must be harmonic");
  }
  GradedLinearMap<K> h = standardHomotopy(a.asComplex(), hd);
  return evalTree(a, h, t, leaves);
}

/// The subspace generated from the harmonic part by products, the
/// differential, and the contraction operator, recorded degreewise up to a
/// cap. Degrees the computation could not certify as complete (because a
/// nonzero product landed just past the cap and was discarded) carry a flag.
template <class K>
struct SmallSubalgebra {
  std::vector<Matrix<K>> basis;  // canonical column span per degree, ambient coordinates
  int degreeCap = 0;
  std::vector<bool> capHit;
  bool finitenessGuarantee = false;  // harmonic part connected and simply connected
  int rounds = 0;
};

namespace detail {

template <class K>
bool harmonicConnectedSimplyConnected(const HodgeData<K>& hd) {
  if (hd.maxDegree() < 0 || hd.h[0].cols() != 1) return false;
  if (hd.maxDegree() >= 1 && hd.h[1].cols() != 0) return false;
  return true;
}

template <class K>
void requireTreeHypotheses(const HodgeData<K>& hd) {
  if (!harmonicConnectedSimplyConnected(hd))
    throw std::invalid_argument(
        "tree spans require a connected and simply connected harmonic part");
}

/// Appends a column if it enlarges the span; returns whether it did.
template <class K>
bool growSpan(Matrix<K>& span, const Vec<K>& v) {
  if (isZeroVec(v) || spanContains(span, v)) return false;
  span = span.hcat(Matrix<K>::fromColumns({v}, span.rows()));
  return true;
}

}  // namespace detail

/// Closure iteration: seed the unit and the harmonic part, then repeatedly
/// close under the differential, the contraction operator, and products,
/// keeping only degrees up to the cap and reducing each degree to a
/// canonical basis every round. Terminates because the ambient space is
/// finite-dimensional. The default cap is the top stored degree.
template <class K>
SmallSubalgebra<K> smallSubalgebra(const Algebra<K>& a, const HodgeData<K>& hd,
                                   int degreeCap = -1) {
  int top = a.space.maxDegree();
  int cap = degreeCap < 0 ? top : degreeCap;
  GradedLinearMap<K> h = standardHomotopy(a.asComplex(), hd);

  SmallSubalgebra<K> s;
  s.degreeCap = cap;
  s.capHit.assign(cap + 1, false);
  s.finitenessGuarantee = detail::harmonicConnectedSimplyConnected(hd);
  s.basis.resize(cap + 1);
  for (int d = 0; d <= cap; ++d) s.basis[d] = Matrix<K>(a.space.dim(d), 0);

  detail::growSpan(s.basis[0], a.unitElt().v);
  for (int d = 0; d <= std::min(cap, hd.maxDegree()); ++d)
    for (int c = 0; c < hd.h[d].cols(); ++c) detail::growSpan(s.basis[d], hd.h[d].column(c));

  bool changed = true;
  while (changed) {
    changed = false;
    ++s.rounds;
    for (int d = 0; d <= cap; ++d) {
      for (int c = 0; c < s.basis[d].cols(); ++c) {
        Elt<K> x{d, s.basis[d].column(c)};
        if (d + 1 <= cap) changed |= detail::growSpan(s.basis[d + 1], a.diff(x).v);
        if (d >= 1) changed |= detail::growSpan(s.basis[d - 1], h.apply(x).v);
      }
    }
    for (int da = 0; da <= cap; ++da) {
      for (int db = da; da + db <= cap; ++db) {
        for (int ca = 0; ca < s.basis[da].cols(); ++ca) {
          Elt<K> x{da, s.basis[da].column(ca)};
          for (int cb = 0; cb < s.basis[db].cols(); ++cb) {
            Elt<K> y{db, s.basis[db].column(cb)};
            changed |= detail::growSpan(s.basis[da + db], a.mul(x, y).v);
          }
        }
      }
    }
    for (int d = 0; d <= cap; ++d) s.basis[d] = canonicalSpan(s.basis[d]);
  }

  // A nonzero product landing at cap+1 was discarded; a single contraction
  // step could have carried it back to the cap degree, so that degree is not
  // certified. Deeper overshoots can never return below their own degree
  // minus one, hence never reach the capped range.
  if (cap + 1 <= top) {
    for (int da = 0; da <= cap && !s.capHit[cap]; ++da) {
      int db = cap + 1 - da;
      if (db < da || db > cap) continue;
      for (int ca = 0; ca < s.basis[da].cols() && !s.capHit[cap]; ++ca) {
        Elt<K> x{da, s.basis[da].column(ca)};
        for (int cb = 0; cb < s.basis[db].cols(); ++cb) {
          Elt<K> y{db, s.basis[db].column(cb)};
          if (!isZeroVec(a.mul(x, y).v)) {
            s.capHit[cap] = true;
            break;
          }
        }
      }
    }
  }
  return s;
}

/// Checks that a degreewise subspace really is closed under the structure
/// maps, contains the harmonic part and the unit, and splits degreewise into
/// harmonic, exact, and contracted summands.
template <class K>
CheckReport verifyClosure(const Algebra<K>& a, const HodgeData<K>& hd,
                          const SmallSubalgebra<K>& s) {
  CheckReport rep;
  int cap = s.degreeCap;
  if (static_cast<int>(s.basis.size()) != cap + 1) {
    rep.fail("one basis block per degree up to the cap is required");
    return rep;
  }
  for (int d = 0; d <= cap; ++d) {
    if (s.basis[d].rows() != a.space.dim(d)) {
      rep.fail("basis block " + std::to_string(d) + " has the wrong ambient height");
      return rep;
    }
  }
  GradedLinearMap<K> h = standardHomotopy(a.asComplex(), hd);

  if (!spanContains(s.basis[0], a.unitElt().v)) rep.fail("the unit is missing from the span");

  for (int d = 0; d <= std::min(cap, hd.maxDegree()); ++d)
    for (int c = 0; c < hd.h[d].cols(); ++c)
      if (!spanContains(s.basis[d], hd.h[d].column(c)))
        rep.fail("a harmonic vector escapes the span at degree " + std::to_string(d));

  for (int d = 0; d <= cap; ++d) {
    for (int c = 0; c < s.basis[d].cols(); ++c) {
      Elt<K> x{d, s.basis[d].column(c)};
      if (d + 1 <= cap && !spanContains(s.basis[d + 1], a.diff(x).v))
        rep.fail("the differential leaves the span at degree " + std::to_string(d));
      if (d >= 1 && !spanContains(s.basis[d - 1], h.apply(x).v))
        rep.fail("the contraction leaves the span at degree " + std::to_string(d));
    }
  }

  for (int da = 0; da <= cap; ++da) {
    for (int db = da; da + db <= cap; ++db) {
      for (int ca = 0; ca < s.basis[da].cols(); ++ca) {
        Elt<K> x{da, s.basis[da].column(ca)};
        for (int cb = 0; cb < s.basis[db].cols(); ++cb) {
          Elt<K> y{db, s.basis[db].column(cb)};
          if (!spanContains(s.basis[da + db], a.mul(x, y).v)) {
            rep.fail("a product leaves the span at degrees (" + std::to_string(da) + ", " +
                     std::to_string(db) + ")");
          }
        }
      }
    }
  }

  // Degreewise splitting: span = harmonic + differential images + contraction
  // images, and the dimensions add up. At the cap degree this is only
  // meaningful when nothing lives above the stored range.
  for (int d = 0; d <= cap; ++d) {
    if (d == cap && cap != a.space.maxDegree()) continue;
    Matrix<K> combined = d <= hd.maxDegree() ? hd.h[d] : Matrix<K>(a.space.dim(d), 0);
    int expect = combined.cols();
    if (d >= 1) {
      Matrix<K> dPart = a.d.block(d - 1) * s.basis[d - 1];
      expect += rank(dPart);
      combined = combined.hcat(dPart);
    }
    if (d + 1 <= cap) {
      Matrix<K> hPart = h.block(d + 1) * s.basis[d + 1];
      expect += rank(hPart);
      combined = combined.hcat(hPart);
    }
    if (rank(combined) != s.basis[d].cols() || expect != s.basis[d].cols())
      rep.fail("the span does not split into harmonic, exact, and contracted parts at degree " +
               std::to_string(d));
  }
  return rep;
}

/// Span of all colored-tree evaluations with harmonic leaves of positive
/// degree, by explicit enumeration of leaf tuples and trees, with the unit
/// adjoined. Requires the harmonic part to be connected and simply
/// connected: that gives every nonzero l-leaf value degree at least l+1, so
/// the enumeration terminates.
template <class K>
std::vector<Matrix<K>> treeEvaluationSpan(const Algebra<K>& a, const HodgeData<K>& hd, int cap) {
  detail::requireTreeHypotheses(hd);
  GradedLinearMap<K> h = standardHomotopy(a.asComplex(), hd);

  std::vector<Matrix<K>> spans(cap + 1, Matrix<K>(0, 0));
  for (int d = 0; d <= cap; ++d) spans[d] = Matrix<K>(a.space.dim(d), 0);
  detail::growSpan(spans[0], a.unitElt().v);

  std::vector<Elt<K>> pool;
  for (int d = 1; d <= std::min(cap, hd.maxDegree()); ++d)
    for (int c = 0; c < hd.h[d].cols(); ++c) pool.push_back(Elt<K>{d, hd.h[d].column(c)});
  for (const Elt<K>& e : pool) detail::growSpan(spans[e.deg], e.v);
  if (pool.empty()) {
    for (int d = 0; d <= cap; ++d) spans[d] = canonicalSpan(spans[d]);
    return spans;
  }

  int minDeg = pool[0].deg;
  for (const Elt<K>& e : pool) minDeg = std::min(minDeg, e.deg);

  std::vector<Elt<K>> leaves;
  std::vector<int> degs;
  int curSum = 0;
  auto tuples = [&](auto&& self, int remaining, int l) -> void {
    if (curSum + remaining * minDeg - (l - 1) > cap) return;
    if (remaining == 0) {
      for (const ColoredTree& t : enumerateTrees(l, cap, degs)) {
        Elt<K> v = evalTree(a, h, t, leaves);
        if (v.deg <= cap && !isZeroVec(v.v)) detail::growSpan(spans[v.deg], v.v);
      }
      return;
    }
    for (const Elt<K>& e : pool) {
      leaves.push_back(e);
      degs.push_back(e.deg);
      curSum += e.deg;
      self(self, remaining - 1, l);
      curSum -= e.deg;
      degs.pop_back();
      leaves.pop_back();
    }
  };
  for (int l = 2; l * minDeg - (l - 1) <= cap; ++l) tuples(tuples, l, l);

  for (int d = 0; d <= cap; ++d) spans[d] = canonicalSpan(spans[d]);
  return spans;
}

/// The same span computed level by level: the span of l-leaf values is
/// generated by products of values from complementary leaf counts, with and
/// without one application of the contraction operator on top. Multilinearity
/// makes the leveled spans equal to the explicitly enumerated ones while
/// staying polynomial in the ambient dimension.
template <class K>
std::vector<Matrix<K>> leveledTreeSpan(const Algebra<K>& a, const HodgeData<K>& hd, int cap) {
  detail::requireTreeHypotheses(hd);
  GradedLinearMap<K> h = standardHomotopy(a.asComplex(), hd);
  int top = a.space.maxDegree();

  std::vector<Matrix<K>> result(cap + 1, Matrix<K>(0, 0));
  for (int d = 0; d <= cap; ++d) result[d] = Matrix<K>(a.space.dim(d), 0);
  detail::growSpan(result[0], a.unitElt().v);

  auto emptyLevel = [&]() {
    std::vector<Matrix<K>> lvl(top + 1, Matrix<K>(0, 0));
    for (int d = 0; d <= top; ++d) lvl[d] = Matrix<K>(a.space.dim(d), 0);
    return lvl;
  };

  std::vector<std::vector<Matrix<K>>> levels;
  levels.push_back(emptyLevel());  // unused level 0
  levels.push_back(emptyLevel());
  int minDeg = top + 1;
  for (int d = 1; d <= std::min({cap, top, hd.maxDegree()}); ++d) {
    for (int c = 0; c < hd.h[d].cols(); ++c)
      if (detail::growSpan(levels[1][d], hd.h[d].column(c))) minDeg = std::min(minDeg, d);
  }
  for (int d = 0; d <= top; ++d) {
    levels[1][d] = canonicalSpan(levels[1][d]);
    if (d <= cap) for (int c = 0; c < levels[1][d].cols(); ++c)
        detail::growSpan(result[d], levels[1][d].column(c));
  }
  if (minDeg > top) {
    for (int d = 0; d <= cap; ++d) result[d] = canonicalSpan(result[d]);
    return result;
  }

  for (int s = 2; s * minDeg - (s - 1) <= cap; ++s) {
    std::vector<Matrix<K>> lvl = emptyLevel();
    bool any = false;
    for (int split = 1; split < s; ++split) {
      const std::vector<Matrix<K>>& ls = levels[split];
      const std::vector<Matrix<K>>& rs = levels[s - split];
      for (int dx = 1; dx <= top; ++dx) {
        if (ls[dx].cols() == 0) continue;
        for (int dy = 1; dx + dy <= top; ++dy) {
          if (rs[dy].cols() == 0) continue;
          for (int cx = 0; cx < ls[dx].cols(); ++cx) {
            Elt<K> x{dx, ls[dx].column(cx)};
            for (int cy = 0; cy < rs[dy].cols(); ++cy) {
              Elt<K> p = a.mul(x, Elt<K>{dy, rs[dy].column(cy)});
              if (isZeroVec(p.v)) continue;
              any |= detail::growSpan(lvl[p.deg], p.v);
              Elt<K> hp = h.apply(p);
              if (!isZeroVec(hp.v)) any |= detail::growSpan(lvl[hp.deg], hp.v);
            }
          }
        }
      }
    }
    for (int d = 0; d <= top; ++d) {
      lvl[d] = canonicalSpan(lvl[d]);
      if (d <= cap) for (int c = 0; c < lvl[d].cols(); ++c) detail::growSpan(result[d], lvl[d].column(c));
    }
    levels.push_back(std::move(lvl));
    if (!any) break;
  }

  for (int d = 0; d <= cap; ++d) result[d] = canonicalSpan(result[d]);
  return result;
}

/// A generated subspace packaged as an oriented algebra of its own, with the
/// inclusion back into the ambient algebra.
template <class K>
struct SmallEmbedding {
  OrientedAlgebra<K> doc;
  GradedLinearMap<K> inclusion;
};

/// Turns a closed span into a standalone oriented algebra on its own basis.
/// Degree zero must be exactly the line through the unit. Structure
/// constants are the ambient ones re-expressed in the span's basis; degrees
/// past the cap are treated as truncated away unless the cap already covers
/// every stored ambient degree of an untruncated algebra.
template <class K>
SmallEmbedding<K> embedSmall(const Algebra<K>& a, const Orientation<K>& orient,
                             const SmallSubalgebra<K>& s) {
  int cap = s.degreeCap;
  if (orient.degree > cap)
    throw std::invalid_argument("the orientation degree must lie within the cap");
  if (s.basis.empty() || s.basis[0].cols() != 1 || !spanContains(s.basis[0], a.unitElt().v))
    throw std::invalid_argument("embedding requires degree zero to be the unit line");

  Algebra<K> sub;
  sub.field = a.field;
  sub.name = a.name + "-small";
  sub.space.labels.resize(cap + 1);
  std::vector<Matrix<K>> basis = s.basis;
  basis[0] = Matrix<K>::fromColumns({a.unitElt().v}, a.space.dim(0));
  for (int d = 0; d <= cap; ++d)
    for (int c = 0; c < basis[d].cols(); ++c)
      sub.space.labels[d].push_back("s" + std::to_string(d) + "_" + std::to_string(c));
  sub.unitIndex = 0;

  sub.d = GradedLinearMap<K>::zero(sub.space, sub.space, 1);
  for (int d = 0; d < cap; ++d) {
    std::optional<Matrix<K>> coords = solveColumns(basis[d + 1], a.d.block(d) * basis[d]);
    if (!coords) throw std::invalid_argument("the span is not closed under the differential");
    sub.d.block(d) = *coords;
  }

  for (int da = 0; da <= cap; ++da) {
    for (int db = 0; da + db <= cap; ++db) {
      for (int ca = 0; ca < basis[da].cols(); ++ca) {
        Elt<K> x{da, basis[da].column(ca)};
        for (int cb = 0; cb < basis[db].cols(); ++cb) {
          Elt<K> p = a.mul(x, Elt<K>{db, basis[db].column(cb)});
          std::optional<Matrix<K>> coords =
              solveColumns(basis[da + db], Matrix<K>::fromColumns({p.v}, p.v.size()));
          if (!coords) throw std::invalid_argument("the span is not closed under products");
          std::vector<std::pair<int, K>> entries;
          for (int r = 0; r < coords->rows(); ++r)
            if (!isZero(coords->at(r, 0))) entries.push_back({r, coords->at(r, 0)});
          if (!entries.empty()) sub.prod[ProdKey{da, ca, db, cb}] = std::move(entries);
        }
      }
    }
  }

  if (a.truncation)
    sub.truncation = std::min(cap, *a.truncation);
  else if (cap < a.space.maxDegree())
    sub.truncation = cap;

  Orientation<K> subOrient;
  subOrient.degree = orient.degree;
  subOrient.row = zeroVec<K>(basis[orient.degree].cols());
  for (int c = 0; c < basis[orient.degree].cols(); ++c)
    subOrient.row[c] = orient.value(Elt<K>{orient.degree, basis[orient.degree].column(c)});

  SmallEmbedding<K> out;
  out.doc.alg = std::move(sub);
  out.doc.orient = subOrient;
  out.inclusion = GradedLinearMap<K>::zero(out.doc.alg.space, a.space, 0);
  for (int d = 0; d <= cap; ++d) out.inclusion.block(d) = basis[d];
  return out;
}

}  // namespace cdga
