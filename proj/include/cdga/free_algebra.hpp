#pragma once

#include <algorithm>
#include <array>

#include "cdga/algebra.hpp"

namespace cdga {

/// One generator of a free graded-commutative algebra.
struct FreeGenerator {
  std::string label;
  int degree = 0;
};

/// One monomial term of a polynomial in the generators: exponent per
/// generator (presentation order) and a coefficient.
template <class K>
struct PolyTerm {
  std::vector<int> exponents;
  K coeff = K(0);
};

/// A free graded-commutative algebra presented by generators and the value of
/// the differential on each generator (a polynomial; empty means zero).
template <class K>
struct FreePresentation {
  std::vector<FreeGenerator> generators;
  std::vector<std::vector<PolyTerm<K>>> differentials;
};

/// The built algebra together with the monomial data behind each basis
/// vector, for callers that need word lengths or exponent tuples.
template <class K>
struct FreeAlgebraData {
  Algebra<K> alg;
  std::vector<FreeGenerator> generators;
  std::vector<std::vector<std::vector<int>>> exps;  // [degree][index] -> exponents
  std::map<std::vector<int>, std::pair<int, int>> index;  // exponents -> (degree, index)

  int exponentSum(int deg, int idx) const {
    int s = 0;
    for (int e : exps[deg][idx]) s += e;
    return s;
  }
};

namespace detail {

inline std::string monomialLabel(const std::vector<FreeGenerator>& gens,
                                 const std::vector<int>& e) {
  std::string out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += gens[i].label;
    if (e[i] > 1) out += "^" + std::to_string(e[i]);
  }
  return out.empty() ? "1" : out;
}

inline int monomialDegree(const std::vector<FreeGenerator>& gens, const std::vector<int>& e) {
  int d = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) d += e[i] * gens[i].degree;
  return d;
}

/// Sign picked up when the concatenated word (left factors, then right
/// factors) is sorted back into generator order: one transposition of odd
/// generators per out-of-order pair.
template <class K>
K mergeSign(const std::vector<FreeGenerator>& gens, const std::vector<int>& a,
            const std::vector<int>& b) {
  long swaps = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].degree % 2 == 0 || a[i] == 0) continue;
    for (std::size_t j = 0; j < i; ++j)
      if (gens[j].degree % 2 != 0 && b[j] != 0) swaps += static_cast<long>(a[i]) * b[j];
  }
  return (swaps % 2 != 0) ? K(-1) : K(1);
}

}  // namespace detail

/// Builds the free graded-commutative algebra on the presentation's
/// generators, with everything above `truncation` discarded. Monomials are
/// ordered by (degree, ascending lexicographic exponent tuple); the
/// differential is the product-rule extension of the presented values.
///
/// Without a truncation bound the generators must all have odd degree (the
/// algebra is infinite-dimensional otherwise).
///
/// Throws std::invalid_argument on malformed presentations: empty or
/// duplicate labels, non-positive generator degrees, differential terms of
/// the wrong degree, or a differential that does not square to zero within
/// the stored range.
template <class K>
FreeAlgebraData<K> buildTruncatedFree(const FieldSpec& field, const std::string& name,
                                      const FreePresentation<K>& pres,
                                      std::optional<int> truncation) {
  const auto& gens = pres.generators;
  std::size_t g = gens.size();
  if (pres.differentials.size() != g)
    throw std::invalid_argument("one differential entry is required per generator");

  std::map<std::string, int> seen;
  for (const auto& gen : gens) {
    if (gen.label.empty() || gen.label == "1")
      throw std::invalid_argument("generator labels must be nonempty and distinct from the unit");
    if (++seen[gen.label] > 1) throw std::invalid_argument("duplicate generator label " + gen.label);
    if (gen.degree <= 0) throw std::invalid_argument("generators must live in positive degree");
  }

  int top;
  if (truncation) {
    if (*truncation < 0) throw std::invalid_argument("truncation degree must be nonnegative");
    top = *truncation;
  } else {
    int sum = 0;
    for (const auto& gen : gens) {
      if (gen.degree % 2 == 0)
        throw std::invalid_argument(
            "an untruncated build needs odd-degree generators only; pass a truncation bound");
      sum += gen.degree;
    }
    top = sum;
  }

  for (std::size_t i = 0; i < g; ++i)
    for (const auto& term : pres.differentials[i]) {
      if (term.exponents.size() != g)
        throw std::invalid_argument("differential term has the wrong number of exponents");
      for (std::size_t j = 0; j < g; ++j)
        if (term.exponents[j] < 0 || (gens[j].degree % 2 != 0 && term.exponents[j] > 1))
          throw std::invalid_argument("differential term is not a valid monomial");
      if (detail::monomialDegree(gens, term.exponents) != gens[i].degree + 1)
        throw std::invalid_argument("differential of " + gens[i].label +
                                    " has a term of the wrong degree");
    }

  // Enumerate exponent tuples of total degree <= top.
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(g, 0);
  auto enumerate = [&](auto&& self, std::size_t pos, int budget) -> void {
    if (pos == g) {
      tuples.push_back(cur);
      return;
    }
    int deg = gens[pos].degree;
    int cap = (deg % 2 != 0) ? 1 : budget / deg;
    for (int e = 0; e <= cap && e * deg <= budget; ++e) {
      cur[pos] = e;
      self(self, pos + 1, budget - e * deg);
    }
    cur[pos] = 0;
  };
  enumerate(enumerate, 0, top);

  FreeAlgebraData<K> out;
  out.generators = gens;
  out.alg.field = field;
  out.alg.name = name;
  out.alg.truncation = truncation;
  out.alg.space.labels.assign(top + 1, {});
  out.exps.assign(top + 1, {});

  std::stable_sort(tuples.begin(), tuples.end(), [&](const auto& a, const auto& b) {
    int da = detail::monomialDegree(gens, a);
    int db = detail::monomialDegree(gens, b);
    if (da != db) return da < db;
    return a < b;
  });
  for (const auto& t : tuples) {
    int d = detail::monomialDegree(gens, t);
    out.index[t] = {d, static_cast<int>(out.exps[d].size())};
    out.exps[d].push_back(t);
    out.alg.space.labels[d].push_back(detail::monomialLabel(gens, t));
  }
  out.alg.unitIndex = out.index.at(std::vector<int>(g, 0)).second;

  // Product table: exponent addition, zero when an odd generator squares or
  // the degree leaves the stored range.
  const GradedVectorSpace& sp = out.alg.space;
  for (int da = 0; da <= top; ++da)
    for (int db = 0; da + db <= top; ++db)
      for (int ia = 0; ia < sp.dim(da); ++ia)
        for (int ib = 0; ib < sp.dim(db); ++ib) {
          const std::vector<int>& ea = out.exps[da][ia];
          const std::vector<int>& eb = out.exps[db][ib];
          std::vector<int> sum(g);
          bool dead = false;
          for (std::size_t j = 0; j < g; ++j) {
            sum[j] = ea[j] + eb[j];
            if (gens[j].degree % 2 != 0 && sum[j] > 1) dead = true;
          }
          if (dead) continue;
          K s = detail::mergeSign<K>(gens, ea, eb);
          out.alg.prod[ProdKey{da, ia, db, ib}] = {{out.index.at(sum).second, s}};
        }

  // Differential, extended degree by degree with the product rule: with m the
  // first generator factor g of a monomial split off as m = g * m',
  // D(m) = D(g) * m' + (-1)^{|g|} g * D(m').
  out.alg.d = GradedLinearMap<K>::zero(sp, sp, 1);
  auto genDiff = [&](std::size_t i) -> Elt<K> {
    int dd = gens[i].degree + 1;
    Elt<K> e{dd, zeroVec<K>(sp.dim(dd))};
    for (const auto& term : pres.differentials[i]) {
      if (detail::monomialDegree(gens, term.exponents) > top) continue;
      if (isZero(term.coeff)) continue;
      e.v[out.index.at(term.exponents).second] += term.coeff;
    }
    return e;
  };
  for (int deg = 1; deg <= top; ++deg)
    for (int idx = 0; idx < sp.dim(deg); ++idx) {
      const std::vector<int>& e = out.exps[deg][idx];
      std::size_t i = 0;
      while (e[i] == 0) ++i;
      std::vector<int> rest = e;
      --rest[i];
      auto [rd, ri] = out.index.at(rest);
      Elt<K> gi = basisElt<K>(sp, gens[i].degree, out.index.at([&] {
                                std::vector<int> one(g, 0);
                                one[i] = 1;
                                return one;
                              }()).second);
      Elt<K> restElt = basisElt<K>(sp, rd, ri);
      Elt<K> drest{rd + 1, out.alg.d.block(rd).apply(restElt.v)};
      Elt<K> lhs = out.alg.mul(genDiff(i), restElt);
      Elt<K> rhs = out.alg.mul(gi, drest);
      K sgn = (gens[i].degree % 2 != 0) ? K(-1) : K(1);
      if (deg + 1 <= top)
        for (int r = 0; r < sp.dim(deg + 1); ++r)
          out.alg.d.block(deg).at(r, idx) = lhs.v[r] + sgn * rhs.v[r];
    }

  for (std::size_t i = 0; i < g; ++i) {
    if (gens[i].degree > top) continue;
    std::vector<int> one(g, 0);
    one[i] = 1;
    auto [gd, gidx] = out.index.at(one);
    Elt<K> dd = out.alg.diff(out.alg.diff(basisElt<K>(sp, gd, gidx)));
    if (!isZeroVec(dd.v))
      throw std::invalid_argument("differential does not square to zero on " + gens[i].label);
  }

  return out;
}

/// Which basis vector of each factor a tensor basis vector came from.
struct TensorFactor {
  int degLeft = 0, idxLeft = 0, degRight = 0, idxRight = 0;
};

/// A tensor product algebra together with the factor decomposition of its
/// basis and the two canonical inclusions.
template <class K>
struct TensorData {
  Algebra<K> alg;
  std::vector<std::vector<TensorFactor>> factors;  // [degree][index]
  GradedLinearMap<K> includeLeft;
  GradedLinearMap<K> includeRight;
};

/// Tensor product of two algebras, with the sign-twisted product
/// (x ⊗ m)(y ⊗ m') = (-1)^{|m||y|} (xy ⊗ mm'). Basis vectors are pairs,
/// ordered by (total degree, left degree, left index, right index), labeled
/// leftLabel*rightLabel with unit factors elided.
///
/// A truncation bound must be supplied if either factor carries one, and may
/// not cut below an existing one (products inside that factor would already
/// have been discarded in degrees the result claims to store).
template <class K>
TensorData<K> tensorProduct(const Algebra<K>& x, const Algebra<K>& m, const std::string& name,
                            std::optional<int> truncation) {
  if (!truncation && (x.truncation || m.truncation))
    throw std::invalid_argument("tensor of truncated algebras needs an explicit truncation bound");
  if (truncation && x.truncation && *x.truncation < *truncation)
    throw std::invalid_argument("left factor is truncated below the requested bound");
  if (truncation && m.truncation && *m.truncation < *truncation)
    throw std::invalid_argument("right factor is truncated below the requested bound");
  if (!(x.field == m.field)) throw std::invalid_argument("tensor factors live over different fields");

  int top = truncation ? *truncation : x.space.maxDegree() + m.space.maxDegree();

  TensorData<K> out;
  out.alg.field = x.field;
  out.alg.name = name;
  out.alg.truncation = truncation;
  out.alg.space.labels.assign(top + 1, {});
  out.factors.assign(top + 1, {});

  std::map<std::array<int, 4>, std::pair<int, int>> index;
  for (int deg = 0; deg <= top; ++deg)
    for (int dx = 0; dx <= std::min(deg, x.space.maxDegree()); ++dx) {
      int dm = deg - dx;
      if (dm > m.space.maxDegree()) continue;
      for (int ix = 0; ix < x.space.dim(dx); ++ix)
        for (int im = 0; im < m.space.dim(dm); ++im) {
          index[{dx, ix, dm, im}] = {deg, static_cast<int>(out.factors[deg].size())};
          out.factors[deg].push_back(TensorFactor{dx, ix, dm, im});
          const std::string& lx = x.space.label(dx, ix);
          const std::string& lm = m.space.label(dm, im);
          std::string label = (lx == "1") ? lm : (lm == "1" ? lx : lx + "*" + lm);
          out.alg.space.labels[deg].push_back(label);
        }
    }

  out.alg.unitIndex = index.at({0, x.unitIndex, 0, m.unitIndex}).second;

  const GradedVectorSpace& sp = out.alg.space;

  // Product table.
  for (int da = 0; da <= top; ++da)
    for (int db = 0; da + db <= top; ++db)
      for (int ia = 0; ia < sp.dim(da); ++ia)
        for (int ib = 0; ib < sp.dim(db); ++ib) {
          const TensorFactor& fa = out.factors[da][ia];
          const TensorFactor& fb = out.factors[db][ib];
          K outer = koszulSign<K>(fa.degRight, fb.degLeft);
          Vec<K> px = x.mulBasis(fa.degLeft, fa.idxLeft, fb.degLeft, fb.idxLeft);
          Vec<K> pm = m.mulBasis(fa.degRight, fa.idxRight, fb.degRight, fb.idxRight);
          int dxr = fa.degLeft + fb.degLeft;
          int dmr = fa.degRight + fb.degRight;
          std::vector<std::pair<int, K>> entries;
          for (int rx = 0; rx < static_cast<int>(px.size()); ++rx) {
            if (isZero(px[rx])) continue;
            for (int rm = 0; rm < static_cast<int>(pm.size()); ++rm) {
              if (isZero(pm[rm])) continue;
              entries.push_back(
                  {index.at({dxr, rx, dmr, rm}).second, outer * px[rx] * pm[rm]});
            }
          }
          if (!entries.empty()) out.alg.prod[ProdKey{da, ia, db, ib}] = entries;
        }

  // Differential: D(x ⊗ m) = Dx ⊗ m + (-1)^{|x|} x ⊗ Dm.
  out.alg.d = GradedLinearMap<K>::zero(sp, sp, 1);
  for (int deg = 0; deg < top; ++deg)
    for (int idx = 0; idx < sp.dim(deg); ++idx) {
      const TensorFactor& f = out.factors[deg][idx];
      const Matrix<K>& bx = x.d.block(f.degLeft);
      for (int r = 0; r < bx.rows(); ++r)
        if (!isZero(bx.at(r, f.idxLeft))) {
          auto [td, ti] = index.at({f.degLeft + 1, r, f.degRight, f.idxRight});
          out.alg.d.block(deg).at(ti, idx) += bx.at(r, f.idxLeft);
        }
      K sgn = (f.degLeft % 2 != 0) ? K(-1) : K(1);
      const Matrix<K>& bm = m.d.block(f.degRight);
      for (int r = 0; r < bm.rows(); ++r)
        if (!isZero(bm.at(r, f.idxRight))) {
          auto [td, ti] = index.at({f.degLeft, f.idxLeft, f.degRight + 1, r});
          out.alg.d.block(deg).at(ti, idx) += sgn * bm.at(r, f.idxRight);
        }
    }

  out.includeLeft = GradedLinearMap<K>::zero(x.space, sp, 0);
  for (int d = 0; d <= x.space.maxDegree() && d <= top; ++d)
    for (int i = 0; i < x.space.dim(d); ++i) {
      auto it = index.find({d, i, 0, m.unitIndex});
      if (it != index.end()) out.includeLeft.block(d).at(it->second.second, i) = K(1);
    }
  out.includeRight = GradedLinearMap<K>::zero(m.space, sp, 0);
  for (int d = 0; d <= m.space.maxDegree() && d <= top; ++d)
    for (int i = 0; i < m.space.dim(d); ++i) {
      auto it = index.find({0, x.unitIndex, d, i});
      if (it != index.end()) out.includeRight.block(d).at(it->second.second, i) = K(1);
    }

  return out;
}

}  // namespace cdga
