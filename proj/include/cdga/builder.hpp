#pragma once

#include "cdga/cyclic.hpp"

namespace cdga {

/// Convenience for writing small algebras down by hand. Basis vectors are
/// declared per degree; differentials and products are given by label. Each
/// declared product is mirrored to the swapped factor order with the graded
/// sign, and unit products are filled in automatically, so only the
/// interesting half of the table needs to be spelled out.
template <class K>
class AlgebraBuilder {
 public:
  AlgebraBuilder(FieldSpec field, std::string name) {
    alg_.field = field;
    alg_.name = std::move(name);
  }

  AlgebraBuilder& basis(int degree, std::initializer_list<const char*> labels) {
    if (degree >= static_cast<int>(alg_.space.labels.size()))
      alg_.space.labels.resize(degree + 1);
    for (const char* l : labels) alg_.space.labels[degree].push_back(l);
    return *this;
  }

  AlgebraBuilder& truncate(int bound) {
    alg_.truncation = bound;
    return *this;
  }

  /// D(src) = sum of coeff * dst.
  AlgebraBuilder& diff(const std::string& src, std::initializer_list<std::pair<const char*, int>> terms) {
    for (const auto& [dst, c] : terms) diffs_.push_back({src, dst, K(c)});
    return *this;
  }

  /// a * b = sum of coeff * dst; the swapped order is derived.
  AlgebraBuilder& product(const std::string& a, const std::string& b,
                          std::initializer_list<std::pair<const char*, int>> terms) {
    for (const auto& [dst, c] : terms) prods_.push_back({a, b, dst, K(c)});
    return *this;
  }

  Algebra<K> build() {
    const GradedVectorSpace& sp = alg_.space;
    auto locate = [&](const std::string& l) {
      auto pos = sp.find(l);
      if (!pos) throw std::invalid_argument("unknown basis label " + l);
      return *pos;
    };

    auto unit = sp.find("1");
    if (!unit || unit->first != 0)
      throw std::invalid_argument("a basis vector labeled 1 is required in degree 0");
    alg_.unitIndex = unit->second;

    alg_.d = GradedLinearMap<K>::zero(sp, sp, 1);
    for (const auto& [src, dst, c] : diffs_) {
      auto [sd, si] = locate(src);
      auto [dd, di] = locate(dst);
      if (dd != sd + 1)
        throw std::invalid_argument("differential entry " + src + " -> " + dst +
                                    " does not raise degree by one");
      alg_.d.block(sd).at(di, si) += c;
    }

    std::map<ProdKey, std::map<int, K>> table;
    for (const auto& [a, b, dst, c] : prods_) {
      auto [da, ia] = locate(a);
      auto [db, ib] = locate(b);
      auto [dd, di] = locate(dst);
      if (dd != da + db)
        throw std::invalid_argument("product entry " + a + " * " + b + " lands in degree " +
                                    std::to_string(dd) + ", not " + std::to_string(da + db));
      table[ProdKey{da, ia, db, ib}][di] += c;
      if (!(da == db && ia == ib))
        table[ProdKey{db, ib, da, ia}][di] += koszulSign<K>(da, db) * c;
    }
    for (int d = 0; d <= sp.maxDegree(); ++d)
      for (int i = 0; i < sp.dim(d); ++i) {
        if (d == 0 && i == alg_.unitIndex) {
          table[ProdKey{0, alg_.unitIndex, 0, alg_.unitIndex}][alg_.unitIndex] = K(1);
          continue;
        }
        table[ProdKey{0, alg_.unitIndex, d, i}][i] = K(1);
        table[ProdKey{d, i, 0, alg_.unitIndex}][i] = K(1);
      }

    for (const auto& [key, entries] : table) {
      std::vector<std::pair<int, K>> list;
      for (const auto& [idx, c] : entries)
        if (!isZero(c)) list.push_back({idx, c});
      if (!list.empty()) alg_.prod[key] = list;
    }
    return alg_;
  }

  /// Orientation in the given degree with the given label coefficients.
  Orientation<K> orientation(int degree, std::initializer_list<std::pair<const char*, int>> row) const {
    Orientation<K> o;
    o.degree = degree;
    o.row = zeroVec<K>(alg_.space.dim(degree));
    for (const auto& [label, c] : row) {
      auto pos = alg_.space.find(label);
      if (!pos || pos->first != degree)
        throw std::invalid_argument(std::string("orientation label ") + label +
                                    " is not in degree " + std::to_string(degree));
      o.row[pos->second] += K(c);
    }
    return o;
  }

 private:
  Algebra<K> alg_;
  std::vector<std::tuple<std::string, std::string, K>> diffs_;
  std::vector<std::tuple<std::string, std::string, std::string, K>> prods_;
};

/// Sparse description of a degree-0 graded map between two spaces, by label.
template <class K>
GradedLinearMap<K> mapFromEntries(
    const GradedVectorSpace& src, const GradedVectorSpace& dst,
    const std::vector<std::tuple<std::string, std::string, K>>& entries) {
  GradedLinearMap<K> f = GradedLinearMap<K>::zero(src, dst, 0);
  for (const auto& [from, to, c] : entries) {
    auto s = src.find(from);
    if (!s) throw std::invalid_argument("unknown source label " + from);
    auto t = dst.find(to);
    if (!t) throw std::invalid_argument("unknown target label " + to);
    if (t->first != s->first)
      throw std::invalid_argument("entry " + from + " -> " + to + " does not preserve degree");
    f.block(s->first).at(t->second, s->second) += c;
  }
  return f;
}

}  // namespace cdga
