#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cdga/matrix.hpp"

namespace cdga {

/// A nonnegatively graded vector space presented by labeled basis vectors.
/// Degrees beyond the stored range have dimension zero.
struct GradedVectorSpace {
  std::vector<std::vector<std::string>> labels;

  int maxDegree() const { return static_cast<int>(labels.size()) - 1; }
  int dim(int d) const {
    if (d < 0 || d > maxDegree()) return 0;
    return static_cast<int>(labels[d].size());
  }
  int totalDim() const {
    int n = 0;
    for (const auto& l : labels) n += static_cast<int>(l.size());
    return n;
  }
  const std::string& label(int d, int i) const { return labels[d][i]; }

  /// Locates a label; degrees and indices are its coordinates everywhere else.
  std::optional<std::pair<int, int>> find(const std::string& name) const {
    for (int d = 0; d <= maxDegree(); ++d)
      for (int i = 0; i < dim(d); ++i)
        if (labels[d][i] == name) return std::make_pair(d, i);
    return std::nullopt;
  }

  /// Labels must be globally unique so sparse operator tables are unambiguous.
  std::optional<std::string> duplicateLabel() const {
    std::map<std::string, int> seen;
    for (const auto& degLabels : labels)
      for (const auto& l : degLabels)
        if (++seen[l] > 1) return l;
    return std::nullopt;
  }
};

/// A homogeneous element: a coordinate vector in one degree.
template <class K>
struct Elt {
  int deg = 0;
  Vec<K> v;
};

/// Sign a graded swap of two homogeneous degrees picks up.
template <class K>
K koszulSign(int degA, int degB) {
  return (degA % 2 != 0 && degB % 2 != 0) ? K(-1) : K(1);
}

template <class K>
Elt<K> basisElt(const GradedVectorSpace& sp, int d, int i) {
  Elt<K> e{d, zeroVec<K>(sp.dim(d))};
  e.v[i] = K(1);
  return e;
}

/// A degree-homogeneous linear map between graded spaces, stored as one
/// matrix block per source degree (block d : source degree d -> target
/// degree d + shift).
template <class K>
struct GradedLinearMap {
  int shift = 0;
  std::vector<Matrix<K>> blocks;

  static GradedLinearMap zero(const GradedVectorSpace& src, const GradedVectorSpace& dst,
                              int shift) {
    GradedLinearMap m;
    m.shift = shift;
    m.blocks.resize(src.maxDegree() + 1);
    for (int d = 0; d <= src.maxDegree(); ++d)
      m.blocks[d] = Matrix<K>(dst.dim(d + shift), src.dim(d));
    return m;
  }

  static GradedLinearMap identityOn(const GradedVectorSpace& sp) {
    GradedLinearMap m;
    m.shift = 0;
    m.blocks.resize(sp.maxDegree() + 1);
    for (int d = 0; d <= sp.maxDegree(); ++d) m.blocks[d] = Matrix<K>::identity(sp.dim(d));
    return m;
  }

  int maxSourceDegree() const { return static_cast<int>(blocks.size()) - 1; }

  const Matrix<K>& block(int d) const { return blocks[d]; }
  Matrix<K>& block(int d) { return blocks[d]; }

  /// Applies the map to a homogeneous element. Out-of-range degrees map to
  /// the zero space.
  Elt<K> apply(const Elt<K>& e) const {
    if (e.deg < 0 || e.deg > maxSourceDegree())
      return Elt<K>{e.deg + shift, {}};
    return Elt<K>{e.deg + shift, blocks[e.deg].apply(e.v)};
  }

  /// this after inner (degreewise matrix product).
  GradedLinearMap composeAfter(const GradedLinearMap& inner) const {
    GradedLinearMap out;
    out.shift = shift + inner.shift;
    out.blocks.resize(inner.blocks.size());
    for (int d = 0; d < static_cast<int>(inner.blocks.size()); ++d) {
      int mid = d + inner.shift;
      if (mid >= 0 && mid <= maxSourceDegree() && blocks[mid].cols() == inner.blocks[d].rows()) {
        out.blocks[d] = blocks[mid] * inner.blocks[d];
      } else {
        out.blocks[d] = Matrix<K>(mid >= 0 && mid <= maxSourceDegree() ? blocks[mid].rows() : 0,
                                  inner.blocks[d].cols());
      }
    }
    return out;
  }

  GradedLinearMap operator+(const GradedLinearMap& o) const {
    GradedLinearMap out = *this;
    for (std::size_t d = 0; d < blocks.size(); ++d) out.blocks[d] = blocks[d] + o.blocks[d];
    return out;
  }

  GradedLinearMap operator-(const GradedLinearMap& o) const {
    GradedLinearMap out = *this;
    for (std::size_t d = 0; d < blocks.size(); ++d) out.blocks[d] = blocks[d] - o.blocks[d];
    return out;
  }

  GradedLinearMap scaled(const K& s) const {
    GradedLinearMap out = *this;
    for (auto& b : out.blocks) b = b.scaled(s);
    return out;
  }

  bool isZeroMap() const {
    for (const auto& b : blocks)
      if (!b.isZeroMatrix()) return false;
    return true;
  }
};

/// A cochain complex: graded space with a degree +1 differential and no
/// product. The common ground between algebras and the pairing machinery.
template <class K>
struct Complex {
  FieldSpec field;
  GradedVectorSpace space;
  GradedLinearMap<K> d;
};

}  // namespace cdga
