#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cdga/extension.hpp"
#include "cdga/hodge.hpp"
#include "cdga/homology.hpp"
#include "cdga/morphism.hpp"
#include "cdga/small.hpp"

namespace cdga {

/// How buildPDModel reaches a nondegenerate representative: Small passes
/// through the subalgebra generated by the harmonic part, Extend adjoins
/// contractible generator pairs first, Auto picks Small whenever the input
/// admits a self-orthogonal splitting and falls back to Extend otherwise.
enum class ModelRoute { Auto, Small, Extend };

/// A finite-dimensional nondegenerate model of the input together with the
/// two-leg bridge that connects them: for the Small route the stage embeds
/// into the input (stageMap: stage -> input), for the Extend route the input
/// embeds into the stage (stageMap: input -> stage); either way the
/// projection collapses the stage onto the model. Both legs ship with full
/// morphism reports, and the model with its classification.
template <class K>
struct ModelResult {
  OrientedAlgebra<K> model;
  OrientedAlgebra<K> stage;
  GradedLinearMap<K> stageMap;
  GradedLinearMap<K> projection;
  ModelRoute routeTaken = ModelRoute::Auto;
  MorphismReport stageReport;
  MorphismReport projectionReport;
  Classification modelClass;
  bool modelBounded = false;  // nothing above the pairing degree survives
  int pairsAdjoined = 0;
  bool middleTwistApplied = false;

  bool ok() const {
    return stageReport.ok() && projectionReport.ok() && modelClass.isDPD && modelBounded;
  }
};

namespace detail {

template <class K>
void finishModel(ModelResult<K>& out, int n) {
  out.modelClass = classify(out.model.alg, *out.model.orient);
  out.modelBounded = true;
  for (int d = n + 1; d <= out.model.alg.space.maxDegree(); ++d)
    if (out.model.alg.space.dim(d) != 0) out.modelBounded = false;
}

}  // namespace detail

/// Builds a finite-dimensional nondegenerate model connected to the input by
/// quasi-isomorphisms. Requires homology to be connected and simply
/// connected. The Small route needs a self-orthogonal splitting to exist and
/// throws MiddleObstructionError with a witness pair when the twist search
/// certifies there is none; the Extend route inherits the extension's own
/// preconditions and refusals. The nondegenerate pairing forces the model to
/// vanish above the pairing degree, which is checked and reported.
template <class K>
ModelResult<K> buildPDModel(const OrientedAlgebra<K>& doc, ModelRoute route = ModelRoute::Auto) {
  if (!doc.orient)
    throw std::invalid_argument("buildPDModel: the algebra carries no orientation");
  HomologyData<K> hom = computeHomology(doc.alg);
  if (hom.dim(0) != 1)
    throw std::invalid_argument(
        "buildPDModel: homology must be connected (a single class in degree zero)");
  if (hom.dim(1) != 0)
    throw std::invalid_argument(
        "buildPDModel: homology must be simply connected (no classes in degree one)");

  const int n = doc.orient->degree;
  ModelResult<K> out;

  if (route != ModelRoute::Extend) {
    Complex<K> cx = doc.alg.asComplex();
    CyclicPairing<K> pr = pairingFromOrientation(doc.alg, *doc.orient);
    HodgeData<K> hd = hOrthogonalize(cx, pr);
    TwistOutcome<K> tw = solveTwist(cx, pr, hd);
    if (tw.feasible) {
      TwistedSplitting<K> ts = applyTwist(cx, pr, hd, tw.maps);
      if (!ts.hodge)
        throw std::logic_error(
            "internal: the accepted twist did not produce a self-orthogonal splitting");
      SmallSubalgebra<K> s = smallSubalgebra(doc.alg, ts.data);
      SmallEmbedding<K> emb = embedSmall(doc.alg, *doc.orient, s);
      QuotientAlgebra<K> q = nondegQuotient(emb.doc);
      out.routeTaken = ModelRoute::Small;
      out.stage = std::move(emb.doc);
      out.stageMap = std::move(emb.inclusion);
      out.projection = std::move(q.projection);
      out.model = std::move(q.doc);
      out.stageReport = checkMorphism(out.stageMap, out.stage, doc);
      out.projectionReport = checkMorphism(out.projection, out.stage, out.model);
      detail::finishModel(out, n);
      return out;
    }
    if (route == ModelRoute::Small) {
      TwistObstruction<K> cert;
      if (tw.obstruction)
        cert = std::move(*tw.obstruction);
      else
        cert.note = "the twist search reported infeasibility without a witness";
      throw MiddleObstructionError<K>(std::move(cert));
    }
  }

  HodgeExtension<K> ext = extendToHodgeType(doc);
  QuotientAlgebra<K> q = nondegQuotient(ext.doc);
  out.routeTaken = ModelRoute::Extend;
  out.stage = std::move(ext.doc);
  out.stageMap = std::move(ext.inclusion);
  out.projection = std::move(q.projection);
  out.model = std::move(q.doc);
  out.pairsAdjoined = ext.pairsAdjoined;
  out.middleTwistApplied = ext.middleTwistApplied;
  out.stageReport = checkMorphism(out.stageMap, doc, out.stage);
  out.projectionReport = checkMorphism(out.projection, out.stage, out.model);
  detail::finishModel(out, n);
  return out;
}

/// Convenience form that assembles the oriented algebra first.
template <class K>
ModelResult<K> buildPDModel(const Algebra<K>& a, const Orientation<K>& orient,
                            ModelRoute route = ModelRoute::Auto) {
  OrientedAlgebra<K> doc{a, orient};
  return buildPDModel(doc, route);
}

/// Outcome of probing whether two algebras could both map into the same
/// target by chain-injective quasi-isomorphisms. The pattern checked: one
/// algebra offers a nonzero closed degree-two vector squaring to zero, the
/// other a nonzero closed degree-two vector squaring to something nonzero,
/// and the probe stores nothing in degree one while its closed degree-two
/// part is a single line. Together these force proportional images with
/// contradictory squares, so the constraint system is unsatisfiable; if any
/// ingredient is missing the pattern draws no conclusion and the system is
/// reported satisfiable.
template <class K>
struct EmbeddingReport {
  bool zeroSquareWitness = false;
  bool nonzeroSquareWitness = false;
  bool probeNothingInDegreeOne = false;
  bool probeClosedLineInDegreeTwo = false;
  Vec<K> witnessZero;
  Vec<K> witnessNonzero;
  std::vector<std::string> constraints;
  bool satisfiable = true;
};

namespace detail {

template <class K>
std::vector<Vec<K>> closedDegreeTwo(const Algebra<K>& a) {
  if (a.space.dim(2) == 0) return {};
  return kernelBasis(a.d.block(2));
}

template <class K>
bool squareIsZero(const Algebra<K>& a, const Vec<K>& x) {
  Elt<K> e{2, x};
  Elt<K> sq = a.mul(e, e);
  for (const K& v : sq.v)
    if (!(v == K(0))) return false;
  return true;
}

}  // namespace detail

/// Evaluates the embedding obstruction pattern for the given pair and probe.
template <class K>
EmbeddingReport<K> verifyNoCommonEmbedding(const OrientedAlgebra<K>& first,
                                           const OrientedAlgebra<K>& second,
                                           const OrientedAlgebra<K>& probe) {
  EmbeddingReport<K> rep;
  for (const Vec<K>& x : detail::closedDegreeTwo(first.alg))
    if (detail::squareIsZero(first.alg, x)) {
      rep.zeroSquareWitness = true;
      rep.witnessZero = x;
      break;
    }
  for (const Vec<K>& x : detail::closedDegreeTwo(second.alg))
    if (!detail::squareIsZero(second.alg, x)) {
      rep.nonzeroSquareWitness = true;
      rep.witnessNonzero = x;
      break;
    }
  rep.probeNothingInDegreeOne = probe.alg.space.dim(1) == 0;
  rep.probeClosedLineInDegreeTwo = detail::closedDegreeTwo(probe.alg).size() == 1;

  rep.constraints.push_back(
      rep.zeroSquareWitness
          ? "the first algebra has a nonzero closed degree-two vector with zero square; a "
            "chain-injective quasi-isomorphism keeps its image nonzero, closed, and square-zero"
          : "no closed degree-two basis vector of the first algebra squares to zero, so the "
            "pattern draws no conclusion");
  rep.constraints.push_back(
      rep.nonzeroSquareWitness
          ? "the second algebra has a nonzero closed degree-two vector with nonzero square; a "
            "chain-injective quasi-isomorphism keeps its image nonzero, closed, and its square "
            "nonzero"
          : "every closed degree-two basis vector of the second algebra squares to zero, so the "
            "pattern draws no conclusion");
  rep.constraints.push_back(rep.probeNothingInDegreeOne
                                ? "the probe stores nothing in degree one"
                                : "the probe stores chains in degree one, so closed degree-two "
                                  "vectors need not be proportional to a single line");
  rep.constraints.push_back(rep.probeClosedLineInDegreeTwo
                                ? "the probe's closed degree-two part is a single line, forcing "
                                  "the two images to be proportional"
                                : "the probe's closed degree-two part is not a single line");

  rep.satisfiable = !(rep.zeroSquareWitness && rep.nonzeroSquareWitness &&
                      rep.probeNothingInDegreeOne && rep.probeClosedLineInDegreeTwo);
  if (!rep.satisfiable)
    rep.constraints.push_back(
        "proportional images give the second witness a zero square while injectivity keeps it "
        "nonzero; the constraints are unsatisfiable");
  return rep;
}

}  // namespace cdga
