#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "cdga/generator.hpp"
#include "cdga/json_io.hpp"
#include "cdga/morphism.hpp"
#include "support/testutil.hpp"

using namespace cdga;
using testutil::complexWithPairing;
using testutil::contractionContractHolds;
using testutil::simpleShearSolves;
using R = Rational;

namespace {

/// Runs the full feasibility triangle on one generated complex: the recorded
/// construction truth, the literal radical-homology computation, and the
/// shear solver must all agree, and each side must hand over its evidence
/// (a certified decomposition or a verifiable obstruction witness).
template <class K>
void checkTriangle(const GeneratedComplex<K>& g) {
  const Complex<K>& cx = g.cx;
  const CyclicPairing<K>& pr = g.pr;

  CAPTURE(g.recipe.pairingDegree, g.recipe.harmonicPairs, g.recipe.hodgeQuads,
          g.recipe.obstructionQuads, g.recipe.degeneratePairs);

  REQUIRE(checkCyclic(cx, pr).ok());

  // The homology pairing is perfect by construction.
  HomologyData<K> hom = computeHomology(cx);
  std::vector<Matrix<K>> hg = inducedHomologyGram(pr, hom);
  int n = pr.degree;
  for (int i = 0; i <= n; ++i) {
    REQUIRE(hom.dim(i) == hom.dim(n - i));
    REQUIRE(rank(hg[i]) == hom.dim(i));
  }

  QuotientComplex<K> qc = nondegQuotient(cx, pr);
  REQUIRE(qc.quasiIso == g.recipe.radicalAcyclic);

  HodgeData<K> hd = hOrthogonalize(cx, pr);
  REQUIRE(checkHOrthogonal(cx, pr, hd).ok());

  TwistOutcome<K> tw = solveTwist(cx, pr, hd);
  REQUIRE(tw.feasible == g.recipe.radicalAcyclic);

  if (tw.feasible) {
    REQUIRE(simpleShearSolves(cx, pr, hd, tw.maps));
    TwistedSplitting<K> ts = applyTwist(cx, pr, hd, tw.maps);
    REQUIRE(ts.validSplitting);
    REQUIRE(ts.hOrthogonal);
    REQUIRE(ts.hodge);
    REQUIRE(checkHodge(cx, pr, ts.data).ok());
    GradedLinearMap<K> h = standardHomotopy(cx, ts.data);
    REQUIRE(contractionContractHolds(cx, ts.data, h));
  } else {
    REQUIRE(tw.obstruction.has_value());
    REQUIRE(verifyTwistObstruction(cx, pr, hd, *tw.obstruction));
  }
}

}  // namespace

TEST_CASE("generated complexes obey the pairing laws and match their records") {
  int withObstruction = 0, without = 0;
  for (unsigned seed = 0; seed < 120; ++seed) {
    std::mt19937_64 rng(seed);
    GeneratedComplex<R> g = randomCyclicComplex<R>(rng, FieldSpec::rationals());
    REQUIRE(g.recipe.radicalAcyclic == (g.recipe.obstructionQuads == 0));
    REQUIRE(g.cx.space.maxDegree() == g.recipe.pairingDegree);
    REQUIRE(checkCyclic(g.cx, g.pr).ok());
    (g.recipe.obstructionQuads > 0 ? withObstruction : without) += 1;
  }
  // The default mix must genuinely exercise both feasible and infeasible
  // constructions.
  REQUIRE(withObstruction >= 25);
  REQUIRE(without >= 25);
}

TEST_CASE("shear feasibility matches radical homology on 140 rational instances") {
  for (unsigned seed = 0; seed < 140; ++seed) {
    std::mt19937_64 rng(7000 + seed);
    GeneratedComplex<R> g = randomCyclicComplex<R>(rng, FieldSpec::rationals());
    CAPTURE(seed);
    checkTriangle(g);
  }
}

TEST_CASE("shear feasibility matches radical homology over prime fields") {
  const std::uint64_t primes[] = {5, 7, 101};
  for (unsigned seed = 0; seed < 60; ++seed) {
    FieldSpec field = FieldSpec::primeField(primes[seed % 3]);
    std::mt19937_64 rng(9000 + seed);
    GeneratedComplex<Fp> g = randomCyclicComplex<Fp>(rng, field);
    CAPTURE(seed, primes[seed % 3]);
    checkTriangle(g);
  }
}

TEST_CASE("forced construction modes are honored") {
  ComplexGenOptions opt;
  opt.obstructionQuads = 0;
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(300 + seed);
    GeneratedComplex<R> g = randomCyclicComplex<R>(rng, FieldSpec::rationals(), opt);
    REQUIRE(g.recipe.obstructionQuads == 0);
    REQUIRE(g.recipe.radicalAcyclic);
  }
  opt.obstructionQuads = 2;
  for (unsigned seed = 0; seed < 10; ++seed) {
    std::mt19937_64 rng(400 + seed);
    GeneratedComplex<R> g = randomCyclicComplex<R>(rng, FieldSpec::rationals(), opt);
    REQUIRE(g.recipe.obstructionQuads == 2);
    REQUIRE_FALSE(g.recipe.radicalAcyclic);
  }
}

TEST_CASE("complex generation is deterministic per seed") {
  std::mt19937_64 a(42), b(42), c(43);
  GeneratedComplex<R> g1 = randomCyclicComplex<R>(a, FieldSpec::rationals());
  GeneratedComplex<R> g2 = randomCyclicComplex<R>(b, FieldSpec::rationals());
  GeneratedComplex<R> g3 = randomCyclicComplex<R>(c, FieldSpec::rationals());
  REQUIRE(g1.cx.space.labels == g2.cx.space.labels);
  for (int d = 0; d <= g1.cx.space.maxDegree(); ++d)
    REQUIRE(g1.cx.d.block(d) == g2.cx.d.block(d));
  for (int i = 0; i <= g1.pr.degree; ++i) REQUIRE(g1.pr.gram[i] == g2.pr.gram[i]);
  bool differs = g1.cx.space.labels != g3.cx.space.labels;
  if (!differs)
    for (int d = 0; d <= g1.cx.space.maxDegree() && !differs; ++d)
      differs = !(g1.cx.d.block(d) == g3.cx.d.block(d));
  REQUIRE(differs);
}

TEST_CASE("dual pair cores are closed oriented algebras with perfect pairing") {
  for (auto [a, n] : {std::pair{2, 4}, {2, 5}, {2, 6}, {3, 6}, {2, 7}, {3, 7}}) {
    OrientedAlgebra<R> core = dualPairCore(a, n);
    CAPTURE(a, n);
    REQUIRE(checkCDGA(core.alg).ok());
    REQUIRE(checkOrientation(core.alg, *core.orient).ok());
    Classification cls = classify(core.alg, *core.orient);
    REQUIRE(cls.connected);
    REQUIRE(cls.simplyConnected);
    REQUIRE(cls.isDPD);
    REQUIRE(cls.isPDGA);
  }
}

TEST_CASE("adjoined obstruction blocks keep the axioms and poison the radical") {
  OrientedAlgebra<R> base = dualPairCore(2, 5);
  OrientedAlgebra<R> poisoned = adjoinObstructionBlock(base, 2, 0);
  REQUIRE(checkCDGA(poisoned.alg).ok());
  REQUIRE(checkOrientation(poisoned.alg, *poisoned.orient).ok());
  CyclicPairing<R> pr = pairingFromOrientation(poisoned.alg, *poisoned.orient);
  REQUIRE(checkCyclic(poisoned.alg, pr).ok());

  // Homology is untouched by the acyclic block...
  HomologyData<R> h0 = computeHomology(base.alg);
  HomologyData<R> h1 = computeHomology(poisoned.alg);
  for (int d = 0; d <= 5; ++d) REQUIRE(h0.dim(d) == h1.dim(d));

  // ...but the radical of the chain-level pairing is no longer acyclic.
  auto [cx, prc] = complexWithPairing(poisoned);
  REQUIRE_FALSE(nondegQuotient(cx, prc).quasiIso);
  auto [cx0, pr0] = complexWithPairing(base);
  REQUIRE(nondegQuotient(cx0, pr0).quasiIso);
}

TEST_CASE("generated algebras are law-abiding and correctly classified") {
  for (unsigned seed = 0; seed < 24; ++seed) {
    int degree = 4 + static_cast<int>(seed % 4);
    PDGAOptions opt;
    opt.tensorFactors = static_cast<int>(seed / 4) % 3;
    opt.obstructions = (degree >= 5 && seed % 2 == 1) ? 1 : 0;
    std::mt19937_64 rng(1000 + seed);
    GeneratedPDGA g = randomPDGA(rng, degree, opt);
    CAPTURE(seed, degree, opt.tensorFactors, opt.obstructions);

    REQUIRE(checkCDGA(g.doc.alg).ok());
    REQUIRE(g.doc.orient.has_value());
    REQUIRE(checkOrientation(g.doc.alg, *g.doc.orient).ok());
    CyclicPairing<R> pr = pairingFromOrientation(g.doc.alg, *g.doc.orient);
    REQUIRE(checkCyclic(g.doc.alg, pr).ok());

    Classification cls = classify(g.doc.alg, *g.doc.orient);
    REQUIRE(cls.degree == degree);
    REQUIRE(cls.connected);
    REQUIRE(cls.simplyConnected);
    REQUIRE(cls.isPDGA);
    if (opt.tensorFactors > 0) REQUIRE_FALSE(cls.isDPD);

    // The recorded recipe matches the document.
    REQUIRE(g.recipe.degree == degree);
    REQUIRE(static_cast<int>(g.recipe.tensorLevels.size()) == opt.tensorFactors);
    REQUIRE(g.recipe.hodgeType == (opt.obstructions == 0));

    // Transport is an isomorphism of everything.
    MorphismReport rep = checkMorphism(g.fromPlain, g.plain, g.doc);
    REQUIRE(rep.chainMap);
    REQUIRE(rep.multiplicative);
    REQUIRE(rep.unital);
    REQUIRE(rep.quasiIso);
    REQUIRE(rep.orientationCompatible.has_value());
    REQUIRE(*rep.orientationCompatible);
    CyclicPairing<R> prPlain = pairingFromOrientation(g.plain.alg, *g.plain.orient);
    REQUIRE(preservesPairing(g.fromPlain, prPlain, pr));
    REQUIRE(injectiveDegreewise(g.fromPlain));

    // Homology dimensions are transport-invariant.
    HomologyData<R> hPlain = computeHomology(g.plain.alg);
    HomologyData<R> hDoc = computeHomology(g.doc.alg);
    for (int d = 0; d <= g.doc.alg.space.maxDegree(); ++d)
      REQUIRE(hPlain.dim(d) == hDoc.dim(d));
  }
}

TEST_CASE("planted obstructions control shear feasibility for generated algebras") {
  for (unsigned seed = 0; seed < 18; ++seed) {
    int degree = 5 + static_cast<int>(seed % 3);
    bool plant = seed % 2 == 1;
    PDGAOptions opt;
    opt.tensorFactors = 1 + static_cast<int>(seed / 6) % 2;
    opt.obstructions = plant ? 1 : 0;
    std::mt19937_64 rng(2000 + seed);
    GeneratedPDGA g = randomPDGA(rng, degree, opt);
    CAPTURE(seed, degree, plant);

    auto [cx, pr] = complexWithPairing(g.doc);
    HodgeData<R> hd = hOrthogonalize(cx, pr);
    TwistOutcome<R> tw = solveTwist(cx, pr, hd);
    REQUIRE(tw.feasible == g.recipe.hodgeType);
    if (tw.feasible) {
      TwistedSplitting<R> ts = applyTwist(cx, pr, hd, tw.maps);
      REQUIRE(ts.hodge);
      GradedLinearMap<R> h = standardHomotopy(cx, ts.data);
      REQUIRE(contractionContractHolds(cx, ts.data, h));
    } else {
      REQUIRE(tw.obstruction.has_value());
      REQUIRE(verifyTwistObstruction(cx, pr, hd, *tw.obstruction));
      // The first infeasible pair is the planted one.
      REQUIRE(tw.obstruction->degreeA == g.recipe.obstructionPairs.at(0).first);
      REQUIRE(tw.obstruction->degreeB == g.recipe.obstructionPairs.at(0).second);
    }

    // For untruncated instances the radical-homology criterion is exact.
    if (g.recipe.tensorLevels.empty())
      REQUIRE(nondegQuotient(cx, pr).quasiIso == g.recipe.hodgeType);
  }
}

TEST_CASE("middle-degree blocks defeat the shear solver certifiably") {
  for (int degree : {4, 6}) {
    PDGAOptions opt;
    opt.tensorFactors = degree == 6 ? 1 : 0;
    opt.middleObstruction = true;
    std::mt19937_64 rng(77 + degree);
    GeneratedPDGA g = randomPDGA(rng, degree, opt);
    CAPTURE(degree);
    REQUIRE(checkCDGA(g.doc.alg).ok());
    auto [cx, pr] = complexWithPairing(g.doc);
    HodgeData<R> hd = hOrthogonalize(cx, pr);
    TwistOutcome<R> mid = middleDegreeObstruction(cx, pr, hd);
    REQUIRE_FALSE(mid.feasible);
    REQUIRE(mid.obstruction.has_value());
    REQUIRE(mid.obstruction->degreeA == degree / 2);
    REQUIRE(mid.obstruction->degreeB == degree / 2);
    REQUIRE(verifyTwistObstruction(cx, pr, hd, *mid.obstruction));
  }
}

TEST_CASE("quotients of generated algebras are rigid under transported isomorphisms") {
  std::vector<OrientedAlgebra<R>> sources = {corpus::v1(), corpus::v2(), corpus::cp2Sum7()};
  for (unsigned seed = 0; seed < 6; ++seed) {
    int degree = 5 + static_cast<int>(seed % 3);
    PDGAOptions opt;
    opt.tensorFactors = 1;
    std::mt19937_64 rng(5000 + seed);
    GeneratedPDGA g = randomPDGA(rng, degree, opt);
    QuotientAlgebra<R> q = nondegQuotient(g.doc);
    REQUIRE(classify(q.doc.alg, *q.doc.orient).isDPD);
    sources.push_back(q.doc);
  }

  for (std::size_t k = 0; k < sources.size(); ++k) {
    const OrientedAlgebra<R>& src = sources[k];
    std::mt19937_64 rng(6000 + k);
    TransportedAlgebra t = transportAlgebra(rng, src);
    CAPTURE(k, src.alg.name);

    REQUIRE(checkCDGA(t.doc.alg).ok());
    MorphismReport rep = checkMorphism(t.map, src, t.doc);
    REQUIRE(rep.chainMap);
    REQUIRE(rep.multiplicative);
    REQUIRE(rep.unital);
    REQUIRE(rep.quasiIso);
    REQUIRE(rep.orientationCompatible.has_value());
    REQUIRE(*rep.orientationCompatible);

    // Rigidity: an accepted isomorphism between algebras with perfect
    // chain-level pairings preserves the pairing exactly and embeds.
    CyclicPairing<R> prSrc = pairingFromOrientation(src.alg, *src.orient);
    CyclicPairing<R> prDst = pairingFromOrientation(t.doc.alg, *t.doc.orient);
    REQUIRE(preservesPairing(t.map, prSrc, prDst));
    REQUIRE(injectiveDegreewise(t.map));
  }
}

TEST_CASE("algebra generation is deterministic per seed and serializes stably") {
  PDGAOptions opt;
  opt.tensorFactors = 1;
  opt.obstructions = 1;
  std::mt19937_64 a(11), b(11);
  GeneratedPDGA g1 = randomPDGA(a, 6, opt);
  GeneratedPDGA g2 = randomPDGA(b, 6, opt);
  REQUIRE(emitOriented(g1.doc) == emitOriented(g2.doc));
  std::mt19937_64 c(12);
  GeneratedPDGA g3 = randomPDGA(c, 6, opt);
  REQUIRE(emitOriented(g1.doc) != emitOriented(g3.doc));
}
