#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "cdga/corpus.hpp"
#include "cdga/generator.hpp"
#include "cdga/homology.hpp"
#include "cdga/model.hpp"
#include "cdga/morphism.hpp"
#include "support/testutil.hpp"

using namespace cdga;
using testutil::complexWithPairing;
using R = Rational;

namespace {

std::vector<int> dimsThrough(const GradedVectorSpace& sp, int top) {
  std::vector<int> out;
  for (int d = 0; d <= top; ++d) out.push_back(sp.dim(d));
  return out;
}

void requireNothingAbove(const GradedVectorSpace& sp, int top) {
  for (int d = top + 1; d <= sp.maxDegree(); ++d) REQUIRE(sp.dim(d) == 0);
}

void requireFullMorphism(const GradedLinearMap<R>& f, const OrientedAlgebra<R>& src,
                         const OrientedAlgebra<R>& dst) {
  MorphismReport rep = checkMorphism(f, src, dst);
  CHECK(rep.chainMap);
  CHECK(rep.multiplicative);
  CHECK(rep.unital);
  CHECK(rep.quasiIso);
  REQUIRE(rep.orientationCompatible.has_value());
  CHECK(*rep.orientationCompatible);
  REQUIRE(rep.ok());
}

void requireGramEqual(const OrientedAlgebra<R>& x, const OrientedAlgebra<R>& y) {
  auto [cx, px] = complexWithPairing(x);
  auto [cy, py] = complexWithPairing(y);
  REQUIRE(px.degree == py.degree);
  for (int d = 0; d <= px.degree; ++d) {
    REQUIRE(px.gram[d].rows() == py.gram[d].rows());
    REQUIRE(px.gram[d].cols() == py.gram[d].cols());
    REQUIRE(px.gram[d] == py.gram[d]);
  }
}

}  // namespace

TEST_CASE("the free truncated source collapses to the four-dimensional model") {
  OrientedAlgebra<R> lam = corpus::lambdaAbc();
  ModelResult<R> res = buildPDModel(lam, ModelRoute::Auto);

  REQUIRE(res.routeTaken == ModelRoute::Small);
  REQUIRE(res.modelBounded);
  REQUIRE(res.ok());
  REQUIRE(dimsThrough(res.model.alg.space, 7) == std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1});
  requireNothingAbove(res.model.alg.space, 7);

  REQUIRE(res.modelClass.isDPD);
  std::vector<int> hdims(res.modelClass.homologyDims.begin(),
                         res.modelClass.homologyDims.begin() + 8);
  REQUIRE(hdims == std::vector<int>{1, 0, 1, 0, 0, 1, 0, 1});

  // the induced pairing is the one the four-dimensional reference carries
  requireGramEqual(res.model, corpus::v1());

  // zig-zag legs: the stage embeds into the input and projects onto the model
  requireFullMorphism(res.stageMap, res.stage, lam);
  requireFullMorphism(res.projection, res.stage, res.model);
  REQUIRE(res.pairsAdjoined == 0);
  REQUIRE_FALSE(res.middleTwistApplied);
}

TEST_CASE("a nondegenerate input passes through as its own model") {
  OrientedAlgebra<R> base = corpus::v2();
  ModelResult<R> res = buildPDModel(base, ModelRoute::Auto);

  REQUIRE(res.routeTaken == ModelRoute::Small);
  REQUIRE(res.ok());
  REQUIRE(dimsThrough(res.model.alg.space, 7) == dimsThrough(base.alg.space, 7));
  requireNothingAbove(res.model.alg.space, 7);
  REQUIRE(dimsThrough(res.stage.alg.space, 7) == dimsThrough(base.alg.space, 7));
  requireGramEqual(res.model, base);
  requireFullMorphism(res.stageMap, res.stage, base);
  requireFullMorphism(res.projection, res.stage, res.model);
}

TEST_CASE("a differential-free duality ring is its own model") {
  OrientedAlgebra<R> ring = corpus::cp2Sum7();
  ModelResult<R> res = buildPDModel(ring, ModelRoute::Auto);

  REQUIRE(res.routeTaken == ModelRoute::Small);
  REQUIRE(res.ok());
  REQUIRE(dimsThrough(res.model.alg.space, 4) == std::vector<int>{1, 0, 7, 0, 1});
  requireNothingAbove(res.model.alg.space, 4);
  requireGramEqual(res.model, ring);
  requireFullMorphism(res.stageMap, res.stage, ring);
  requireFullMorphism(res.projection, res.stage, res.model);
}

TEST_CASE("the extension route collapses the enlarged algebra onto a bounded model") {
  OrientedAlgebra<R> seed = corpus::extensionSeed7();
  ModelResult<R> res = buildPDModel(seed, ModelRoute::Auto);

  REQUIRE(res.routeTaken == ModelRoute::Extend);
  REQUIRE(res.pairsAdjoined == 1);
  REQUIRE_FALSE(res.middleTwistApplied);
  REQUIRE(res.ok());
  REQUIRE(dimsThrough(res.stage.alg.space, 9) ==
          std::vector<int>{1, 0, 1, 3, 4, 3, 3, 7, 6, 3});
  requireNothingAbove(res.model.alg.space, 7);

  // the model pairs its degrees perfectly, so dimensions mirror around the middle
  for (int d = 0; d <= 7; ++d)
    REQUIRE(res.model.alg.space.dim(d) == res.model.alg.space.dim(7 - d));

  // quasi-isomorphisms compose: the model has the homology of the input
  Classification inputCls = classify(seed.alg, *seed.orient);
  std::vector<int> want(inputCls.homologyDims.begin(), inputCls.homologyDims.begin() + 8);
  std::vector<int> got(res.modelClass.homologyDims.begin(),
                       res.modelClass.homologyDims.begin() + 8);
  REQUIRE(got == want);

  requireFullMorphism(res.stageMap, seed, res.stage);
  requireFullMorphism(res.projection, res.stage, res.model);
}

TEST_CASE("forcing the extension route on a nondegenerate input leaves it unchanged") {
  OrientedAlgebra<R> base = corpus::v2();
  ModelResult<R> res = buildPDModel(base, ModelRoute::Extend);

  REQUIRE(res.routeTaken == ModelRoute::Extend);
  REQUIRE(res.pairsAdjoined == 0);
  REQUIRE(res.ok());
  REQUIRE(dimsThrough(res.model.alg.space, 7) == dimsThrough(base.alg.space, 7));
  requireGramEqual(res.model, base);
}

TEST_CASE("the small route refuses honestly when no self-orthogonal complement exists") {
  OrientedAlgebra<R> seed = corpus::extensionSeed7();
  bool thrown = false;
  try {
    buildPDModel(seed, ModelRoute::Small);
  } catch (const MiddleObstructionError<R>& err) {
    thrown = true;
    REQUIRE(err.certificate.degreeA + err.certificate.degreeB == 7);
    auto [cx, pr] = complexWithPairing(seed);
    const Vec<R>& a = err.certificate.witnessA;
    const Vec<R>& b = err.certificate.witnessB;
    REQUIRE(static_cast<int>(a.size()) == seed.alg.space.dim(err.certificate.degreeA));
    REQUIRE(static_cast<int>(b.size()) == seed.alg.space.dim(err.certificate.degreeB));
    R val(0);
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
      for (int j = 0; j < static_cast<int>(b.size()); ++j)
        val += a[i] * pr.gram[err.certificate.degreeA].at(i, j) * b[j];
    REQUIRE(val != R(0));
  }
  REQUIRE(thrown);
}

TEST_CASE("the degree-two self-pairing instance surfaces the right refusals") {
  OrientedAlgebra<R> bad = corpus::obstructedN2();

  // forced small route: the twist search itself certifies infeasibility
  bool thrown = false;
  try {
    buildPDModel(bad, ModelRoute::Small);
  } catch (const MiddleObstructionError<R>& err) {
    thrown = true;
    REQUIRE(err.certificate.degreeA + err.certificate.degreeB == 2);
  }
  REQUIRE(thrown);

  // the automatic route falls through to the extension, which rejects the
  // degree-one chains by name
  REQUIRE_THROWS_WITH(buildPDModel(bad, ModelRoute::Auto),
                      Catch::Matchers::ContainsSubstring("simply"));
}

TEST_CASE("the model pipeline validates its inputs") {
  SECTION("missing orientation") {
    OrientedAlgebra<R> doc = corpus::v2();
    doc.orient.reset();
    REQUIRE_THROWS_AS(buildPDModel(doc, ModelRoute::Auto), std::invalid_argument);
  }
  SECTION("the two-argument form routes identically") {
    OrientedAlgebra<R> doc = corpus::v1();
    ModelResult<R> res = buildPDModel(doc.alg, *doc.orient, ModelRoute::Auto);
    REQUIRE(res.routeTaken == ModelRoute::Small);
    REQUIRE(res.ok());
    REQUIRE(dimsThrough(res.model.alg.space, 7) == dimsThrough(doc.alg.space, 7));
  }
}

TEST_CASE("no common duality refinement exists for the standard pair") {
  OrientedAlgebra<R> a = corpus::v1();
  OrientedAlgebra<R> b = corpus::v2();

  SECTION("the obstruction pattern rules out every one-line probe") {
    for (const OrientedAlgebra<R>& probe : {corpus::v2(), corpus::v1()}) {
      EmbeddingReport<R> rep = verifyNoCommonEmbedding(a, b, probe);
      REQUIRE(rep.zeroSquareWitness);
      REQUIRE(rep.nonzeroSquareWitness);
      REQUIRE(rep.probeNothingInDegreeOne);
      REQUIRE(rep.probeClosedLineInDegreeTwo);
      REQUIRE_FALSE(rep.satisfiable);
      REQUIRE_FALSE(rep.constraints.empty());
      REQUIRE_FALSE(rep.witnessZero.empty());
      REQUIRE_FALSE(rep.witnessNonzero.empty());
    }
  }
  SECTION("an algebra always coexists with itself") {
    EmbeddingReport<R> same1 = verifyNoCommonEmbedding(a, a, a);
    REQUIRE_FALSE(same1.nonzeroSquareWitness);
    REQUIRE(same1.satisfiable);

    EmbeddingReport<R> same2 = verifyNoCommonEmbedding(b, b, b);
    REQUIRE_FALSE(same2.zeroSquareWitness);
    REQUIRE(same2.satisfiable);
  }
  SECTION("a probe with a wide closed degree-two part is not obstructed this way") {
    EmbeddingReport<R> rep = verifyNoCommonEmbedding(a, b, corpus::cp2Sum7());
    REQUIRE(rep.zeroSquareWitness);
    REQUIRE(rep.nonzeroSquareWitness);
    REQUIRE_FALSE(rep.probeClosedLineInDegreeTwo);
    REQUIRE(rep.satisfiable);
  }
}

TEST_CASE("generated instances produce verified models end to end") {
  for (int seed = 0; seed < 12; ++seed) {
    CAPTURE(seed);
    std::mt19937_64 rng(17000 + seed);
    int degree = 5 + seed % 3;
    PDGAOptions opt;
    opt.tensorFactors = seed % 2;
    opt.obstructions = 1 + seed % 2;
    opt.middleObstruction = false;
    opt.transport = true;
    GeneratedPDGA g = randomPDGA(rng, degree, opt);

    ModelResult<R> res = buildPDModel(g.doc, ModelRoute::Auto);
    REQUIRE(res.routeTaken == ModelRoute::Extend);
    REQUIRE(res.ok());
    REQUIRE(res.modelBounded);
    requireNothingAbove(res.model.alg.space, degree);
    for (int d = 0; d <= degree; ++d)
      REQUIRE(res.model.alg.space.dim(d) == res.model.alg.space.dim(degree - d));
    REQUIRE(res.modelClass.isDPD);
    requireFullMorphism(res.stageMap, g.doc, res.stage);
    requireFullMorphism(res.projection, res.stage, res.model);
  }
}
