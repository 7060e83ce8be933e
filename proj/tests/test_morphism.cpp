#include <catch2/catch_amalgamated.hpp>

#include "cdga/corpus.hpp"
#include "cdga/morphism.hpp"

using namespace cdga;
using R = Rational;

TEST_CASE("identity maps pass every verdict") {
  for (const auto& doc : {corpus::v1(), corpus::v2(), corpus::cp2Sum7()}) {
    INFO(doc.alg.name);
    GradedLinearMap<R> id = GradedLinearMap<R>::identityOn(doc.alg.space);
    MorphismReport rep = checkMorphism(id, doc, doc);
    CHECK(rep.chainMap);
    CHECK(rep.multiplicative);
    CHECK(rep.unital);
    CHECK(rep.quasiIso);
    REQUIRE(rep.orientationCompatible.has_value());
    CHECK(*rep.orientationCompatible);
    CHECK(rep.ok());
  }
}

TEST_CASE("the reference map onto the zero-square model is accepted") {
  auto lam = corpus::lambdaAbc();
  auto v1 = corpus::v1();
  MorphismReport rep = checkMorphism(corpus::mapLambdaToV1(), lam, v1);
  CHECK(rep.chainMap);
  CHECK(rep.multiplicative);
  CHECK(rep.unital);
  CHECK(rep.quasiIso);
  // The untruncated target vouches for every degree it could store; only the
  // source truncation caps the comparison.
  CHECK(rep.comparedThrough == 8);
  REQUIRE(rep.orientationCompatible.has_value());
  CHECK(*rep.orientationCompatible);
  CHECK(rep.ok());
}

TEST_CASE("the reference map onto the exact-square model is accepted") {
  auto lam = corpus::lambdaAbc();
  auto v2 = corpus::v2();
  MorphismReport rep = checkMorphism(corpus::mapLambdaToV2(), lam, v2);
  CHECK(rep.chainMap);
  CHECK(rep.multiplicative);
  CHECK(rep.unital);
  CHECK(rep.quasiIso);
  REQUIRE(rep.orientationCompatible.has_value());
  CHECK(*rep.orientationCompatible);
  CHECK(rep.ok());
}

TEST_CASE("doubling the degree-5 generator breaks only orientation compatibility") {
  auto lam = corpus::lambdaAbc();
  auto v1 = corpus::v1();
  MorphismReport rep = checkMorphism(corpus::mapLambdaToV1Perturbed(), lam, v1);
  CHECK(rep.chainMap);
  CHECK(rep.multiplicative);
  CHECK(rep.unital);
  CHECK(rep.quasiIso);
  REQUIRE(rep.orientationCompatible.has_value());
  CHECK_FALSE(*rep.orientationCompatible);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("the zero map fails at the unit and on homology") {
  auto lam = corpus::lambdaAbc();
  auto v2 = corpus::v2();
  GradedLinearMap<R> zero = GradedLinearMap<R>::zero(lam.alg.space, v2.alg.space, 0);
  MorphismReport rep = checkMorphism(zero, lam, v2);
  CHECK(rep.chainMap);
  CHECK(rep.multiplicative);
  CHECK_FALSE(rep.unital);
  CHECK_FALSE(rep.quasiIso);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("scaling only the top class breaks multiplicativity") {
  auto v1 = corpus::v1();
  GradedLinearMap<R> f = mapFromEntries<R>(v1.alg.space, v1.alg.space,
                                           {{"1", "1", R(1)},
                                            {"a", "a", R(1)},
                                            {"c", "c", R(1)},
                                            {"ac", "ac", R(2)}});
  MorphismReport rep = checkMorphism(f, v1, v1);
  CHECK(rep.chainMap);
  CHECK_FALSE(rep.multiplicative);
  CHECK(rep.unital);
  CHECK(rep.quasiIso);
}

TEST_CASE("a map that misses a differential is not a chain map") {
  auto lam = corpus::lambdaAbc();
  auto v2 = corpus::v2();
  // Forgetting a^2 -> z: D(b) = a^2 must chase to D(w) = z.
  GradedLinearMap<R> f = mapFromEntries<R>(lam.alg.space, v2.alg.space,
                                           {{"1", "1", R(1)},
                                            {"a", "k", R(1)},
                                            {"b", "w", R(1)},
                                            {"c", "l", R(1)},
                                            {"a*b", "l", R(1)},
                                            {"a*c", "v", R(1)},
                                            {"a^2*b", "v", R(1)}});
  MorphismReport rep = checkMorphism(f, lam, v2);
  CHECK_FALSE(rep.chainMap);
}

TEST_CASE("accepted maps between chain-level duality algebras preserve the pairing") {
  auto v1 = corpus::v1();
  CyclicPairing<R> pr = pairingFromOrientation(v1.alg, *v1.orient);

  // An orientation-compatible multiplicative automorphism: rescale the two
  // generators inversely.
  GradedLinearMap<R> g = mapFromEntries<R>(v1.alg.space, v1.alg.space,
                                           {{"1", "1", R(1)},
                                            {"a", "a", R(2)},
                                            {"c", "c", R(1) / R(2)},
                                            {"ac", "ac", R(1)}});
  MorphismReport rep = checkMorphism(g, v1, v1);
  CHECK(rep.ok());
  CHECK(preservesPairing(g, pr, pr));
  CHECK(injectiveDegreewise(g));

  // Scaling one side without compensating is caught by the orientation and
  // indeed moves the pairing.
  GradedLinearMap<R> bad = mapFromEntries<R>(v1.alg.space, v1.alg.space,
                                             {{"1", "1", R(1)},
                                              {"a", "a", R(2)},
                                              {"c", "c", R(1)},
                                              {"ac", "ac", R(2)}});
  MorphismReport badRep = checkMorphism(bad, v1, v1);
  CHECK_FALSE(badRep.ok());
  CHECK_FALSE(preservesPairing(bad, pr, pr));
}

TEST_CASE("shape mismatches are rejected outright") {
  auto v1 = corpus::v1();
  auto v2 = corpus::v2();
  GradedLinearMap<R> wrong = GradedLinearMap<R>::identityOn(v1.alg.space);
  CHECK_THROWS_AS(checkMorphism(wrong, v1, v2), std::invalid_argument);
}
