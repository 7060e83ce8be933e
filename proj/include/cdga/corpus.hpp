#pragma once

#include "cdga/builder.hpp"
#include "cdga/free_algebra.hpp"

namespace cdga::corpus {

/// Degree-7 algebra with zero differential: unit, a generator in degree 2,
/// one in degree 5, and their product on top. The square of the degree-2
/// class vanishes (degree 4 is empty).
inline OrientedAlgebra<Rational> v1() {
  AlgebraBuilder<Rational> b(FieldSpec::rationals(), "v1");
  b.basis(0, {"1"}).basis(2, {"a"}).basis(5, {"c"}).basis(7, {"ac"});
  b.product("a", "c", {{"ac", 1}});
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(7, {{"ac", 1}});
  return out;
}

/// Degree-7 algebra whose degree-2 class squares to an exact element: Dw = z
/// and k*k = z, with k*w = l, k*l = v, w*z = v closing the product.
inline OrientedAlgebra<Rational> v2() {
  AlgebraBuilder<Rational> b(FieldSpec::rationals(), "v2");
  b.basis(0, {"1"}).basis(2, {"k"}).basis(3, {"w"}).basis(4, {"z"}).basis(5, {"l"}).basis(7, {"v"});
  b.diff("w", {{"z", 1}});
  b.product("k", "k", {{"z", 1}});
  b.product("k", "w", {{"l", 1}});
  b.product("k", "l", {{"v", 1}});
  b.product("w", "z", {{"v", 1}});
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(7, {{"v", 1}});
  return out;
}

/// Free graded-commutative algebra on a(2), b(3), c(5) with Db = a^2,
/// truncated at degree 9, oriented by the a*c coefficient in degree 7.
inline OrientedAlgebra<Rational> lambdaAbc() {
  FreePresentation<Rational> p;
  p.generators = {{"a", 2}, {"b", 3}, {"c", 5}};
  p.differentials = {{}, {PolyTerm<Rational>{{2, 0, 0}, Rational(1)}}, {}};
  FreeAlgebraData<Rational> fa =
      buildTruncatedFree<Rational>(FieldSpec::rationals(), "lambda-abc", p, 9);
  OrientedAlgebra<Rational> out;
  out.alg = fa.alg;
  Orientation<Rational> o;
  o.degree = 7;
  o.row = zeroVec<Rational>(out.alg.space.dim(7));
  o.row[out.alg.space.find("a*c")->second] = Rational(1);
  out.orient = o;
  return out;
}

/// Degree-4 algebra with zero differential: seven degree-2 classes, each
/// squaring to the top class, with distinct classes multiplying to zero.
inline OrientedAlgebra<Rational> cp2Sum7() {
  AlgebraBuilder<Rational> b(FieldSpec::rationals(), "cp2-sum7");
  b.basis(0, {"1"}).basis(2, {"k0", "k1", "k2", "k3", "k4", "k5", "k6"}).basis(4, {"v"});
  for (int i = 0; i < 7; ++i) {
    std::string k = "k" + std::to_string(i);
    b.product(k, k, {{"v", 1}});
  }
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(4, {{"v", 1}});
  return out;
}

/// Exterior algebra on odd generators of degrees 3, 5, 7, 9, 11 with zero
/// differential; 32 monomials, oriented on the top word in degree 35.
inline OrientedAlgebra<Rational> exterior357911() {
  FreePresentation<Rational> p;
  p.generators = {{"e3", 3}, {"e5", 5}, {"e7", 7}, {"e9", 9}, {"e11", 11}};
  p.differentials = {{}, {}, {}, {}, {}};
  FreeAlgebraData<Rational> fa =
      buildTruncatedFree<Rational>(FieldSpec::rationals(), "exterior-3-5-7-9-11", p, std::nullopt);
  OrientedAlgebra<Rational> out;
  out.alg = fa.alg;
  Orientation<Rational> o;
  o.degree = 35;
  o.row = zeroVec<Rational>(out.alg.space.dim(35));
  o.row[out.alg.space.find("e3*e5*e7*e9*e11")->second] = Rational(1);
  out.orient = o;
  return out;
}

/// Free algebra on w(3), z(4) with Dw = z, truncated at degree 8. Acyclic in
/// the trusted range and carrying no orientation (its top degree is exact).
inline OrientedAlgebra<Rational> acyclicWz() {
  FreePresentation<Rational> p;
  p.generators = {{"w", 3}, {"z", 4}};
  p.differentials = {{PolyTerm<Rational>{{0, 1}, Rational(1)}}, {}};
  FreeAlgebraData<Rational> fa =
      buildTruncatedFree<Rational>(FieldSpec::rationals(), "acyclic-wz", p, 8);
  OrientedAlgebra<Rational> out;
  out.alg = fa.alg;
  return out;
}

/// Degree-2 oriented algebra on which no middle-degree twist can exist: two
/// degree-1 chains with Dc_i = u_i and c1*c2 = v carrying the orientation.
/// The pairing restricted to the degree-1 complement is the standard
/// antisymmetric form, which no change of complement can cancel.
inline OrientedAlgebra<Rational> obstructedN2() {
  AlgebraBuilder<Rational> b(FieldSpec::rationals(), "obstructed-n2");
  b.basis(0, {"1"}).basis(1, {"c1", "c2"}).basis(2, {"v", "u1", "u2"});
  b.diff("c1", {{"u1", 1}});
  b.diff("c2", {{"u2", 1}});
  b.product("c1", "c2", {{"v", 1}});
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(2, {{"v", 1}});
  return out;
}

/// Degree-7 duality algebra that no change of complement or twist can bring
/// to orthogonal form: the v2 core extended by an acyclic square of chains
/// c3, u4 = Dc3, c4p, u5p = Dc4p whose pairing c3 * c4p = v cannot be
/// cancelled (nothing exact pairs against c3). The smallest instance that
/// genuinely needs new generators adjoined.
inline OrientedAlgebra<Rational> extensionSeed7() {
  AlgebraBuilder<Rational> b(FieldSpec::rationals(), "extension-seed-7");
  b.basis(0, {"1"}).basis(2, {"k"}).basis(3, {"w", "c3"}).basis(4, {"z", "u4", "c4p"});
  b.basis(5, {"l", "u5p"}).basis(7, {"v"});
  b.diff("w", {{"z", 1}});
  b.diff("c3", {{"u4", 1}});
  b.diff("c4p", {{"u5p", 1}});
  b.product("k", "k", {{"z", 1}});
  b.product("k", "w", {{"l", 1}});
  b.product("k", "l", {{"v", 1}});
  b.product("w", "z", {{"v", 1}});
  b.product("c3", "c4p", {{"v", 1}});
  OrientedAlgebra<Rational> out;
  out.alg = b.build();
  out.orient = b.orientation(7, {{"v", 1}});
  return out;
}

/// Quasi-isomorphism lambda-abc -> v1 killing b and everything divisible by
/// it, fixing a, c, and their product.
inline GradedLinearMap<Rational> mapLambdaToV1() {
  GradedVectorSpace src = lambdaAbc().alg.space;
  GradedVectorSpace dst = v1().alg.space;
  return mapFromEntries<Rational>(src, dst,
                                  {{"1", "1", Rational(1)},
                                   {"a", "a", Rational(1)},
                                   {"c", "c", Rational(1)},
                                   {"a*c", "ac", Rational(1)}});
}

/// The same underlying map with the degree-5 generator doubled; still a
/// multiplicative quasi-isomorphism, but it scales the top class by 2.
inline GradedLinearMap<Rational> mapLambdaToV1Perturbed() {
  GradedVectorSpace src = lambdaAbc().alg.space;
  GradedVectorSpace dst = v1().alg.space;
  return mapFromEntries<Rational>(src, dst,
                                  {{"1", "1", Rational(1)},
                                   {"a", "a", Rational(1)},
                                   {"c", "c", Rational(2)},
                                   {"a*c", "ac", Rational(2)}});
}

/// Quasi-isomorphism lambda-abc -> v2 sending a to k, b to w, c to l, and
/// products to products (z, l, v as forced by multiplicativity).
inline GradedLinearMap<Rational> mapLambdaToV2() {
  GradedVectorSpace src = lambdaAbc().alg.space;
  GradedVectorSpace dst = v2().alg.space;
  return mapFromEntries<Rational>(src, dst,
                                  {{"1", "1", Rational(1)},
                                   {"a", "k", Rational(1)},
                                   {"b", "w", Rational(1)},
                                   {"c", "l", Rational(1)},
                                   {"a^2", "z", Rational(1)},
                                   {"a*b", "l", Rational(1)},
                                   {"a*c", "v", Rational(1)},
                                   {"a^2*b", "v", Rational(1)}});
}

/// The published examples, in listing order.
inline std::vector<OrientedAlgebra<Rational>> allExamples() {
  return {v1(), v2(), lambdaAbc(), cp2Sum7(), exterior357911(), acyclicWz()};
}

}  // namespace cdga::corpus
