#include <gtest/gtest.h>

#include <random>

#include "discvar/idealops.hpp"
#include "discvar/parser.hpp"
#include "support.hpp"

using namespace discvar;
using discvar::test::random_homogeneous_ideal;
using discvar::test::random_polynomial;

namespace {

Polynomial P(const std::string& s, const VariableContext& c) { return parse_polynomial(s, c); }

Ideal ideal(const VariableContext& c, std::initializer_list<const char*> gens) {
  Ideal I(c);
  for (auto g : gens) I.add(P(g, c));
  return I;
}

VarietyUnion unite(const VariableContext& c, std::initializer_list<std::initializer_list<const char*>> comps) {
  VarietyUnion u(c);
  for (auto gens : comps) u.add(Source::user, ideal(c, gens));
  return u;
}

VarietyUnion single(const Ideal& I) {
  VarietyUnion u(I.context());
  u.add(Source::user, I);
  return u;
}

}  // namespace

TEST(Homogenize, Examples) {
  VariableContext c({"t"}, {"x", "y"});
  VariableContext e = c.with_auxiliary("X0");
  EXPECT_EQ(homogenize(P("x^2 + y + 1", e), "X0", {"x", "y"}), P("x^2 + y*X0 + X0^2", e));
  // parameters are not homogenized
  EXPECT_EQ(homogenize(P("t^3*x + 1", e), "X0", {"x", "y"}), P("t^3*x + X0", e));
  EXPECT_THROW(homogenize(P("x", e), "x", {"x", "y"}), Error);
  EXPECT_THROW(homogenize(P("x", e), "W", {"x"}), UnknownVariable);
}

TEST(Homogenize, DehomogenizeRoundTrip) {
  VariableContext c({"t"}, {"x", "y"});
  VariableContext e = c.with_auxiliary("X0");
  const std::vector<std::size_t> wrt{e.index_of("x"), e.index_of("y")};
  const std::size_t h = e.index_of("X0");
  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    Polynomial p = random_polynomial(rng, c, 4, 5, k % 2 == 1).embed(e);
    Polynomial ph = homogenize(p, h, wrt);
    if (!ph.is_zero()) {
      const auto d = p.degree_in(wrt).value();
      for (const auto& [m, coef] : ph.terms()) ASSERT_EQ(m[wrt[0]] + m[wrt[1]] + m[h], d);
    }
    ASSERT_EQ(ph.substitute(h, Rational(1)), p);
  }
}

TEST(Specialize, Examples) {
  VariableContext c({"t"}, {"X0"});
  Ideal a = specialize(ideal(c, {"t*X0 - 1"}), "X0", Rational(0));
  EXPECT_TRUE(a.has_unit());
  EXPECT_EQ(a.context().names(), std::vector<std::string>{"t"});
  EXPECT_TRUE(specialize(ideal(c, {"X0"}), "X0", Rational(0)).is_zero());
  VariableContext d({"t"}, {"x"});
  EXPECT_EQ(specialize(ideal(d, {"x - t"}), "t", Rational(2)).to_string(), "<x - 2>");
  EXPECT_THROW(specialize(ideal(d, {"x"}), "q", Rational(0)), UnknownVariable);
}

TEST(Saturate, Examples) {
  VariableContext c(std::vector<std::string>{"x", "y"});
  EXPECT_EQ(saturate(ideal(c, {"x*y"}), P("x", c)).to_string(), "<y>");
  EXPECT_TRUE(saturate(ideal(c, {"x^2"}), P("x", c)).has_unit());
  VariableContext d({"t"}, {"x"});
  Ideal s = saturate(ideal(d, {"x^2 - t*x"}), P("x", d));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s.generators()[0].normalized(), P("x - t", d).normalized());
  EXPECT_THROW(rabinowitsch_extend(ideal(d, {"x"}), Polynomial(d), "Z"), ZeroPolynomial);
  EXPECT_THROW(rabinowitsch_extend(ideal(d, {"x"}), P("x", d), "t"), VariableCollision);
}

TEST(Saturate, SoundnessOnRandomIdeals) {
  // every generator q of I : p^oo satisfies p^k q in I for some small k
  VariableContext c(std::vector<std::string>{"x", "y", "t"});
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    Polynomial p = random_polynomial(rng, c, 1, 2);
    if (p.is_constant()) continue;
    Ideal I(c);
    I.add(p * random_polynomial(rng, c, 1, 2));
    I.add(random_polynomial(rng, c, 2, 3));
    Ideal S = saturate(I, p);
    Ideal G = buchberger(I, MonomialOrder::grevlex(3));
    unsigned long maxdeg = 0;
    for (const auto& g : I.generators()) maxdeg = std::max(maxdeg, g.total_degree().value());
    for (const auto& q : S.generators()) {
      bool found = false;
      Polynomial acc = q;
      for (unsigned long e = 0; e <= 2 * maxdeg && !found; ++e, acc *= p) found = normal_form(acc, G).is_zero();
      ASSERT_TRUE(found) << q.to_string() << " in " << I.to_string() << " : " << p.to_string();
    }
    // and I is contained in its saturation
    Ideal SG = buchberger(S, MonomialOrder::grevlex(3));
    for (const auto& f : I.generators()) ASSERT_TRUE(normal_form(f, SG).is_zero());
  }
}

TEST(RadicalMember, Examples) {
  VariableContext c(std::vector<std::string>{"x", "y"});
  EXPECT_TRUE(radical_member(P("x", c), ideal(c, {"x^2"})));
  EXPECT_FALSE(radical_member(P("x", c), ideal(c, {"y"})));
  EXPECT_TRUE(radical_member(P("x + 1", c), ideal(c, {"x^2 + 2*x + 1"})));
  EXPECT_TRUE(radical_member(P("x + y", c), ideal(c, {"x^2", "y^3"})));
  // the variety is the single point (0, 1)
  EXPECT_TRUE(radical_member(P("x", c), ideal(c, {"x^2", "x*y - 1 + y"})));
  EXPECT_FALSE(radical_member(P("x + 1", c), ideal(c, {"x^2", "x*y - 1 + y"})));
  EXPECT_TRUE(radical_member(P("5", c), ideal(c, {"1"})));
  EXPECT_FALSE(radical_member(P("5", c), ideal(c, {"x"})));
  EXPECT_FALSE(radical_member(P("x", c), Ideal(c)));
  EXPECT_TRUE(radical_member(Polynomial(c), Ideal(c)));
}

TEST(RadicalMember, PrincipalShortcutAgreesWithRabinowitsch) {
  VariableContext c(std::vector<std::string>{"x", "y"});
  std::mt19937_64 rng(3);
  for (int k = 0; k < 40; ++k) {
    Polynomial a = random_polynomial(rng, c, 2, 3), b = random_polynomial(rng, c, 2, 3);
    if (a.is_constant() || b.is_constant()) continue;
    Polynomial f = a * a * b;
    Polynomial p = rng() % 2 ? a * b : a;
    // a two-generator ideal with the same radical avoids the shortcut
    Ideal principal(c, {f}), doubled(c, {f, f * P("x + 7", c)});
    ASSERT_EQ(radical_member(p, principal), radical_member(p, doubled)) << f.to_string() << " / " << p.to_string();
  }
}

TEST(VarietyEqual, Examples) {
  VariableContext t({"t"}, {});
  EXPECT_EQ(variety_equal(unite(t, {{"t"}}), unite(t, {{"t^2"}})).verdict, Verdict::equal);
  auto cmp = variety_equal(unite(t, {{"t"}}), unite(t, {{"t"}, {"t - 1"}}));
  EXPECT_EQ(cmp.verdict, Verdict::a_strict_subset);
  ASSERT_EQ(cmp.witnesses.size(), 1u);
  EXPECT_EQ(cmp.witnesses[0].side, 'B');
  EXPECT_EQ(cmp.witnesses[0].component.ideal.to_string(), "<t - 1>");
  EXPECT_EQ(cmp.witnesses[0].generator.to_string(), "t");
  VariableContext xy({"x", "y"}, {});
  EXPECT_EQ(variety_equal(unite(xy, {{"x - y"}}), unite(xy, {{"x + y"}})).verdict, Verdict::incomparable);
  EXPECT_EQ(variety_equal(unite(xy, {{"x", "y"}}), unite(xy, {{"x*y"}})).verdict, Verdict::a_strict_subset);
  // empty union and whole space
  EXPECT_EQ(variety_equal(VarietyUnion(xy), unite(xy, {{"1"}})).verdict, Verdict::equal);
  VarietyUnion whole(xy);
  whole.add(Source::user, Ideal(xy));
  EXPECT_TRUE(whole.is_whole_space());
  EXPECT_EQ(variety_equal(unite(xy, {{"x"}}), whole).verdict, Verdict::a_strict_subset);
  VariableContext other({"s"}, {});
  EXPECT_THROW(variety_equal(unite(t, {{"t"}}), unite(other, {{"s"}})), AmbientMismatch);
}

TEST(VarietyEqual, WitnessIsTheUncoveredFactor) {
  VariableContext c({"x"}, {});
  auto cmp = variety_equal(unite(c, {{"x^3 + 2*x"}}), unite(c, {{"x"}}));
  EXPECT_EQ(cmp.verdict, Verdict::b_strict_subset);
  ASSERT_EQ(cmp.witnesses.size(), 1u);
  EXPECT_EQ(cmp.witnesses[0].component.ideal.to_string(), "<x^2 + 2>");
}

TEST(VarietyEqual, PartialOrderOnRandomUnions) {
  // distinct irreducible curves: containment of unions is containment of index sets
  VariableContext c({"s", "t"}, {});
  const std::vector<std::string> pool{"t", "s", "t - s", "t + 1", "s^2 - t", "s*t - 1"};
  std::mt19937_64 rng(8);
  auto draw = [&] {
    unsigned mask = 0;
    while (mask == 0) mask = static_cast<unsigned>(rng() % 64);
    return mask;
  };
  auto build = [&](unsigned mask) {
    VarietyUnion u(c);
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (mask & (1u << i)) u.add(Source::user, Ideal(c, {P(pool[i], c)}));
    return u;
  };
  auto expected = [](unsigned a, unsigned b) {
    const bool ab = (a & ~b) == 0, ba = (b & ~a) == 0;
    return ab && ba ? Verdict::equal : ab ? Verdict::a_strict_subset : ba ? Verdict::b_strict_subset : Verdict::incomparable;
  };
  auto within = [](Verdict v) { return v == Verdict::equal || v == Verdict::a_strict_subset; };
  for (int k = 0; k < 30; ++k) {
    unsigned a = draw(), b = draw(), d = draw();
    auto A = build(a), B = build(b), D = build(d);
    ASSERT_EQ(variety_equal(A, A).verdict, Verdict::equal);
    const Verdict ab = variety_equal(A, B).verdict, bd = variety_equal(B, D).verdict;
    ASSERT_EQ(ab, expected(a, b));
    ASSERT_EQ(variety_equal(B, A).verdict, expected(b, a));
    if (within(ab) && within(bd)) ASSERT_TRUE(within(variety_equal(A, D).verdict));
    // a union with its own components repeated and squared is unchanged
    VarietyUnion A2 = build(a);
    for (std::size_t i = 0; i < pool.size(); ++i)
      if (a & (1u << i)) A2.add(Source::user, Ideal(c, {P("(" + pool[i] + ")^2", c)}));
    ASSERT_EQ(variety_equal(A, A2).verdict, Verdict::equal);
  }
}

TEST(SaturationIdentity, SaturationAgreesWithDehomogenization) {
  // (J : X_i^oo) meets Q[t] in an ideal with the same variety as J|_{X_i = 1} does
  VariableContext c({"t"}, {"X0", "X1"});
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 50; ++k) {
    Ideal J = random_homogeneous_ideal(rng, c);
    const std::string xi = k % 2 ? "X0" : "X1";
    Ideal left = eliminate(EliminationTask{saturate(J, Polynomial::variable(c, xi)), {"t"}});
    Ideal right = eliminate(EliminationTask{specialize(J, xi, Rational(1)), {"t"}});
    ASSERT_EQ(variety_equal(single(left), single(right)).verdict, Verdict::equal)
        << J.to_string() << " with " << xi << ": " << left.to_string() << " vs " << right.to_string();
  }
}

TEST(HyperplaneSplit, VarietyIsUnionOfHyperplaneAndSaturation) {
  // V(J) = V(J + <X0>) u V(J : X0^oo)
  VariableContext c({"t"}, {"X0", "X1"});
  std::mt19937_64 rng(77);
  const Polynomial x0 = Polynomial::variable(c, "X0");
  for (int k = 0; k < 50; ++k) {
    Ideal J = random_homogeneous_ideal(rng, c);
    Ideal plus = J;
    plus.add(x0);
    VarietyUnion u(c);
    u.add(Source::user, plus);
    u.add(Source::user, saturate(J, x0));
    ASSERT_EQ(variety_equal(single(J), u).verdict, Verdict::equal) << J.to_string();
  }
}

TEST(Jacobian, Examples) {
  auto s1 = ParametricSystem::parse({"t"}, {"x"}, {"x^2 - t"});
  EXPECT_EQ(jacobian_determinant(s1).to_string(), "2*x");
  auto lin = ParametricSystem::parse({"t"}, {"x", "y"}, {"2*x + 3*y - t", "x - y"});
  EXPECT_EQ(jacobian_determinant(lin).to_string(), "-5");
  auto enn = ParametricSystem::parse({"x", "y"}, {"z", "u", "v"},
                                     {"x - (3*u + 3*u*v^2 - u^3)", "y - (3*v + 3*u^2*v - v^3)", "z - (3*u^2 - 3*v^2)"});
  Polynomial j = jacobian_determinant(enn);
  EXPECT_LE(j.total_degree().value(), 5u);
  EXPECT_EQ(j.support(), (std::vector<std::size_t>{enn.context().index_of("u"), enn.context().index_of("v")}));
  auto dup = ParametricSystem::parse({"t"}, {"x1", "x2"}, {"x1 - t", "x1 - t"});
  EXPECT_TRUE(jacobian_determinant(dup).is_zero());
}

TEST(InequationProduct, Examples) {
  auto none = ParametricSystem::parse({"t"}, {"x"}, {"x - t"});
  EXPECT_EQ(inequation_product(none).to_string(), "1");
  EXPECT_EQ(inequation_degree(none), 0u);
  auto two = ParametricSystem::parse({"t"}, {"u", "v"}, {"u - t", "v - t"}, {"u", "v"});
  EXPECT_EQ(inequation_product(two).to_string(), "u*v");
  auto one = ParametricSystem::parse({"t"}, {"x"}, {"x^2 - t"}, {"t*x - 1"});
  EXPECT_EQ(inequation_product(one).to_string(), "t*x - 1");
  EXPECT_EQ(inequation_degree(one), 2u);
}
