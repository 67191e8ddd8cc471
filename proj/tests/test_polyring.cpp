#include <gtest/gtest.h>

#include <random>

#include "discvar/gcd.hpp"
#include "discvar/order.hpp"
#include "discvar/parser.hpp"
#include "discvar/polynomial.hpp"
#include "support.hpp"

using namespace discvar;
using discvar::test::random_polynomial;

namespace {

VariableContext xyz() { return VariableContext(std::vector<std::string>{"x", "y", "z"}); }

Polynomial P(const std::string& s, const VariableContext& c) { return parse_polynomial(s, c); }

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational a(6, -4);
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(Rational(0, 5).denominator(), 1);
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_THROW(Rational(1, 0), Error);
  EXPECT_EQ((Rational(1, 3) + Rational(1, 6)).to_string(), "1/2");
}

TEST(Context, NamesAndRoles) {
  VariableContext c({"t"}, {"x", "y"});
  EXPECT_EQ(c.size(), 3u);
  EXPECT_EQ(c.role(0), Role::parameter);
  EXPECT_EQ(c.role(2), Role::unknown);
  EXPECT_EQ(c.index_of("y"), 2u);
  EXPECT_THROW(c.index_of("w"), UnknownVariable);
  EXPECT_THROW(VariableContext({"x"}, {"x"}), VariableCollision);
  EXPECT_EQ(c.fresh_name("Z"), "Z");
  VariableContext d({"Z"}, {"x"});
  EXPECT_EQ(d.fresh_name("Z"), "Z_1");
  EXPECT_THROW(d.with_auxiliary("x"), VariableCollision);
  EXPECT_EQ(d.with_auxiliary("W").role(2), Role::auxiliary);
}

TEST(Parser, ThreeTermExample) {
  auto c = xyz();
  Polynomial p = P("x^2*y - 3/2*z + 1", c);
  ASSERT_EQ(p.terms().size(), 3u);
  EXPECT_EQ(p.coefficient(Monomial({2, 1, 0})), Rational(1));
  EXPECT_EQ(p.coefficient(Monomial({0, 0, 1})), Rational(-3, 2));
  EXPECT_EQ(p.coefficient(Monomial({0, 0, 0})), Rational(1));
}

TEST(Parser, EnneperCoordinate) {
  VariableContext c({}, {"u", "v"});
  Polynomial p = P("3*u + 3*u*v^2 - u^3", c);
  EXPECT_EQ(p.terms().size(), 3u);
  EXPECT_EQ(p.total_degree().value(), 3u);
  EXPECT_EQ(p.coefficient(Monomial({1, 2})), Rational(3));
  EXPECT_EQ(p.coefficient(Monomial({3, 0})), Rational(-1));
}

TEST(Parser, Errors) {
  auto c = xyz();
  try {
    P("x^^2", c);
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
  EXPECT_THROW(P("x^-2", c), NegativeExponent);
  EXPECT_THROW(P("w + 1", c), UnknownVariable);
  EXPECT_THROW(P("2x", c), SyntaxError);  // no implicit multiplication
  EXPECT_THROW(P("x y", c), SyntaxError);
  EXPECT_THROW(P("(x + 1", c), SyntaxError);
  EXPECT_THROW(P("1/0", c), SyntaxError);
  EXPECT_THROW(P("", c), SyntaxError);
  EXPECT_THROW(P("x +", c), SyntaxError);
}

TEST(Parser, PrecedenceAndParentheses) {
  auto c = xyz();
  EXPECT_EQ(P("-x^2", c), -P("x^2", c));
  EXPECT_EQ(P("(x + y)^2", c), P("x^2 + 2*x*y + y^2", c));
  EXPECT_EQ(P("x - (y - z)", c), P("x - y + z", c));
  EXPECT_EQ(P("2^3*x", c), P("8*x", c));
  EXPECT_EQ(P("0 - (x)", c), -P("x", c));
}

TEST(Arithmetic, Examples) {
  auto c = xyz();
  EXPECT_EQ(P("x + 1", c) * P("x - 1", c), P("x^2 - 1", c));
  Polynomial p = P("x^3 - 2*y*z", c);
  EXPECT_EQ(p + Polynomial(c), p);
  EXPECT_EQ(P("1/2*x", c) * P("2*x", c), P("x^2", c));
  VariableContext other({"x", "y"});
  EXPECT_THROW(p + P("x", other), ContextMismatch);
  EXPECT_THROW(p * P("x", other), ContextMismatch);
}

TEST(Arithmetic, RingLaws) {
  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 1000; ++k) {
    const std::size_t nv = 1 + rng() % 6;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nv; ++i) names.push_back("v" + std::to_string(i));
    VariableContext c(names);
    Polynomial a = random_polynomial(rng, c, 1 + rng() % 6, 4);
    Polynomial b = random_polynomial(rng, c, 1 + rng() % 6, 4);
    Polynomial d = random_polynomial(rng, c, 1 + rng() % 3, 3);
    Polynomial zero(c), one = Polynomial::constant(c, Rational(1));
    ASSERT_EQ(a + b, b + a);
    ASSERT_EQ(a * b, b * a);
    ASSERT_EQ((a + b) + d, a + (b + d));
    ASSERT_EQ((a * b) * d, a * (b * d));
    ASSERT_EQ(a * (b + d), a * b + a * d);
    ASSERT_EQ(a + zero, a);
    ASSERT_EQ(a * one, a);
    ASSERT_TRUE((a * zero).is_zero());
    ASSERT_TRUE((a - a).is_zero());
  }
}

TEST(Arithmetic, DegreeIsMultiplicative) {
  std::mt19937_64 rng(7);
  VariableContext c(std::vector<std::string>{"a", "b", "c", "d"});
  for (int k = 0; k < 300; ++k) {
    Polynomial p = random_polynomial(rng, c, 1 + rng() % 5, 5);
    Polynomial q = random_polynomial(rng, c, 1 + rng() % 5, 5);
    if (p.is_zero() || q.is_zero()) continue;
    ASSERT_EQ((p * q).total_degree().value(), p.total_degree().value() + q.total_degree().value());
  }
}

TEST(Printing, RoundTrip) {
  std::mt19937_64 rng(99);
  VariableContext c({"s", "t"}, {"x", "y"});
  for (int k = 0; k < 500; ++k) {
    Polynomial p = random_polynomial(rng, c, 1 + rng() % 6, 6, true);
    ASSERT_EQ(parse_polynomial(p.to_string(), c), p) << p.to_string();
  }
  EXPECT_EQ(Polynomial(c).to_string(), "0");
  EXPECT_EQ(P("x^2*y - 3/2*z + 1", xyz()).to_string(), "x^2*y - 3/2*z + 1");
}

TEST(Degree, Examples) {
  VariableContext c({"t"}, {"x", "u", "v"});
  EXPECT_EQ(P("3*u + 3*u*v^2 - u^3", c).total_degree().value(), 3u);
  EXPECT_EQ(P("1", c).total_degree().value(), 0u);
  EXPECT_EQ(P("x^2*t^5", c).degree_in(std::vector<std::string>{"x"}).value(), 2u);
  EXPECT_TRUE(Polynomial(c).total_degree().is_minus_infinity());
  EXPECT_LT(Polynomial(c).total_degree(), P("1", c).total_degree());
}

TEST(Derivative, Examples) {
  VariableContext c({"t"}, {"x", "y"});
  EXPECT_EQ(P("x^2 - t", c).derivative(c.index_of("x")), P("2*x", c));
  EXPECT_TRUE(P("t^3", c).derivative(c.index_of("x")).is_zero());
  EXPECT_EQ(P("x*y^2", c).derivative(c.index_of("y")), P("2*x*y", c));
  EXPECT_THROW(P("x", c).derivative("w"), UnknownVariable);
}

TEST(Order, Examples) {
  // lex with x > y
  auto lex = MonomialOrder::lex(2);
  EXPECT_EQ(lex.compare(Monomial({1, 0}), Monomial({0, 5})), std::strong_ordering::greater);
  auto grevlex = MonomialOrder::grevlex(2);
  EXPECT_EQ(grevlex.compare(Monomial({1, 1}), Monomial({2, 0})), std::strong_ordering::less);
  // block [{x}, {t}] over (x, t)
  auto block = MonomialOrder::elimination(2, {0}, {1});
  EXPECT_EQ(block.compare(Monomial({0, 9}), Monomial({1, 0})), std::strong_ordering::less);
  EXPECT_THROW(lex.compare(Monomial({1}), Monomial({1, 0})), ContextMismatch);
}

TEST(Order, GrevlexTieBreak) {
  auto g = MonomialOrder::grevlex(3);
  // x*z < y^2 in grevlex with x > y > z
  EXPECT_EQ(g.compare(Monomial({1, 0, 1}), Monomial({0, 2, 0})), std::strong_ordering::less);
  EXPECT_EQ(MonomialOrder::lex(3).compare(Monomial({1, 0, 1}), Monomial({0, 2, 0})), std::strong_ordering::greater);
}

namespace {

std::vector<Monomial> all_monomials(std::size_t nv, unsigned maxdeg) {
  std::vector<Monomial> out;
  Monomial m(nv);
  auto rec = [&](auto&& self, std::size_t v, unsigned left) -> void {
    if (v == nv) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[v] = e;
      self(self, v + 1, left - e);
    }
    m[v] = 0;
  };
  rec(rec, 0, maxdeg);
  return out;
}

void check_axioms(const MonomialOrder& ord, std::size_t nv) {
  auto mons = all_monomials(nv, 4);
  const Monomial one(nv);
  for (const auto& a : mons) {
    EXPECT_EQ(ord.compare(a, a), std::strong_ordering::equal);
    if (!a.is_one()) ASSERT_EQ(ord.compare(one, a), std::strong_ordering::less) << ord.describe();
  }
  auto small = all_monomials(nv, 2);
  for (const auto& a : mons)
    for (const auto& b : mons) {
      auto ab = ord.compare(a, b);
      ASSERT_EQ(ab == std::strong_ordering::equal, a == b);
      ASSERT_EQ(ab, 0 <=> ord.compare(b, a));  // antisymmetry
      for (const auto& w : small) ASSERT_EQ(ord.compare(a * w, b * w), ab) << ord.describe();
    }
  // transitivity on a sorted sample
  std::vector<Monomial> sorted = mons;
  std::sort(sorted.begin(), sorted.end(), [&](const Monomial& a, const Monomial& b) { return ord.less(a, b); });
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    ASSERT_EQ(ord.compare(sorted[i], sorted[i + 1]), std::strong_ordering::less);
}

}  // namespace

TEST(Order, AxiomsExhaustive) {
  for (std::size_t nv = 1; nv <= 4; ++nv) {
    check_axioms(MonomialOrder::lex(nv), nv);
    check_axioms(MonomialOrder::grevlex(nv), nv);
  }
  check_axioms(MonomialOrder::elimination(4, {0, 1}, {2, 3}), 4);
  check_axioms(MonomialOrder::elimination(4, {3}, {0, 1, 2}), 4);
  check_axioms(MonomialOrder::block(4, {OrderBlock{{1}, InnerOrder::lex}, OrderBlock{{0, 2, 3}, InnerOrder::lex}}), 4);
  check_axioms(MonomialOrder::block(3, {OrderBlock{{0, 1}, InnerOrder::grevlex}, OrderBlock{{2}, InnerOrder::grevlex}}), 3);
}

TEST(Order, BlockEliminates) {
  auto ord = MonomialOrder::elimination(3, {0}, {1, 2});
  for (const auto& a : all_monomials(3, 4))
    for (const auto& b : all_monomials(3, 4))
      if (a[0] > 0 && b[0] == 0) ASSERT_EQ(ord.compare(a, b), std::strong_ordering::greater);
  EXPECT_THROW(MonomialOrder::elimination(3, {0}, {0, 1}), Error);
  EXPECT_THROW(MonomialOrder::elimination(3, {0}, {1}), Error);
}

TEST(Squarefree, Examples) {
  VariableContext c({"t"}, {"x", "y"});
  EXPECT_EQ(squarefree_part(P("(x-1)^2", c)), P("x - 1", c));
  EXPECT_EQ(squarefree_part(P("x^2 - t", c)), P("x^2 - t", c));
  EXPECT_EQ(squarefree_part(P("(x*y)^3", c)), P("x*y", c));
  EXPECT_EQ(squarefree_part(P("4*(x - t)^3*(y + 1)^2*(x + y)", c)), P("(x - t)*(y + 1)*(x + y)", c).normalized());
  EXPECT_THROW(squarefree_part(Polynomial(c)), ZeroPolynomial);
}

TEST(Squarefree, RandomProductsAndDerivativeProperty) {
  std::mt19937_64 rng(31337);
  VariableContext c(std::vector<std::string>{"a", "b", "c"});
  for (int k = 0; k < 60; ++k) {
    Polynomial f = random_polynomial(rng, c, 1 + rng() % 2, 3);
    Polynomial g = random_polynomial(rng, c, 1 + rng() % 2, 3);
    if (f.is_constant() || g.is_constant()) continue;
    Polynomial p = f.pow(1 + rng() % 3) * g.pow(1 + rng() % 2);
    Polynomial s = squarefree_part(p);
    // s divides p and p divides a power of s
    ASSERT_TRUE(exact_divide(p, s).has_value());
    ASSERT_TRUE(exact_divide(s.pow(p.total_degree().value()), p).has_value()) << p.to_string() << " | " << s.to_string();
    for (std::size_t v = 0; v < c.size(); ++v) {
      Polynomial d = s.derivative(v);
      if (d.is_zero()) continue;
      // any common factor is free of the differentiation variable
      ASSERT_EQ(gcd(s, d).degree_in(v).value(), 0u) << s.to_string();
    }
  }
}

TEST(Gcd, Basics) {
  VariableContext c(std::vector<std::string>{"x", "y", "z"});
  Polynomial a = P("(x + y)*(x - z)^2*(y^2 + 1)", c), b = P("(x - z)*(y^2 + 1)*(x + 3)", c);
  EXPECT_EQ(gcd(a, b), P("(x - z)*(y^2 + 1)", c).normalized());
  EXPECT_TRUE(gcd(P("x + 1", c), P("y + 1", c)).is_constant());
  EXPECT_EQ(gcd(Polynomial(c), P("2*x", c)), P("x", c));
  auto q = exact_divide(a, P("x - z", c));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q * P("x - z", c), a);
  EXPECT_FALSE(exact_divide(P("x + 1", c), P("x - 1", c)).has_value());
}

TEST(Gcd, BivariateMatchesKnownFactor) {
  // Large bivariate inputs take the evaluation and interpolation route.
  VariableContext c(std::vector<std::string>{"x", "y"});
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    Polynomial g = random_polynomial(rng, c, 3, 4), a = random_polynomial(rng, c, 4, 5),
               b = random_polynomial(rng, c, 4, 5);
    if (g.is_constant() || a.is_zero() || b.is_zero()) continue;
    Polynomial r = gcd(a * g, b * g);
    ASSERT_TRUE(exact_divide(a * g, r).has_value());
    ASSERT_TRUE(exact_divide(b * g, r).has_value());
    ASSERT_TRUE(exact_divide(r, g.normalized()).has_value()) << r.to_string() << " vs " << g.to_string();
    auto unit = exact_divide(*exact_divide(r, g.normalized()), gcd(a, b));
    ASSERT_TRUE(unit && unit->is_constant());
  }
}

TEST(Gcd, ThreeAndFourVariablesMatchKnownFactor) {
  std::mt19937_64 rng(12);
  for (const std::vector<std::string>& names : {std::vector<std::string>{"x", "y", "z"},
                                                std::vector<std::string>{"a", "b", "c", "d"}}) {
    VariableContext c(names);
    for (int k = 0; k < 20; ++k) {
      Polynomial g = random_polynomial(rng, c, 3, 3), a = random_polynomial(rng, c, 3, 3),
                 b = random_polynomial(rng, c, 3, 3);
      if (g.is_constant() || a.is_zero() || b.is_zero()) continue;
      Polynomial r = gcd(a * g, b * g);
      ASSERT_TRUE(exact_divide(a * g, r).has_value());
      ASSERT_TRUE(exact_divide(b * g, r).has_value());
      ASSERT_TRUE(exact_divide(r, g.normalized()).has_value()) << r.to_string() << " vs " << g.to_string();
      auto unit = exact_divide(*exact_divide(r, g.normalized()), gcd(a, b));
      ASSERT_TRUE(unit && unit->is_constant());
    }
  }
  VariableContext c(std::vector<std::string>{"x", "y", "z"});
  EXPECT_EQ(gcd(P("(x*y - z^2)^2*(x + 1)", c), P("(x*y - z^2)*(y - 1)^3", c)), P("x*y - z^2", c).normalized());
  EXPECT_TRUE(gcd(P("x*y*z + 1", c), P("x + y + z", c)).is_constant());
}

TEST(Resultant, Examples) {
  VariableContext c({"t", "y"}, {"x"});
  const auto x = c.index_of("x");
  EXPECT_EQ(resultant(P("x^2 - t", c), P("2*x", c), x), P("-4*t", c));
  EXPECT_EQ(resultant(P("x^3 + t*x + 1", c), P("3*x^2 + t", c), x), P("4*t^3 + 27", c));
  EXPECT_EQ(resultant(P("t*x^2 + y", c), P("x - y", c), x), P("t*y^2 + y", c));
  EXPECT_EQ(resultant(P("x*y - 1", c), P("x^2 + y^2 - t", c), c.index_of("y")), P("x^4 - t*x^2 + 1", c));
  EXPECT_TRUE(resultant(P("(x - t)*(x + 1)", c), P("(x - t)*y", c), x).is_zero());
}

TEST(Substitution, AndEmbedding) {
  VariableContext c({"t"}, {"x"});
  Polynomial p = P("x^2 - t*x + 1", c);
  EXPECT_EQ(p.substitute(c.index_of("t"), Rational(2)), P("x^2 - 2*x + 1", c));
  EXPECT_EQ(p.substitute(c.index_of("x"), P("t + 1", c)), P("(t + 1)^2 - t*(t + 1) + 1", c));
  VariableContext d({"x", "t"});
  EXPECT_EQ(p.embed(d), parse_polynomial("x^2 - t*x + 1", d));
  VariableContext e(std::vector<std::string>{"x"});
  EXPECT_THROW(p.embed(e), UnknownVariable);
  EXPECT_EQ(p.evaluate({Rational(3), Rational(2)}), Rational(4 - 6 + 1));
}

TEST(Normalization, ContentAndSign) {
  VariableContext c(std::vector<std::string>{"x", "y"});
  EXPECT_EQ(P("-4*x^2 + 6/5*y", c).normalized(), P("10*x^2 - 3*y", c));
  EXPECT_EQ(P("1/3*x - 1/2", c).normalized(), P("2*x - 3", c));
}
