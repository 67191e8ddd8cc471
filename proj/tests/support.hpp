#pragma once

#include <random>
#include <string>

#include "discvar/groebner.hpp"
#include "discvar/polynomial.hpp"

namespace discvar::test {

/// Up to `terms` random terms of total degree <= maxdeg with small
/// coefficients (rational ones if requested).
inline Polynomial random_polynomial(std::mt19937_64& rng, const VariableContext& ctx, unsigned maxdeg,
                                    unsigned terms, bool rational = false) {
  Polynomial p(ctx);
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m(ctx.size());
    unsigned budget = static_cast<unsigned>(rng() % (maxdeg + 1));
    for (unsigned d = 0; d < budget; ++d) m[rng() % ctx.size()] += 1;
    long num = static_cast<long>(rng() % 11) - 5;
    long den = rational ? 1 + static_cast<long>(rng() % 4) : 1;
    if (num == 0) num = 1;
    p += Polynomial::term(ctx, m, Rational(num, den));
  }
  return p;
}

/// Random homogeneous polynomial of degree d in all variables of ctx.
inline Polynomial random_homogeneous(std::mt19937_64& rng, const VariableContext& ctx, unsigned d, unsigned terms) {
  Polynomial p(ctx);
  for (unsigned k = 0; k < terms; ++k) {
    Monomial m(ctx.size());
    for (unsigned e = 0; e < d; ++e) m[rng() % ctx.size()] += 1;
    long num = static_cast<long>(rng() % 7) - 3;
    if (num == 0) num = 2;
    p += Polynomial::term(ctx, m, Rational(num));
  }
  return p;
}

/// One or two generators in Q[t][X0, X1] of degree <= 2, homogeneous in
/// X0, X1 with coefficients c0 + c1*t. The context must be (t, X0, X1).
inline Ideal random_homogeneous_ideal(std::mt19937_64& rng, const VariableContext& c) {
  Ideal J(c);
  const std::size_t gens = 1 + rng() % 2;
  for (std::size_t k = 0; k < gens; ++k) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 2);
    Polynomial f(c);
    for (unsigned a = 0; a <= d; ++a) {
      if (rng() % 3 == 0) continue;
      Monomial m(c.size());
      m[1] = static_cast<Monomial::exponent_type>(a);
      m[2] = static_cast<Monomial::exponent_type>(d - a);
      const long c0 = static_cast<long>(rng() % 5) - 2, c1 = static_cast<long>(rng() % 3) - 1;
      Polynomial coeff = Polynomial::constant(c, Rational(c0)) + Polynomial::variable(c, "t") * Rational(c1);
      f += coeff.mul_monomial(m, Rational(1));
    }
    J.add(f);
  }
  return J;
}

}  // namespace discvar::test
