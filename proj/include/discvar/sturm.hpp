#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "discvar/error.hpp"
#include "discvar/gcd.hpp"
#include "discvar/polynomial.hpp"
#include "discvar/rational.hpp"

namespace discvar {

/// Dense univariate polynomial, coefficient k of x^k. No trailing zeros.
using Dense = std::vector<Rational>;

namespace detail::sturm {

inline void trim(Dense& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Dense remainder(Dense a, const Dense& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    Rational q = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t k = 0; k <= db; ++k) a[shift + k] -= q * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline Dense derivative(const Dense& p) {
  Dense d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

inline int sign_at(const Dense& p, const Rational& x) {
  Rational acc;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc.sign();
}

// Sign as x -> +inf (dir > 0) or -inf (dir < 0).
inline int sign_at_infinity(const Dense& p, int dir) {
  int s = p.back().sign();
  if (dir < 0 && (p.size() - 1) % 2 == 1) s = -s;
  return s;
}

template <class SignFn>
std::size_t variations(const std::vector<Dense>& chain, SignFn sign) {
  std::size_t v = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sign(p);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

}  // namespace detail::sturm

/// p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).
inline std::vector<Dense> sturm_sequence(Dense p) {
  detail::sturm::trim(p);
  if (p.empty()) throw ZeroPolynomial("sturm_sequence");
  std::vector<Dense> chain{p};
  Dense d = detail::sturm::derivative(p);
  if (d.empty()) return chain;
  chain.push_back(d);
  while (true) {
    Dense r = detail::sturm::remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

/// Distinct real roots of p in (a, b]; a or b absent means -inf or +inf.
inline std::size_t count_real_roots(const Dense& p, const std::optional<Rational>& a = std::nullopt,
                                    const std::optional<Rational>& b = std::nullopt) {
  using namespace detail::sturm;
  auto chain = sturm_sequence(p);
  auto at = [&](const std::optional<Rational>& x, int inf) {
    return variations(chain, [&](const Dense& q) { return x ? sign_at(q, *x) : sign_at_infinity(q, inf); });
  };
  const std::size_t va = at(a, -1), vb = at(b, +1);
  return va >= vb ? va - vb : 0;
}

/// Coefficients of p in its only variable; nullopt when p involves more
/// than one variable.
inline std::optional<Dense> to_dense(const Polynomial& p) {
  auto vars = p.support();
  if (vars.size() > 1) return std::nullopt;
  Dense d;
  if (vars.empty()) {
    if (!p.is_zero()) d.push_back(p.constant_term());
    return d;
  }
  const std::size_t v = vars.front();
  for (const auto& [m, c] : p.terms()) {
    if (d.size() <= m[v]) d.resize(m[v] + 1);
    d[m[v]] = c;
  }
  detail::sturm::trim(d);
  return d;
}

/// Distinct real roots of a univariate polynomial, counted on its
/// squarefree part.
inline std::size_t count_real_roots(const Polynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("count_real_roots");
  auto d = to_dense(squarefree_part(p));
  if (!d) throw Error("real root counting needs a univariate polynomial");
  return count_real_roots(*d);
}

}  // namespace discvar
