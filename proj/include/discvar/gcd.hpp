#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "discvar/error.hpp"
#include "discvar/polynomial.hpp"

namespace discvar {

/// Exact quotient p / q, or nullopt when q does not divide p.
///
/// Plain multivariate division under lex (the storage order of the term
/// map, so the leading term is the last entry).
inline std::optional<Polynomial> exact_divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw ZeroPolynomial("exact_divide");
  if (!(p.context() == q.context())) throw ContextMismatch();
  if (q.is_constant()) {
    Polynomial r(p);
    r *= Rational(1) / q.constant_term();
    return r;
  }
  const auto& [qm, qc] = *q.terms().rbegin();
  Polynomial rem(p), quo(p.context());
  while (!rem.is_zero()) {
    const auto& [rm, rc] = *rem.terms().rbegin();
    if (!qm.divides(rm)) return std::nullopt;
    Monomial m = rm.quotient(qm);
    Rational c = rc / qc;
    quo.add_term(m, c);
    rem -= q.mul_monomial(m, c);
  }
  return quo;
}

namespace detail {

// Polynomial viewed as univariate in one variable, coefficients free of it.
using Univariate = std::vector<Polynomial>;

inline Univariate to_univariate(const Polynomial& p, std::size_t var) {
  Univariate u;
  for (const auto& [m, c] : p.terms()) {
    auto e = m[var];
    if (u.size() <= e) u.resize(e + 1, Polynomial(p.context()));
    Monomial rest(m);
    rest[var] = 0;
    u[e].add_term(rest, c);
  }
  return u;
}

inline Polynomial from_univariate(const Univariate& u, std::size_t var, const VariableContext& ctx) {
  Polynomial p(ctx);
  for (std::size_t e = 0; e < u.size(); ++e) {
    if (u[e].is_zero()) continue;
    p += u[e].mul_monomial(Monomial::variable(ctx.size(), var, static_cast<Monomial::exponent_type>(e)),
                           Rational(1));
  }
  return p;
}

inline void trim(Univariate& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

inline long udeg(const Univariate& u) { return static_cast<long>(u.size()) - 1; }

inline Polynomial exact_quotient(const Polynomial& p, const Polynomial& q) {
  auto r = exact_divide(p, q);
  if (!r) throw Error("internal: inexact division in gcd");
  return *std::move(r);
}

// lc(B)^(deg A - deg B + 1) * A mod B.
inline Univariate pseudo_remainder(Univariate a, const Univariate& b) {
  const long db = udeg(b);
  long e = udeg(a) - db + 1;
  const Polynomial& lb = b.back();
  while (!a.empty() && udeg(a) >= db) {
    Polynomial la = a.back();
    long shift = udeg(a) - db;
    for (auto& c : a) c *= lb;
    for (long i = 0; i <= db; ++i) a[i + shift] -= la * b[i];
    trim(a);
    --e;
  }
  if (e > 0) {
    Polynomial f = lb.pow(static_cast<unsigned long>(e));
    for (auto& c : a) c *= f;
  }
  return a;
}

// Dense univariate polynomials over Q, lowest degree first.
using DenseQ = std::vector<Rational>;

inline void dense_trim(DenseQ& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

// Monic gcd by the Euclidean algorithm; gcd(0, 0) is empty.
inline DenseQ dense_gcd(DenseQ a, DenseQ b) {
  dense_trim(a);
  dense_trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational c = a.back() / b.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
      dense_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    Rational l = a.back();
    for (auto& c : a) c /= l;
  }
  return a;
}

// p(w = t) as a dense polynomial in v; p must be supported on {v, w}.
inline DenseQ evaluate_bivariate(const Polynomial& p, std::size_t v, std::size_t w, const Rational& t) {
  DenseQ out;
  std::vector<Rational> powers{Rational(1)};
  for (const auto& [m, c] : p.terms()) {
    while (powers.size() <= m[w]) powers.push_back(powers.back() * t);
    if (out.size() <= m[v]) out.resize(m[v] + 1, Rational(0));
    out[m[v]] += c * powers[m[w]];
  }
  dense_trim(out);
  return out;
}

// Newton interpolation through (xs[i], ys[i]), as a polynomial in variable w.
inline Polynomial interpolate(const std::vector<Rational>& xs, std::vector<Rational> ys, std::size_t w,
                              const VariableContext& ctx) {
  const std::size_t n = xs.size();
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) ys[i] = (ys[i] - ys[i - 1]) / (xs[i] - xs[i - j]);
  DenseQ acc;  // Horner on the Newton form
  for (std::size_t k = n; k-- > 0;) {
    DenseQ next(acc.size() + 1, Rational(0));
    for (std::size_t i = 0; i < acc.size(); ++i) {
      next[i + 1] += acc[i];
      next[i] -= acc[i] * xs[k];
    }
    next[0] += ys[k];
    acc = std::move(next);
  }
  Polynomial p(ctx);
  for (std::size_t e = 0; e < acc.size(); ++e)
    if (!acc[e].is_zero())
      p.add_term(Monomial::variable(ctx.size(), w, static_cast<Monomial::exponent_type>(e)), acc[e]);
  return p;
}

}  // namespace detail

Polynomial gcd(const Polynomial& a, const Polynomial& b);

namespace detail {

// gcd of a and b, supported on {v, w} and primitive in v, by evaluating w
// at integer points, taking univariate gcds and interpolating. Images are
// scaled so their leading coefficient is gamma(t), gamma the gcd of the
// leading coefficients in v, which fixes the interpolant's degree in w.
// The result is only accepted after trial division, so unlucky points can
// cost time but never correctness. nullopt when no answer was found within
// the point budget.
inline std::optional<Polynomial> bivariate_gcd(const Polynomial& a, const Polynomial& b, std::size_t v,
                                               std::size_t w) {
  const auto& ctx = a.context();
  auto ua = to_univariate(a, v), ub = to_univariate(b, v);
  const Polynomial gamma = gcd(ua.back(), ub.back());
  const unsigned long bound =
      std::min(a.degree_in(w).value(), b.degree_in(w).value()) + gamma.degree_in(w).value();
  const std::size_t da = ua.size() - 1, db = ub.size() - 1;
  std::optional<std::size_t> best;
  std::vector<Rational> pts;
  std::vector<DenseQ> images;
  const long budget = 4 * static_cast<long>(bound) + 64;
  for (long k = 1; k <= budget; ++k) {
    const Rational t(k % 2 ? (k + 1) / 2 : -(k / 2));
    const DenseQ gv = evaluate_bivariate(gamma, v, w, t);
    if (gv.empty()) continue;
    const Rational gt = gv[0];
    DenseQ ea = evaluate_bivariate(a, v, w, t), eb = evaluate_bivariate(b, v, w, t);
    if (ea.size() != da + 1 || eb.size() != db + 1) continue;
    DenseQ g = dense_gcd(std::move(ea), std::move(eb));
    const std::size_t dg = g.size() - 1;
    if (dg == 0) return Polynomial::constant(ctx, Rational(1));
    if (best && dg > *best) continue;
    if (!best || dg < *best) {
      best = dg;
      pts.clear();
      images.clear();
    }
    for (auto& c : g) c *= gt;
    pts.push_back(t);
    images.push_back(std::move(g));
    if (pts.size() < bound + 1) continue;
    Polynomial h(ctx);
    for (std::size_t e = 0; e <= *best; ++e) {
      std::vector<Rational> ys;
      for (const auto& img : images) ys.push_back(img[e]);
      Polynomial ce = interpolate(pts, std::move(ys), w, ctx);
      h += ce.mul_monomial(Monomial::variable(ctx.size(), v, static_cast<Monomial::exponent_type>(e)), Rational(1));
    }
    Polynomial cont(ctx);
    for (const auto& k2 : to_univariate(h, v))
      if (!k2.is_zero()) cont = gcd(cont, k2);
    auto pp = exact_divide(h, cont);
    if (!pp) continue;
    if (exact_divide(a, *pp) && exact_divide(b, *pp)) return *pp;
  }
  return std::nullopt;
}

// The same with three or more variables: w is evaluated and the images
// come from a recursive gcd. Image leading terms are taken under lex on the
// remaining variables and scaled to gamma(t). a and b must be primitive in
// some other variable, so the gcd has no factor in w alone.
inline std::optional<Polynomial> multivariate_gcd(const Polynomial& a, const Polynomial& b, std::size_t w) {
  const auto& ctx = a.context();
  auto split = [&](const Polynomial& p) {
    std::map<Monomial, Polynomial> out;
    for (const auto& [m, c] : p.terms()) {
      Monomial x(m);
      x[w] = 0;
      auto it = out.try_emplace(x, ctx).first;
      it->second.add_term(Monomial::variable(ctx.size(), w, m[w]), c);
    }
    return out;
  };
  const auto pa = split(a), pb = split(b);
  const Monomial lead_a = pa.rbegin()->first, lead_b = pb.rbegin()->first;
  const Polynomial gamma = gcd(pa.rbegin()->second, pb.rbegin()->second);
  const unsigned long bound =
      std::min(a.degree_in(w).value(), b.degree_in(w).value()) + gamma.degree_in(w).value();
  std::optional<Monomial> best;
  std::vector<Rational> pts;
  std::vector<Polynomial> images;
  const long budget = 4 * static_cast<long>(bound) + 64;
  for (long k = 1; k <= budget; ++k) {
    const Rational t(k % 2 ? (k + 1) / 2 : -(k / 2));
    const Rational gt = gamma.substitute(w, t).constant_term();
    if (gt.is_zero()) continue;
    Polynomial ea = a.substitute(w, t), eb = b.substitute(w, t);
    if (ea.is_zero() || eb.is_zero() || ea.terms().rbegin()->first != lead_a || eb.terms().rbegin()->first != lead_b)
      continue;
    Polynomial g = gcd(ea, eb);
    if (g.is_constant()) return Polynomial::constant(ctx, Rational(1));
    const Monomial lg = g.terms().rbegin()->first;
    if (best && *best < lg) continue;
    if (!best || lg < *best) {
      best = lg;
      pts.clear();
      images.clear();
    }
    g *= gt / g.terms().rbegin()->second;
    pts.push_back(t);
    images.push_back(std::move(g));
    if (pts.size() < bound + 1) continue;
    std::set<Monomial> support;
    for (const auto& img : images)
      for (const auto& [m, c] : img.terms()) support.insert(m);
    Polynomial h(ctx);
    for (const auto& m : support) {
      std::vector<Rational> ys;
      for (const auto& img : images) ys.push_back(img.coefficient(m));
      h += interpolate(pts, std::move(ys), w, ctx).mul_monomial(m, Rational(1));
    }
    Polynomial cont(ctx);
    for (const auto& [m, c] : split(h)) {
      cont = gcd(cont, c);
      if (cont.is_constant()) break;
    }
    auto pp = exact_divide(h, cont);
    if (!pp) continue;
    if (exact_divide(a, *pp) && exact_divide(b, *pp)) return *pp;
  }
  return std::nullopt;
}

}  // namespace detail

/// gcd of the coefficients of p viewed as univariate in `var`.
inline Polynomial content_in(const Polynomial& p, std::size_t var) {
  auto u = detail::to_univariate(p, var);
  Polynomial c(p.context());
  for (const auto& k : u) {
    if (k.is_zero()) continue;
    c = gcd(c, k);
    if (c.is_constant()) break;
  }
  return c;
}

/// Multivariate gcd over Q, normalized to integer content 1 and positive
/// grevlex leading coefficient. gcd(0, 0) = 0.
///
/// Recursive: split off the content in a main variable, then interpolate
/// from evaluations, with the subresultant remainder sequence on the
/// primitive parts as the fallback.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (!(a.context() == b.context())) throw ContextMismatch();
  const auto& ctx = a.context();
  if (a.is_zero()) return b.normalized();
  if (b.is_zero()) return a.normalized();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(ctx, Rational(1));

  auto sa = a.support(), sb = b.support();
  std::vector<std::size_t> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common));
  if (common.empty()) {
    // No shared variable: the gcd is free of every variable of a (resp. b).
    Polynomial ca = a;
    for (auto v : sa) {
      ca = content_in(ca, v);
      if (ca.is_constant()) return Polynomial::constant(ctx, Rational(1));
    }
    return gcd(ca, b);
  }
  const std::size_t v = common.back();

  auto ua = detail::to_univariate(a, v), ub = detail::to_univariate(b, v);
  auto content = [&](const detail::Univariate& u) {
    Polynomial c(ctx);
    for (const auto& k : u) {
      if (k.is_zero()) continue;
      c = gcd(c, k);
      if (c.is_constant()) break;
    }
    return c;
  };
  Polynomial ca = content(ua), cb = content(ub);
  Polynomial c = gcd(ca, cb);
  for (auto& k : ua) k = detail::exact_quotient(k, ca);
  for (auto& k : ub) k = detail::exact_quotient(k, cb);

  std::vector<std::size_t> all;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(all));
  if (all.size() == 2) {
    const std::size_t w = all[0] == v ? all[1] : all[0];
    if (auto h = detail::bivariate_gcd(detail::from_univariate(ua, v, ctx), detail::from_univariate(ub, v, ctx), v, w))
      return (c * *h).normalized();
  } else if (all.size() > 2) {
    // evaluate the variable of least degree, other than v
    std::size_t w = v;
    for (auto x : all)
      if (x != v && (w == v || std::min(a.degree_in(x).value(), b.degree_in(x).value()) <
                                   std::min(a.degree_in(w).value(), b.degree_in(w).value())))
        w = x;
    if (auto h = detail::multivariate_gcd(detail::from_univariate(ua, v, ctx), detail::from_univariate(ub, v, ctx), w))
      return (c * *h).normalized();
  }

  if (detail::udeg(ua) < detail::udeg(ub)) std::swap(ua, ub);
  Polynomial g = Polynomial::constant(ctx, Rational(1));
  Polynomial h = g;
  while (true) {
    if (detail::udeg(ub) == 0) return c.normalized();
    const long d = detail::udeg(ua) - detail::udeg(ub);
    auto r = detail::pseudo_remainder(ua, ub);
    if (r.empty()) break;
    if (detail::udeg(r) == 0) return c.normalized();
    ua = std::move(ub);
    Polynomial divisor = g * h.pow(static_cast<unsigned long>(d));
    for (auto& k : r) k = detail::exact_quotient(k, divisor);
    ub = std::move(r);
    g = ua.back();
    if (d == 0) {
      // h unchanged
    } else if (d == 1) {
      h = g;
    } else {
      h = detail::exact_quotient(g.pow(static_cast<unsigned long>(d)), h.pow(static_cast<unsigned long>(d - 1)));
    }
  }
  Polynomial cp = content(ub);
  for (auto& k : ub) k = detail::exact_quotient(k, cp);
  return (c * detail::from_univariate(ub, v, ctx)).normalized();
}

/// Resultant of a and b with respect to variable `var`, via the subresultant
/// remainder sequence. Zero when either input is zero or free of `var`
/// while the other is not constant.
inline Polynomial resultant(const Polynomial& a, const Polynomial& b, std::size_t var) {
  if (!(a.context() == b.context())) throw ContextMismatch();
  const auto& ctx = a.context();
  if (a.is_zero() || b.is_zero()) return Polynomial(ctx);
  auto ua = detail::to_univariate(a, var), ub = detail::to_univariate(b, var);
  Rational sign(1);
  if (detail::udeg(ua) < detail::udeg(ub)) {
    std::swap(ua, ub);
    if ((detail::udeg(ua) & 1) && (detail::udeg(ub) & 1)) sign = -sign;
  }
  if (detail::udeg(ub) == 0) return ub[0].pow(static_cast<unsigned long>(detail::udeg(ua))) * sign;
  auto content = [&](const detail::Univariate& u) {
    Polynomial c(ctx);
    for (const auto& k : u) {
      if (k.is_zero()) continue;
      c = gcd(c, k);
      if (c.is_constant()) break;
    }
    return c;
  };
  Polynomial ca = content(ua), cb = content(ub);
  Polynomial t = ca.pow(static_cast<unsigned long>(detail::udeg(ub))) * cb.pow(static_cast<unsigned long>(detail::udeg(ua)));
  for (auto& k : ua) k = detail::exact_quotient(k, ca);
  for (auto& k : ub) k = detail::exact_quotient(k, cb);
  Polynomial g = Polynomial::constant(ctx, Rational(1)), h = g;
  while (true) {
    const long d = detail::udeg(ua) - detail::udeg(ub);
    if ((detail::udeg(ua) & 1) && (detail::udeg(ub) & 1)) sign = -sign;
    auto r = detail::pseudo_remainder(ua, ub);
    if (r.empty()) return Polynomial(ctx);
    ua = std::move(ub);
    Polynomial divisor = g * h.pow(static_cast<unsigned long>(d));
    for (auto& k : r) k = detail::exact_quotient(k, divisor);
    ub = std::move(r);
    g = ua.back();
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = detail::exact_quotient(g.pow(static_cast<unsigned long>(d)), h.pow(static_cast<unsigned long>(d - 1)));
    }
    if (detail::udeg(ub) == 0) {
      const long da = detail::udeg(ua);
      Polynomial last = da == 1 ? ub[0]
                                : detail::exact_quotient(ub[0].pow(static_cast<unsigned long>(da)),
                                                         h.pow(static_cast<unsigned long>(da - 1)));
      return last * t * sign;
    }
  }
}

/// Product of the distinct irreducible factors of p, up to a constant,
/// normalized like gcd().
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw ZeroPolynomial("squarefree_part");
  const auto& ctx = p.context();
  if (p.is_constant()) return Polynomial::constant(ctx, Rational(1));
  const std::size_t v = p.support().front();
  // Every factor of the primitive part involves v, so gcd(pp, d pp / dv)
  // carries exactly the repeated factors; the content has no v at all.
  Polynomial c = content_in(p, v);
  Polynomial pp = detail::exact_quotient(p, c);
  Polynomial g = gcd(pp, pp.derivative(v));
  Polynomial sf = detail::exact_quotient(pp, g);
  if (!c.is_constant()) sf *= squarefree_part(c);
  return sf.normalized();
}

}  // namespace discvar
