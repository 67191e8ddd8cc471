#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "discvar/error.hpp"
#include "discvar/groebner.hpp"
#include "discvar/idealops.hpp"
#include "discvar/polynomial.hpp"

namespace discvar {

struct OracleConfig {
  // 0 means the default cap ceil((3/2)^mu * d_1 ... d_mu).
  unsigned long degree_cap = 0;
  unsigned long max_degree_cap = 24;
  std::size_t max_matrix_dim = 6000;
};

/// Degree cap for eliminating all variables outside `keep` from `I`:
/// ceil((3/2)^mu * product of the mu largest generator degrees) where mu is
/// the smaller of the generator count and the number of eliminated
/// variables, and never below the largest generator degree.
inline unsigned long default_degree_cap(const Ideal& I, std::size_t eliminated) {
  std::vector<unsigned long> d;
  for (const auto& g : I.generators()) d.push_back(g.total_degree().value());
  std::sort(d.rbegin(), d.rend());
  const std::size_t mu = std::min(d.size(), eliminated);
  // (3/2)^mu * prod = 3^mu * prod / 2^mu, in exact integers
  Integer num = 1;
  for (std::size_t k = 0; k < mu; ++k) num *= 3 * d[k];
  Integer den = Integer(1) << static_cast<mp_bitcnt_t>(mu);
  Integer cap = (num + den - 1) / den;
  unsigned long out = cap.fits_ulong_p() ? cap.get_ui() : ~0ul;
  if (!d.empty()) out = std::max(out, d.front());
  return out;
}

namespace detail::oracle {

using Row = std::vector<std::pair<std::uint32_t, Integer>>;

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// All exponent vectors of total degree exactly `deg` over `nv` variables,
// in descending lex order.
inline void monomials_of_degree(std::size_t nv, unsigned long deg, std::vector<Monomial>& out) {
  Monomial m(nv);
  auto rec = [&](auto&& self, std::size_t v, unsigned long left) -> void {
    if (v + 1 == nv) {
      m[v] = static_cast<Monomial::exponent_type>(left);
      out.push_back(m);
      return;
    }
    for (unsigned long e = left + 1; e-- > 0;) {
      m[v] = static_cast<Monomial::exponent_type>(e);
      self(self, v + 1, left - e);
    }
    m[v] = 0;
  };
  if (nv == 0) {
    if (deg == 0) out.push_back(m);
    return;
  }
  rec(rec, 0, deg);
}

// Graded-lex descending list of monomials of degree <= cap.
inline std::vector<Monomial> monomials_up_to(std::size_t nv, unsigned long cap) {
  std::vector<Monomial> out;
  for (unsigned long d = cap + 1; d-- > 0;) monomials_of_degree(nv, d, out);
  return out;
}

inline void make_primitive(Row& r) {
  if (r.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y over the merged columns.
inline Row combine(const Integer& a, const Row& x, const Integer& b, const Row& y) {
  Row out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      Integer v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Eliminate the entry of `r` in column `col` using pivot row `p` (whose
// leading column is `col`).
inline void eliminate_with(Row& r, const Row& p, std::uint32_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  if (it == r.end() || it->first != col) return;
  Integer g = gcd(it->second, p.front().second);
  Integer a = p.front().second / g, b = it->second / g;
  r = combine(a, r, b, p);
  make_primitive(r);
}

}  // namespace detail::oracle

/// Parameter-only polynomials of degree <= cap in the span of the shifted
/// generators s * f_i (deg s*f_i <= cap), read off a Macaulay matrix whose
/// parameter-only columns come last. Agrees with the elimination ideal at
/// the level of varieties when the cap is large enough.
inline Ideal oracle_eliminate(const Ideal& I, const std::vector<std::string>& keep, const OracleConfig& cfg = {}) {
  using namespace detail::oracle;
  const auto& ctx = I.context();
  const std::size_t nv = ctx.size();
  std::vector<bool> kept(nv, false);
  for (const auto& n : keep) kept[ctx.index_of(n)] = true;
  std::size_t eliminated = 0;
  for (bool k : kept) eliminated += !k;

  VariableContext narrow = ctx.restricted_to(keep);
  std::vector<std::size_t> keep_idx;
  for (const auto& n : keep) keep_idx.push_back(ctx.index_of(n));
  if (I.is_zero()) return Ideal(narrow);

  unsigned long maxdeg = 0;
  for (const auto& g : I.generators()) maxdeg = std::max(maxdeg, g.total_degree().value());
  unsigned long cap = cfg.degree_cap ? cfg.degree_cap : default_degree_cap(I, eliminated);
  if (cap < maxdeg) throw Error("oracle degree cap below the input degree");
  if (cap > cfg.max_degree_cap) throw InstanceTooLarge("degree cap", cap);

  const std::size_t m = I.size();
  const Integer cols = binomial(cap + nv, nv);
  const Integer bound = Integer(m + 1) * cols;
  if (bound > cfg.max_matrix_dim) throw InstanceTooLarge("matrix dimension", bound.fits_ulong_p() ? bound.get_ui() : ~0ul);

  // Column order: monomials involving an eliminated variable first, then
  // parameter-only ones; each block graded-lex descending.
  std::vector<Monomial> all = monomials_up_to(nv, cap);
  std::vector<Monomial> order;
  std::size_t first_param = 0;
  auto param_only = [&](const Monomial& mo) {
    for (std::size_t v = 0; v < nv; ++v)
      if (!kept[v] && mo[v]) return false;
    return true;
  };
  for (const auto& mo : all)
    if (!param_only(mo)) order.push_back(mo);
  first_param = order.size();
  for (const auto& mo : all)
    if (param_only(mo)) order.push_back(mo);
  std::map<Monomial, std::uint32_t> column;
  for (std::size_t c = 0; c < order.size(); ++c) column.emplace(order[c], static_cast<std::uint32_t>(c));

  std::vector<std::optional<Row>> pivots(order.size());
  auto insert = [&](Row r) {
    make_primitive(r);
    while (!r.empty()) {
      const std::uint32_t lead = r.front().first;
      if (!pivots[lead]) {
        pivots[lead] = std::move(r);
        return;
      }
      eliminate_with(r, *pivots[lead], lead);
    }
  };

  for (const auto& f : I.generators()) {
    const unsigned long d = f.total_degree().value();
    // integer row: clear denominators of f
    Integer den = 1;
    for (const auto& [mo, c] : f.terms()) den = lcm(den, c.denominator());
    std::vector<Monomial> shifts = monomials_up_to(nv, cap - d);
    for (const auto& s : shifts) {
      Row r;
      for (const auto& [mo, c] : f.terms()) {
        Rational v = c * Rational(den);
        r.emplace_back(column.at(mo * s), v.numerator());
      }
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      insert(std::move(r));
    }
  }

  // Reduced echelon form on the parameter block makes the output canonical.
  std::vector<std::uint32_t> leads;
  for (std::size_t c = first_param; c < order.size(); ++c)
    if (pivots[c]) leads.push_back(static_cast<std::uint32_t>(c));
  for (std::size_t k = leads.size(); k-- > 0;)
    for (std::size_t j = 0; j < k; ++j) eliminate_with(*pivots[leads[j]], *pivots[leads[k]], leads[k]);

  std::vector<Polynomial> gens;
  for (auto c : leads) {
    Polynomial p(ctx);
    for (const auto& [col, v] : *pivots[c]) p.add_term(order[col], Rational(v));
    gens.push_back(p.embed(narrow).normalized());
  }
  return Ideal(narrow, std::move(gens));
}

/// One random cross-validation instance.
struct OracleCase {
  std::size_t index = 0;
  std::vector<std::string> parameters, unknowns;
  std::vector<std::string> generators;
  enum class Status { equal, mismatch, skipped } status = Status::equal;
  std::string detail;  // skip reason or counterexample description
  std::string groebner_result, oracle_result;
  double seconds = 0;
};

inline std::string to_string(OracleCase::Status s) {
  switch (s) {
    case OracleCase::Status::equal: return "EQUAL";
    case OracleCase::Status::mismatch: return "MISMATCH";
    case OracleCase::Status::skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

struct CrossValidationReport {
  std::uint64_t seed = 0;
  std::vector<OracleCase> cases;
  std::size_t count(OracleCase::Status s) const {
    return static_cast<std::size_t>(
        std::count_if(cases.begin(), cases.end(), [&](const OracleCase& c) { return c.status == s; }));
  }
  bool ok() const { return count(OracleCase::Status::mismatch) == 0; }
};

namespace detail::oracle {

inline std::uint64_t uniform(std::mt19937_64& rng, std::uint64_t n) {
  return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
}

// Sparse random polynomial of total degree exactly d with coefficients in
// {-3..3}.
inline Polynomial random_polynomial(std::mt19937_64& rng, const VariableContext& ctx, unsigned long d) {
  std::vector<Monomial> mons = monomials_up_to(ctx.size(), d);
  std::vector<Monomial> top;
  monomials_of_degree(ctx.size(), d, top);
  Polynomial p(ctx);
  auto coef = [&] { return Rational(static_cast<long>(uniform(rng, 6)) < 3 ? static_cast<long>(uniform(rng, 3)) - 3
                                                                           : static_cast<long>(uniform(rng, 3)) + 1); };
  p.add_term(top[uniform(rng, top.size())], coef());
  for (const auto& mo : mons)
    if (uniform(rng, 2) == 0) p += Polynomial::term(ctx, mo, coef());
  if (p.total_degree().value() < d) p.add_term(top.front(), Rational(1));
  return p;
}

}  // namespace detail::oracle

/// Random systems with at most 2 parameters, 2 unknowns and degree 2,
/// eliminated both by Groebner bases and by the Macaulay oracle; each pair
/// of results is compared by variety_equal. `seconds_per_case` bounds the
/// Groebner side of each instance; a case over the limit is skipped. The
/// two-generator shortcut of eliminate() is switched off so that every case
/// exercises Buchberger itself.
inline CrossValidationReport cross_validate(std::size_t count, std::uint64_t seed, const OracleConfig& cfg = {},
                                            GroebnerLimits limits = {}, double seconds_per_case = 60) {
  using namespace detail::oracle;
  limits.monic_pair_shortcut = false;
  std::mt19937_64 rng(seed);
  CrossValidationReport rep;
  rep.seed = seed;
  const std::vector<std::string> tnames{"s", "t"}, xnames{"x", "y"};
  for (std::size_t k = 0; k < count; ++k) {
    OracleCase oc;
    oc.index = k;
    const std::size_t s = 1 + uniform(rng, 2), n = 1 + uniform(rng, 2);
    const std::size_t m = n + uniform(rng, 2);  // square or one extra equation
    oc.parameters.assign(tnames.begin(), tnames.begin() + static_cast<long>(s));
    oc.unknowns.assign(xnames.begin(), xnames.begin() + static_cast<long>(n));
    VariableContext ctx(oc.parameters, oc.unknowns);
    Ideal I(ctx);
    for (std::size_t i = 0; i < m; ++i) {
      Polynomial f = random_polynomial(rng, ctx, 1 + uniform(rng, 2));
      oc.generators.push_back(f.to_string());
      I.add(f);
    }
    auto t0 = std::chrono::steady_clock::now();
    if (seconds_per_case > 0) limits.deadline = GroebnerLimits::with_timeout(seconds_per_case).deadline;
    try {
      Ideal o = oracle_eliminate(I, oc.parameters, cfg);
      Ideal g = eliminate(EliminationTask{I, oc.parameters}, limits);
      oc.groebner_result = g.to_string();
      oc.oracle_result = o.to_string();
      VarietyUnion a(g.context()), b(g.context());
      a.add(Source::user, g);
      b.add(Source::user, o.embed(g.context()));
      auto cmp = variety_equal(a, b, limits);
      if (cmp.verdict == Verdict::equal) {
        oc.status = OracleCase::Status::equal;
      } else {
        oc.status = OracleCase::Status::mismatch;
        oc.detail = "verdict " + to_string(cmp.verdict);
        for (const auto& w : cmp.witnesses)
          oc.detail += "; side " + std::string(1, w.side) + " component " + w.component.ideal.to_string() +
                       " generator " + w.generator.to_string();
      }
    } catch (const InstanceTooLarge& e) {
      oc.status = OracleCase::Status::skipped;
      oc.detail = e.what();
    } catch (const ResourceLimit& e) {
      oc.status = OracleCase::Status::skipped;
      oc.detail = e.what();
    }
    oc.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.cases.push_back(std::move(oc));
  }
  return rep;
}

}  // namespace discvar
