#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discvar/context.hpp"
#include "discvar/error.hpp"
#include "discvar/gcd.hpp"
#include "discvar/groebner.hpp"
#include "discvar/polynomial.hpp"
#include "discvar/system.hpp"

namespace discvar {

/// h^d * p(wrt / h) with d the degree of p in `wrt`. Variables outside
/// `wrt` (parameters) are left alone.
inline Polynomial homogenize(const Polynomial& p, std::size_t h, const std::vector<std::size_t>& wrt) {
  if (h >= p.context().size()) throw Error("homogenizing variable out of range");
  if (std::find(wrt.begin(), wrt.end(), h) != wrt.end())
    throw Error("homogenizing variable must not be one of the homogenized variables");
  if (p.is_zero()) return p;
  const unsigned long d = p.degree_in(wrt).value();
  Polynomial r(p.context());
  for (const auto& [m, c] : p.terms()) {
    unsigned long s = 0;
    for (auto v : wrt) s += m[v];
    Monomial t(m);
    t[h] += static_cast<Monomial::exponent_type>(d - s);
    r.add_term(t, c);
  }
  return r;
}

inline Polynomial homogenize(const Polynomial& p, const std::string& h, const std::vector<std::string>& wrt) {
  std::vector<std::size_t> idx;
  for (const auto& n : wrt) idx.push_back(p.context().index_of(n));
  return homogenize(p, p.context().index_of(h), idx);
}

/// (I + <v - a>) intersected with Q[other variables]: substitute v := a in
/// every generator and drop v from the context.
inline Ideal specialize(const Ideal& I, const std::string& var, const Rational& a) {
  const auto& ctx = I.context();
  const std::size_t v = ctx.index_of(var);
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (i != v) rest.push_back(ctx.name(i));
  VariableContext narrow = ctx.restricted_to(rest);
  Ideal out(narrow);
  for (const auto& g : I.generators()) out.add(g.substitute(v, a).embed(narrow));
  return out;
}

/// I + <z*p - 1> in the context extended by the fresh variable z.
inline Ideal rabinowitsch_extend(const Ideal& I, const Polynomial& p, const std::string& z) {
  if (p.is_zero()) throw ZeroPolynomial("rabinowitsch_extend");
  if (!(p.context() == I.context())) throw ContextMismatch();
  VariableContext ext = I.context().with_auxiliary(z);
  Ideal out = I.embed(ext);
  out.add(Polynomial::variable(ext, z) * p.embed(ext) - Polynomial::constant(ext, Rational(1)));
  return out;
}

/// I : p^infinity, computed by eliminating a Rabinowitsch variable.
inline Ideal saturate(const Ideal& I, const Polynomial& p, const GroebnerLimits& limits = {}) {
  const std::string z = I.context().fresh_name("Z");
  Ideal ext = rabinowitsch_extend(I, p, z);
  Ideal r = eliminate(EliminationTask{ext, I.context().names()}, limits);
  return r.embed(I.context());
}

/// p lies in the radical of I, i.e. 1 is in I + <z*p - 1>.
inline bool radical_member(const Polynomial& p, const Ideal& I, const GroebnerLimits& limits = {}) {
  if (!(p.context() == I.context())) throw ContextMismatch();
  if (p.is_zero() || I.has_unit()) return true;
  if (I.is_zero()) return false;
  if (p.is_constant()) return false;
  if (I.size() == 1) {
    // sqf(f) is squarefree, so p kills every factor of f iff sqf(f) / gcd(sqf(f), p) is constant.
    Polynomial h = squarefree_part(I.generators().front());
    Polynomial g = gcd(h, p);
    auto q = exact_divide(h, g);
    return q && q->is_constant();
  }
  if (I.basis_order()) {
    if (normal_form(p, I).is_zero()) return true;
  }
  const std::string z = I.context().fresh_name("Z");
  Ideal ext = rabinowitsch_extend(I, p, z);
  Ideal G = buchberger(ext, MonomialOrder::grevlex(ext.context().size()), limits);
  return G.has_unit();
}

enum class Source { inf, ineq, crit, user };

inline std::string to_string(Source s) {
  switch (s) {
    case Source::inf: return "inf";
    case Source::ineq: return "ineq";
    case Source::crit: return "crit";
    case Source::user: return "user";
  }
  return "user";
}

inline Source source_from_string(const std::string& s) {
  if (s == "inf") return Source::inf;
  if (s == "ineq") return Source::ineq;
  if (s == "crit") return Source::crit;
  if (s == "user") return Source::user;
  throw Error("unknown component source '" + s + "'");
}

struct Component {
  Source source = Source::user;
  Ideal ideal;
};

/// Finite union of varieties V(ideal) in one ambient space. No components
/// is the empty variety; a component with the zero ideal is the whole space.
class VarietyUnion {
 public:
  VarietyUnion() = default;
  explicit VarietyUnion(VariableContext ambient) : ambient_(std::move(ambient)) {}

  void add(Source s, Ideal I) {
    if (!(I.context() == ambient_)) throw AmbientMismatch();
    components_.push_back(Component{s, std::move(I)});
  }

  const VariableContext& ambient() const noexcept { return ambient_; }
  const std::vector<Component>& components() const noexcept { return components_; }
  bool empty() const noexcept { return components_.empty(); }
  bool is_whole_space() const {
    return std::any_of(components_.begin(), components_.end(),
                       [](const Component& c) { return c.ideal.is_zero(); });
  }

  /// Union built from principal components given as expressions.
  static VarietyUnion of(const VariableContext& ambient, const std::vector<std::vector<Polynomial>>& comps,
                         Source s = Source::user) {
    VarietyUnion u(ambient);
    for (const auto& gens : comps) u.add(s, Ideal(ambient, gens));
    return u;
  }

  /// Generators of the product ideal: one generator from each component.
  std::vector<Polynomial> product_generators() const {
    std::vector<Polynomial> acc{Polynomial::constant(ambient_, Rational(1))};
    for (const auto& c : components_) {
      std::vector<Polynomial> next;
      for (const auto& a : acc)
        for (const auto& g : c.ideal.generators()) next.push_back((a * g).normalized());
      acc = std::move(next);
      if (acc.empty()) break;
    }
    std::sort(acc.begin(), acc.end(), [](const Polynomial& a, const Polynomial& b) {
      return a.to_string() < b.to_string();
    });
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    return acc;
  }

 private:
  VariableContext ambient_;
  std::vector<Component> components_;
};

enum class Verdict { equal, a_strict_subset, b_strict_subset, incomparable };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::equal: return "EQUAL";
    case Verdict::a_strict_subset: return "A_STRICT_SUBSET";
    case Verdict::b_strict_subset: return "B_STRICT_SUBSET";
    case Verdict::incomparable: return "INCOMPARABLE";
  }
  return "INCOMPARABLE";
}

/// A component of one side whose variety is not covered by the other side,
/// and a product generator of the other side that does not vanish on it.
struct Witness {
  char side = 'A';
  Component component;
  Polynomial generator;
};

struct Comparison {
  Verdict verdict = Verdict::equal;
  std::vector<Witness> witnesses;
};

/// For a principal component <h>, drops the factors of h whose hypersurface
/// lies inside V(products): an irreducible q has V(q) in V(Y) iff q divides
/// every product generator, i.e. their gcd.
inline Component uncovered_part(const Component& c, const std::vector<Polynomial>& products) {
  if (c.ideal.size() != 1 || products.empty()) return c;
  Polynomial G = products.front();
  for (std::size_t k = 1; k < products.size() && !G.is_constant(); ++k) G = gcd(G, products[k]);
  Polynomial h = squarefree_part(c.ideal.generators().front());
  auto q = exact_divide(h, gcd(h, G));
  if (!q || q->is_constant()) return c;
  return Component{c.source, Ideal(c.ideal.context(), {q->normalized()})};
}

/// Witness against V(X) being contained in V(Y), if any.
inline std::optional<Witness> containment_witness(const VarietyUnion& X, const VarietyUnion& Y, char side,
                                                  const GroebnerLimits& limits = {}) {
  if (!(X.ambient() == Y.ambient())) throw AmbientMismatch();
  const auto products = Y.product_generators();
  for (const auto& c : X.components())
    for (const auto& g : products)
      if (!radical_member(g, c.ideal, limits)) return Witness{side, uncovered_part(c, products), g};
  return std::nullopt;
}

/// Compares V(A) and V(B) over the complex numbers by radical membership.
inline Comparison variety_equal(const VarietyUnion& A, const VarietyUnion& B, const GroebnerLimits& limits = {}) {
  if (!(A.ambient() == B.ambient())) throw AmbientMismatch();
  Comparison out;
  auto wa = containment_witness(A, B, 'A', limits);  // V(A) in V(B)?
  auto wb = containment_witness(B, A, 'B', limits);  // V(B) in V(A)?
  if (wa) out.witnesses.push_back(*wa);
  if (wb) out.witnesses.push_back(*wb);
  if (!wa && !wb) out.verdict = Verdict::equal;
  else if (!wa) out.verdict = Verdict::a_strict_subset;
  else if (!wb) out.verdict = Verdict::b_strict_subset;
  else out.verdict = Verdict::incomparable;
  return out;
}

/// det(d f_i / d x_j) over the unknowns, by cofactor expansion memoized on
/// the set of remaining columns.
inline Polynomial jacobian_determinant(const ParametricSystem& sys) {
  const auto xs = sys.unknown_indices();
  const std::size_t n = xs.size();
  if (sys.equations().size() != n) throw NotSquare(sys.equations().size(), n);
  if (n > 20) throw Error("jacobian_determinant: too many unknowns");
  const auto& ctx = sys.context();
  std::vector<std::vector<Polynomial>> J(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) J[i].push_back(sys.equations()[i].derivative(xs[j]));
  std::map<std::uint32_t, Polynomial> memo;
  // det of rows [n - popcount(cols), n) restricted to column set `cols`
  auto det = [&](auto&& self, std::uint32_t cols) -> Polynomial {
    if (cols == 0) return Polynomial::constant(ctx, Rational(1));
    if (auto it = memo.find(cols); it != memo.end()) return it->second;
    const std::size_t row = n - static_cast<std::size_t>(__builtin_popcount(cols));
    Polynomial acc(ctx);
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (!(cols & (1u << j))) continue;
      if (!J[row][j].is_zero()) {
        Polynomial term = J[row][j] * self(self, cols & ~(1u << j));
        if (sign > 0) acc += term;
        else acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return det(det, n == 0 ? 0u : ((1u << n) - 1));
}

/// Product of the inequations (1 when there are none).
inline Polynomial inequation_product(const ParametricSystem& sys) {
  Polynomial g = Polynomial::constant(sys.context(), Rational(1));
  for (const auto& q : sys.inequations()) g *= q;
  return g;
}

/// Sum of the total degrees of the inequations.
inline unsigned long inequation_degree(const ParametricSystem& sys) {
  unsigned long d = 0;
  for (const auto& q : sys.inequations()) d += q.total_degree().value();
  return d;
}

}  // namespace discvar
