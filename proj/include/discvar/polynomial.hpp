#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "discvar/context.hpp"
#include "discvar/error.hpp"
#include "discvar/monomial.hpp"
#include "discvar/order.hpp"
#include "discvar/rational.hpp"

namespace discvar {

/// Degree of a polynomial; the zero polynomial has degree "minus infinity".
class Degree {
 public:
  static Degree minus_infinity() { return Degree(); }
  static Degree of(unsigned long d) { return Degree(d); }

  bool is_minus_infinity() const noexcept { return minus_inf_; }
  unsigned long value() const {
    if (minus_inf_) throw Error("degree of the zero polynomial has no value");
    return value_;
  }

  friend bool operator==(const Degree&, const Degree&) = default;
  friend std::strong_ordering operator<=>(const Degree& a, const Degree& b) {
    if (a.minus_inf_ || b.minus_inf_) return b.minus_inf_ <=> a.minus_inf_;
    return a.value_ <=> b.value_;
  }

 private:
  Degree() = default;
  explicit Degree(unsigned long d) : minus_inf_(false), value_(d) {}
  bool minus_inf_ = true;
  unsigned long value_ = 0;
};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms live in a map keyed by exponent vector; zero coefficients are never
/// stored, so equal polynomials have identical term maps.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(VariableContext ctx) : ctx_(std::move(ctx)) {}
  Polynomial(VariableContext ctx, Terms terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (it->first.size() != ctx_.size()) throw ContextMismatch();
      it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
    }
  }

  static Polynomial constant(const VariableContext& ctx, const Rational& c) {
    Polynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(Monomial(ctx.size()), c);
    return p;
  }
  static Polynomial variable(const VariableContext& ctx, std::size_t index) {
    if (index >= ctx.size()) throw Error("variable index out of range");
    Polynomial p(ctx);
    p.terms_.emplace(Monomial::variable(ctx.size(), index), Rational(1));
    return p;
  }
  static Polynomial variable(const VariableContext& ctx, const std::string& name) {
    return variable(ctx, ctx.index_of(name));
  }
  static Polynomial term(const VariableContext& ctx, const Monomial& m, const Rational& c) {
    if (m.size() != ctx.size()) throw ContextMismatch();
    Polynomial p(ctx);
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
  }

  const VariableContext& context() const noexcept { return ctx_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  /// Constant term.
  Rational constant_term() const {
    if (terms_.empty()) return Rational(0);
    const auto& [m, c] = *terms_.begin();  // the constant monomial sorts first
    return m.is_one() ? c : Rational(0);
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Degree total_degree() const {
    if (terms_.empty()) return Degree::minus_infinity();
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
    return Degree::of(d);
  }

  Degree degree_in(const std::vector<std::size_t>& vars) const {
    if (terms_.empty()) return Degree::minus_infinity();
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned long s = 0;
      for (auto v : vars) s += m[v];
      d = std::max(d, s);
    }
    return Degree::of(d);
  }
  Degree degree_in(std::size_t var) const { return degree_in(std::vector<std::size_t>{var}); }
  Degree degree_in(const std::vector<std::string>& names) const {
    std::vector<std::size_t> idx;
    for (const auto& n : names) idx.push_back(ctx_.index_of(n));
    return degree_in(idx);
  }

  /// Indices of the variables occurring in some term.
  std::vector<std::size_t> support() const {
    std::vector<bool> used(ctx_.size(), false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) used[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) out.push_back(i);
    return out;
  }

  bool supported_on(const std::vector<std::size_t>& vars) const {
    std::vector<bool> allowed(ctx_.size(), false);
    for (auto v : vars) allowed.at(v) = true;
    for (auto v : support())
      if (!allowed[v]) return false;
    return true;
  }

  bool is_homogeneous_in(const std::vector<std::size_t>& vars) const {
    bool first = true;
    unsigned long d = 0;
    for (const auto& [m, c] : terms_) {
      unsigned long s = 0;
      for (auto v : vars) s += m[v];
      if (first) d = s, first = false;
      else if (s != d) return false;
    }
    return true;
  }

  /// Terms sorted from largest to smallest under `ord`.
  std::vector<std::pair<Monomial, Rational>> sorted_terms(const MonomialOrder& ord) const {
    check_order(ord);
    std::vector<std::pair<Monomial, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [&](const auto& a, const auto& b) { return ord.compare(a.first, b.first) > 0; });
    return out;
  }

  std::pair<Monomial, Rational> leading_term(const MonomialOrder& ord) const {
    if (terms_.empty()) throw ZeroPolynomial("leading_term");
    check_order(ord);
    auto best = terms_.begin();
    for (auto it = std::next(best); it != terms_.end(); ++it)
      if (ord.compare(it->first, best->first) > 0) best = it;
    return *best;
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Polynomial& operator*=(const Rational& s) {
    if (s.is_zero()) terms_.clear();
    else
      for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial r(a.ctx_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial pow(unsigned long e) const {
    Polynomial result = constant(ctx_, Rational(1));
    Polynomial base = *this;
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  Polynomial mul_monomial(const Monomial& m, const Rational& c) const {
    if (m.size() != ctx_.size()) throw ContextMismatch();
    Polynomial r(ctx_);
    if (c.is_zero()) return r;
    for (const auto& [t, k] : terms_) r.terms_.emplace_hint(r.terms_.end(), t * m, k * c);
    return r;
  }

  Polynomial derivative(std::size_t var) const {
    if (var >= ctx_.size()) throw Error("variable index out of range");
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d(m);
      d[var] -= 1;
      r.add_term(d, c * Rational(static_cast<long>(m[var])));
    }
    return r;
  }
  Polynomial derivative(const std::string& name) const { return derivative(ctx_.index_of(name)); }

  /// Substitutes `var := value`; the variable stays in the context.
  Polynomial substitute(std::size_t var, const Rational& value) const {
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
      Monomial d(m);
      Rational k = c;
      if (d[var]) {
        mpq_class pw;
        mpz_pow_ui(pw.get_num_mpz_t(), value.value().get_num_mpz_t(), d[var]);
        mpz_pow_ui(pw.get_den_mpz_t(), value.value().get_den_mpz_t(), d[var]);
        k *= Rational(pw);
        d[var] = 0;
      }
      r.add_term(d, k);
    }
    return r;
  }

  /// Substitutes `var := q` where q is a polynomial in the same context.
  Polynomial substitute(std::size_t var, const Polynomial& q) const {
    check(q);
    std::map<Monomial::exponent_type, Polynomial> powers;
    Polynomial r(ctx_);
    for (const auto& [m, c] : terms_) {
      Monomial d(m);
      auto e = d[var];
      d[var] = 0;
      if (e == 0) {
        r.add_term(d, c);
        continue;
      }
      auto it = powers.find(e);
      if (it == powers.end()) it = powers.emplace(e, q.pow(e)).first;
      r += it->second.mul_monomial(d, c);
    }
    return r;
  }

  /// Same polynomial expressed over `target`, matching variables by name.
  Polynomial embed(const VariableContext& target) const {
    if (target == ctx_) return Polynomial(target, terms_);
    std::vector<std::size_t> map(ctx_.size(), 0);
    std::vector<bool> used(ctx_.size(), false);
    for (auto v : support()) used[v] = true;
    for (std::size_t i = 0; i < ctx_.size(); ++i)
      if (used[i]) map[i] = target.index_of(ctx_.name(i));
    Polynomial r(target);
    for (const auto& [m, c] : terms_) {
      Monomial t(target.size());
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i]) t[map[i]] = m[i];
      r.terms_.emplace(std::move(t), c);
    }
    return r;
  }

  /// Integer coefficients with content 1 and positive leading coefficient
  /// under `ord`. The zero polynomial is returned unchanged.
  Polynomial normalized(const MonomialOrder& ord) const {
    if (terms_.empty()) return *this;
    Polynomial r = primitive();
    if (r.leading_term(ord).second.sign() < 0) r = -r;
    return r;
  }
  /// Normalized under grevlex on the context.
  Polynomial normalized() const { return normalized(MonomialOrder::grevlex(ctx_.size())); }

  /// Scalar multiple with coprime integer coefficients (sign unchanged).
  Polynomial primitive() const {
    if (terms_.empty()) return *this;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& [m, c] : terms_) {
      den_lcm = lcm(den_lcm, c.denominator());
      num_gcd = gcd(num_gcd, c.numerator());
    }
    Polynomial r(*this);
    r *= Rational(den_lcm, num_gcd);
    return r;
  }

  /// Monic under `ord`.
  Polynomial monic(const MonomialOrder& ord) const {
    if (terms_.empty()) return *this;
    Polynomial r(*this);
    r *= Rational(1) / leading_term(ord).second;
    return r;
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != ctx_.size()) throw ContextMismatch();
    Rational sum(0);
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (Monomial::exponent_type k = 0; k < m[i]; ++k) t *= point[i];
      sum += t;
    }
    return sum;
  }

  /// Text in the polynomial grammar, terms in decreasing grevlex order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    auto ord = MonomialOrder::grevlex(ctx_.size());
    std::string s;
    bool first = true;
    for (const auto& [m, c] : sorted_terms(ord)) {
      Rational a = c.abs();
      if (first) s += c.sign() < 0 ? "-" : "";
      else s += c.sign() < 0 ? " - " : " + ";
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += ctx_.name(i);
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) s += a.to_string();
      else if (a.is_one()) s += mono;
      else s += a.to_string() + "*" + mono;
    }
    return s;
  }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.to_string(); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

 private:
  void check(const Polynomial& o) const {
    if (!(ctx_ == o.ctx_)) throw ContextMismatch();
  }
  void check_order(const MonomialOrder& ord) const {
    if (ord.nvars() != ctx_.size()) throw ContextMismatch();
  }

  VariableContext ctx_;
  Terms terms_;
};

}  // namespace discvar
