#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "discvar/error.hpp"

namespace discvar {

/// Exponent vector indexed by the variables of a context.
class Monomial {
 public:
  using exponent_type = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<exponent_type> e) : e_(std::move(e)) {}
  Monomial(std::initializer_list<exponent_type> e) : e_(e) {}

  static Monomial variable(std::size_t nvars, std::size_t index, exponent_type power = 1) {
    Monomial m(nvars);
    m.e_.at(index) = power;
    return m;
  }

  std::size_t size() const noexcept { return e_.size(); }
  exponent_type operator[](std::size_t i) const { return e_[i]; }
  exponent_type& operator[](std::size_t i) { return e_[i]; }
  const std::vector<exponent_type>& exponents() const noexcept { return e_; }

  unsigned long degree() const {
    unsigned long d = 0;
    for (auto x : e_) d += x;
    return d;
  }

  bool is_one() const {
    return std::all_of(e_.begin(), e_.end(), [](exponent_type x) { return x == 0; });
  }

  bool divides(const Monomial& o) const {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// this / o; requires o | this.
  Monomial quotient(const Monomial& o) const {
    check(o);
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (o.e_[i] > e_[i]) throw Error("monomial quotient is not exact");
      r.e_[i] -= o.e_[i];
    }
    return r;
  }

  Monomial lcm(const Monomial& o) const {
    check(o);
    Monomial r(*this);
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = std::max(e_[i], o.e_[i]);
    return r;
  }

  bool coprime(const Monomial& o) const {
    check(o);
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] != 0 && o.e_[i] != 0) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    a.check(b);
    Monomial r(a);
    for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] += b.e_[i];
    return r;
  }

  // Storage order only (lexicographic on the raw exponent vector); monomial
  // orders used by algorithms live in order.hpp.
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  void check(const Monomial& o) const {
    if (o.e_.size() != e_.size()) throw ContextMismatch();
  }

  std::vector<exponent_type> e_;
};

}  // namespace discvar
