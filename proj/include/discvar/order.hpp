#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "discvar/error.hpp"
#include "discvar/monomial.hpp"

namespace discvar {

enum class OrderKind { lex, grevlex, block };
enum class InnerOrder { lex, grevlex };

struct OrderBlock {
  std::vector<std::size_t> vars;  // variable indices, most significant first
  InnerOrder inner = InnerOrder::grevlex;
  friend bool operator==(const OrderBlock&, const OrderBlock&) = default;
};

/// Monomial order over a fixed number of variables.
///
/// Every order is stored as a list of blocks; lex and grevlex are the
/// single-block cases over the context order (variable 0 largest). Block
/// orders compare block by block, so a monomial involving an earlier block
/// dominates every monomial supported on later blocks only.
///
/// Each order also has a linear integer encoding ("key") of length nvars:
/// comparing keys lexicographically is the same as comparing monomials, and
/// key(a*b) = key(a) + key(b). The Groebner engine works on keys directly.
class MonomialOrder {
 public:
  static MonomialOrder lex(std::size_t nvars) {
    return MonomialOrder(OrderKind::lex, nvars, {OrderBlock{iota(nvars), InnerOrder::lex}});
  }

  static MonomialOrder grevlex(std::size_t nvars) {
    return MonomialOrder(OrderKind::grevlex, nvars, {OrderBlock{iota(nvars), InnerOrder::grevlex}});
  }

  static MonomialOrder block(std::size_t nvars, std::vector<OrderBlock> blocks) {
    std::vector<OrderBlock> nonempty;
    std::vector<bool> seen(nvars, false);
    for (auto& b : blocks) {
      for (auto v : b.vars) {
        if (v >= nvars || seen[v]) throw Error("block order is not a partition of the variables");
        seen[v] = true;
      }
      if (!b.vars.empty()) nonempty.push_back(std::move(b));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end())
      throw Error("block order does not cover every variable");
    return MonomialOrder(OrderKind::block, nvars, std::move(nonempty));
  }

  /// Two grevlex blocks: `eliminated` > `kept`.
  static MonomialOrder elimination(std::size_t nvars, std::vector<std::size_t> eliminated,
                                   std::vector<std::size_t> kept) {
    return block(nvars, {OrderBlock{std::move(eliminated)}, OrderBlock{std::move(kept)}});
  }

  OrderKind kind() const noexcept { return kind_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<OrderBlock>& blocks() const noexcept { return blocks_; }

  /// Writes the order key of `exps` (length nvars) into `key` (length nvars).
  template <class Exp, class Key>
  void encode(const Exp* exps, Key* key) const {
    std::size_t k = 0;
    for (const auto& b : blocks_) {
      if (b.inner == InnerOrder::lex) {
        for (auto v : b.vars) key[k++] = static_cast<Key>(exps[v]);
      } else {
        Key deg = 0;
        for (auto v : b.vars) deg += static_cast<Key>(exps[v]);
        key[k++] = deg;
        for (std::size_t i = b.vars.size(); i-- > 1;) key[k++] = -static_cast<Key>(exps[b.vars[i]]);
      }
    }
  }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (a.size() != nvars_ || b.size() != nvars_) throw ContextMismatch();
    std::vector<std::int64_t> ka(nvars_), kb(nvars_);
    encode(a.exponents().data(), ka.data());
    encode(b.exponents().data(), kb.data());
    for (std::size_t i = 0; i < nvars_; ++i)
      if (ka[i] != kb[i]) return ka[i] < kb[i] ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  std::string describe() const {
    std::string s;
    switch (kind_) {
      case OrderKind::lex: return "lex";
      case OrderKind::grevlex: return "grevlex";
      case OrderKind::block: break;
    }
    s = "block";
    for (const auto& b : blocks_) {
      s += b.inner == InnerOrder::lex ? "[lex:" : "[grevlex:";
      for (std::size_t i = 0; i < b.vars.size(); ++i) s += (i ? "," : "") + std::to_string(b.vars[i]);
      s += "]";
    }
    return s;
  }

  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

 private:
  MonomialOrder(OrderKind k, std::size_t n, std::vector<OrderBlock> b)
      : kind_(k), nvars_(n), blocks_(std::move(b)) {}

  static std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = i;
    return v;
  }

  OrderKind kind_;
  std::size_t nvars_;
  std::vector<OrderBlock> blocks_;
};

}  // namespace discvar
