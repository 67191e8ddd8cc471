#pragma once

#include <string>
#include <utility>
#include <vector>

#include "discvar/context.hpp"
#include "discvar/error.hpp"
#include "discvar/parser.hpp"
#include "discvar/polynomial.hpp"

namespace discvar {

/// Square parametric system f_1 = ... = f_n = 0, g_1 != 0, ..., g_r != 0
/// over Q[parameters][unknowns].
class ParametricSystem {
 public:
  ParametricSystem(VariableContext ctx, std::vector<Polynomial> equations,
                   std::vector<Polynomial> inequations = {})
      : ctx_(std::move(ctx)), eqs_(std::move(equations)), ineqs_(std::move(inequations)) {
    const auto unknowns = ctx_.indices_with_role(Role::unknown);
    if (eqs_.size() != unknowns.size()) throw NotSquare(eqs_.size(), unknowns.size());
    if (!ctx_.indices_with_role(Role::auxiliary).empty())
      throw Error("system context must not contain auxiliary variables");
    for (const auto* list : {&eqs_, &ineqs_})
      for (const auto& p : *list) {
        if (!(p.context() == ctx_)) throw ContextMismatch();
        if (p.is_zero()) throw ZeroPolynomial("parametric system");
      }
  }

  static ParametricSystem parse(const std::vector<std::string>& parameters,
                                const std::vector<std::string>& unknowns,
                                const std::vector<std::string>& equations,
                                const std::vector<std::string>& inequations = {}) {
    VariableContext ctx(parameters, unknowns);
    std::vector<Polynomial> eqs, ineqs;
    for (const auto& e : equations) eqs.push_back(parse_polynomial(e, ctx));
    for (const auto& g : inequations) ineqs.push_back(parse_polynomial(g, ctx));
    return ParametricSystem(ctx, std::move(eqs), std::move(ineqs));
  }

  const VariableContext& context() const noexcept { return ctx_; }
  const std::vector<Polynomial>& equations() const noexcept { return eqs_; }
  const std::vector<Polynomial>& inequations() const noexcept { return ineqs_; }
  std::vector<std::string> parameters() const { return ctx_.parameters(); }
  std::vector<std::string> unknowns() const { return ctx_.unknowns(); }
  std::vector<std::size_t> parameter_indices() const { return ctx_.indices_with_role(Role::parameter); }
  std::vector<std::size_t> unknown_indices() const { return ctx_.indices_with_role(Role::unknown); }

 private:
  VariableContext ctx_;
  std::vector<Polynomial> eqs_;
  std::vector<Polynomial> ineqs_;
};

}  // namespace discvar
