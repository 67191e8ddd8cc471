#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "discvar/error.hpp"

namespace discvar {

enum class Role { parameter, unknown, auxiliary };

/// Ordered, named set of variables shared by every polynomial built over it.
///
/// Variables are laid out as parameters, then unknowns, then auxiliaries.
/// Contexts are immutable; derived contexts (extended or restricted) are new
/// values. Two contexts compare equal when they list the same names with the
/// same roles in the same order.
class VariableContext {
 public:
  VariableContext() : data_(std::make_shared<Data>()) {}

  explicit VariableContext(std::vector<std::string> names)
      : VariableContext(std::move(names), {}, {}) {}

  VariableContext(std::vector<std::string> parameters, std::vector<std::string> unknowns,
                  std::vector<std::string> auxiliaries = {}) {
    auto d = std::make_shared<Data>();
    for (auto& n : parameters) d->push(std::move(n), Role::parameter);
    for (auto& n : unknowns) d->push(std::move(n), Role::unknown);
    for (auto& n : auxiliaries) d->push(std::move(n), Role::auxiliary);
    data_ = std::move(d);
  }

  std::size_t size() const noexcept { return data_->names.size(); }
  const std::string& name(std::size_t i) const { return data_->names.at(i); }
  const std::vector<std::string>& names() const noexcept { return data_->names; }
  Role role(std::size_t i) const { return data_->roles.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = std::find(data_->names.begin(), data_->names.end(), name);
    if (it == data_->names.end()) return std::nullopt;
    return static_cast<std::size_t>(it - data_->names.begin());
  }

  std::size_t index_of(const std::string& name) const {
    auto i = find(name);
    if (!i) throw UnknownVariable(name);
    return *i;
  }

  bool contains(const std::string& name) const { return find(name).has_value(); }

  std::vector<std::size_t> indices_with_role(Role r) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (data_->roles[i] == r) out.push_back(i);
    return out;
  }
  std::vector<std::string> names_with_role(Role r) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < size(); ++i)
      if (data_->roles[i] == r) out.push_back(data_->names[i]);
    return out;
  }
  std::vector<std::string> parameters() const { return names_with_role(Role::parameter); }
  std::vector<std::string> unknowns() const { return names_with_role(Role::unknown); }

  /// Name derived from `base` that is not used in this context: `base`
  /// itself, else `base_1`, `base_2`, ...
  std::string fresh_name(const std::string& base) const {
    if (!contains(base)) return base;
    for (std::size_t k = 1;; ++k) {
      std::string candidate = base + "_" + std::to_string(k);
      if (!contains(candidate)) return candidate;
    }
  }

  /// Context with one more auxiliary variable appended. Throws on collision.
  VariableContext with_auxiliary(const std::string& name) const {
    if (contains(name)) throw VariableCollision(name);
    auto d = std::make_shared<Data>(*data_);
    d->push(name, Role::auxiliary);
    return VariableContext(std::move(d));
  }

  /// Context containing exactly `names`, in that order, with roles kept.
  VariableContext restricted_to(const std::vector<std::string>& names) const {
    auto d = std::make_shared<Data>();
    for (const auto& n : names) d->push(n, role(index_of(n)));
    return VariableContext(std::move(d));
  }

  /// Context restricted to the parameter block.
  VariableContext parameter_space() const { return restricted_to(parameters()); }

  bool same_as(const VariableContext& o) const noexcept { return data_ == o.data_; }

  friend bool operator==(const VariableContext& a, const VariableContext& b) {
    return a.data_ == b.data_ || (a.data_->names == b.data_->names && a.data_->roles == b.data_->roles);
  }

 private:
  struct Data {
    std::vector<std::string> names;
    std::vector<Role> roles;
    void push(std::string n, Role r) {
      if (n.empty()) throw Error("empty variable name");
      if (std::find(names.begin(), names.end(), n) != names.end()) throw VariableCollision(n);
      names.push_back(std::move(n));
      roles.push_back(r);
    }
  };

  explicit VariableContext(std::shared_ptr<const Data> d) : data_(std::move(d)) {}

  std::shared_ptr<const Data> data_;
};

}  // namespace discvar
