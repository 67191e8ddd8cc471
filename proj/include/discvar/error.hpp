#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace discvar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class NegativeExponent : public Error {
 public:
  explicit NegativeExponent(std::size_t offset)
      : Error("negative exponent at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ContextMismatch : public Error {
 public:
  ContextMismatch() : Error("operands live in different variable contexts") {}
};

class ZeroPolynomial : public Error {
 public:
  explicit ZeroPolynomial(const std::string& where) : Error(where + ": zero polynomial") {}
};

class MissingOrder : public Error {
 public:
  MissingOrder() : Error("ideal is not a Groebner basis (no basis order attached)") {}
};

class VariableCollision : public Error {
 public:
  explicit VariableCollision(const std::string& name)
      : Error("variable '" + name + "' already exists in context") {}
};

class NotSquare : public Error {
 public:
  NotSquare(std::size_t equations, std::size_t unknowns)
      : Error("system has " + std::to_string(equations) + " equations but " +
              std::to_string(unknowns) +
              " unknowns; only square systems (as many equations as unknowns) are supported") {}
};

class DegenerateForm : public Error {
 public:
  DegenerateForm() : Error("random linear form is identically zero") {}
};

class InstanceTooLarge : public Error {
 public:
  InstanceTooLarge(const std::string& what, std::size_t dimension)
      : Error(what + " (dimension " + std::to_string(dimension) + ")"), dimension_(dimension) {}
  std::size_t dimension() const noexcept { return dimension_; }

 private:
  std::size_t dimension_;
};

class PositiveDimensionalFiber : public Error {
 public:
  PositiveDimensionalFiber() : Error("fiber is positive dimensional (INFINITE solutions)") {}
};

class AmbientMismatch : public Error {
 public:
  AmbientMismatch() : Error("varieties live in different parameter spaces") {}
};

}  // namespace discvar
