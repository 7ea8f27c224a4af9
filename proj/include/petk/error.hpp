#pragma once

#include <stdexcept>
#include <string>

namespace petk {

/// Invalid encoder spec, sizing, or parameter. CLI maps this to a usage error.
class SpecError : public std::invalid_argument {
 public:
  explicit SpecError(const std::string& what) : std::invalid_argument(what) {}
};

/// Structurally malformed netlist (cycle, undriven net, arity mismatch).
class NetlistError : public std::runtime_error {
 public:
  explicit NetlistError(const std::string& what) : std::runtime_error(what) {}
};

/// File or schema problem while reading/writing external formats.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace petk
