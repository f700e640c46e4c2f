#pragma once

#include <stdexcept>
#include <string>

namespace coarsetree {

// malformed input: bad references, disconnected graphs, broken trees
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// an operation was called outside its domain
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// an enumeration cap was hit
class OverflowError : public std::runtime_error {
 public:
  explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kTol = 1e-9;

}  // namespace coarsetree
