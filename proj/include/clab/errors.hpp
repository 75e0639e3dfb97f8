#pragma once

#include <stdexcept>
#include <string>

namespace clab {

/// Thrown when a request would exceed a configured resource guard
/// (sieve size, subset-enumeration count, eigensolver dimension).
class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when a certified truncation tail is too large for the
/// requested evaluation to be meaningful at the given cut.
class insufficient_cut_error : public std::runtime_error {
public:
  explicit insufficient_cut_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace clab
