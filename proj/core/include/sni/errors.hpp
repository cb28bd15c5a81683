#pragma once

#include <stdexcept>
#include <string>

namespace sni {

/// Thrown when an m x r matrix that must have full column rank turns out to
/// be numerically rank deficient (the iterate has left the rank-r manifold).
class RankDeficientError : public std::runtime_error {
 public:
  explicit RankDeficientError(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown when the r x r core factor is numerically singular and a formula
/// involving its inverse cannot be evaluated.
class SingularCoreError : public std::runtime_error {
 public:
  explicit SingularCoreError(const std::string& what) : std::runtime_error(what) {}
};

class EmptyTestSetError : public std::runtime_error {
 public:
  explicit EmptyTestSetError(const std::string& what) : std::runtime_error(what) {}
};

class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure; carries the 1-based line number when one applies.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_ = 0;
};

}  // namespace sni
