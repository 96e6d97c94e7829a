#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dualcx {

// Base for every error raised by the library. `code` is a short machine
// readable tag (an axiom name for validation failures).
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Malformed or inconsistent input data.
class DescriptorError : public Error {
 public:
  using Error::Error;
};

// Operation applied outside its domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

class CompositionError : public DomainError {
 public:
  explicit CompositionError(const std::string& what)
      : DomainError("Composition", what) {}
};

struct ValidationIssue {
  std::string code;
  std::string message;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

}  // namespace dualcx
