#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tspgap {

/// Malformed instance text. `location` names the line or JSON field.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string location, const std::string& what)
      : std::runtime_error(location + ": " + what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Well-formed input that violates a data invariant (asymmetry, bad cost, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed. Always a bug in a construction upstream.
class InvariantError : public std::runtime_error {
 public:
  InvariantError(std::string stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

/// The graph has no perfect matching. `witness` lists the vertices left
/// exposed by a maximum-cardinality matching.
class NoPerfectMatchingError : public std::runtime_error {
 public:
  NoPerfectMatchingError(const std::string& what, std::vector<int> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::vector<int>& witness() const { return witness_; }

 private:
  std::vector<int> witness_;
};

}  // namespace tspgap
