#pragma once

#include <stdexcept>
#include <string>

namespace llmfp {

// Malformed input: unparseable files, schema mismatches. CLI exit code 2.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntactically valid input that violates a domain invariant. CLI exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Broken internal invariant; indicates a bug in this library. CLI exit code 3.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace llmfp
