#pragma once

#include <stdexcept>
#include <string>

namespace scv {

// Universe elements are small ordinals with a canonical order.
using Elem = int;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A symbol is missing from the vocabulary/structure or used at the wrong kind.
struct VocabError : Error {
  using Error::Error;
};

// An operation was called outside its contract.
struct PreconditionError : Error {
  using Error::Error;
};

// Malformed input text or structure file.
struct ParseError : Error {
  using Error::Error;
};

// A bounded search hit its resource cap before exhausting the space.
struct InconclusiveError : Error {
  using Error::Error;
};

// An internal cross-check failed (encoder vs. evaluator disagreement).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace scv
