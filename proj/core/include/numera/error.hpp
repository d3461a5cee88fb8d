#pragma once

#include <stdexcept>
#include <string>

namespace numera {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The recurrence does not define a numeration system (non-positive or
/// non-increasing terms, U_0 != 1, or an alphabet bound that is too small).
class InvalidSystem : public Error {
 public:
  using Error::Error;
};

/// Two automata (or an automaton and a system) disagree on the digit alphabet.
class AlphabetMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed user input: unknown preset, unreadable file, bad JSON, bad directive.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed. Always a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace numera
