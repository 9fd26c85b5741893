#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cadence {

enum class Errc {
  EmptyInput,
  EmptyGrammar,
  ForwardReference,
  LengthOverflow,
  BadCharacter,
  ParseError,
  TooLong,
  TooLarge,
  OutOfRange,
  AlphabetMismatch,
  PreconditionViolated,
  IntervalError,
  HypothesisViolated,
  Unsupported,
  InternalError,
};

inline std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::EmptyGrammar: return "EmptyGrammar";
    case Errc::ForwardReference: return "ForwardReference";
    case Errc::LengthOverflow: return "LengthOverflow";
    case Errc::BadCharacter: return "BadCharacter";
    case Errc::ParseError: return "ParseError";
    case Errc::TooLong: return "TooLong";
    case Errc::TooLarge: return "TooLarge";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::IntervalError: return "IntervalError";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::Unsupported: return "Unsupported";
    case Errc::InternalError: return "InternalError";
  }
  return "Unknown";
}

// All library failures are reported through this type. `value` carries a
// code-specific number (the offending rule index, the actual length, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::uint64_t value = 0)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        value_(value) {}

  Errc code() const noexcept { return code_; }
  std::uint64_t value() const noexcept { return value_; }

 private:
  Errc code_;
  std::uint64_t value_;
};

}  // namespace cadence
