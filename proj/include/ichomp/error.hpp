#pragma once

#include <stdexcept>
#include <string>

namespace ichomp {

enum class ErrorCode {
  NotPrime,
  ModulusMismatch,
  DivisionByZero,
  Parse,
  UnknownVariable,
  RingMismatch,
  BudgetExceeded,
  InfiniteRank,
  NotLocal,
  QuotientIsZeroRing,
  IllegalMove,
  GameOver,
  CharMismatch,
  UnknownRing,
  InvalidArgument,
  Io,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "not_prime";
    case ErrorCode::ModulusMismatch: return "modulus_mismatch";
    case ErrorCode::DivisionByZero: return "division_by_zero";
    case ErrorCode::Parse: return "parse_error";
    case ErrorCode::UnknownVariable: return "unknown_variable";
    case ErrorCode::RingMismatch: return "ring_mismatch";
    case ErrorCode::BudgetExceeded: return "budget_exceeded";
    case ErrorCode::InfiniteRank: return "infinite_rank";
    case ErrorCode::NotLocal: return "not_local";
    case ErrorCode::QuotientIsZeroRing: return "quotient_is_zero_ring";
    case ErrorCode::IllegalMove: return "illegal_move";
    case ErrorCode::GameOver: return "game_over";
    case ErrorCode::CharMismatch: return "char_mismatch";
    case ErrorCode::UnknownRing: return "unknown_ring";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::Io: return "io_error";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failures also record the byte offset in the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error(ErrorCode::Parse,
              message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ichomp
