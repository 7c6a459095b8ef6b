#pragma once

#include <stdexcept>
#include <string>

namespace kakeya {

// Error categories surfaced by the library. Input-shaped problems map to
// process exit code 2, verification failures (internal checkers tripping)
// to exit code 1.
enum class Errc {
  EmptySet,
  InvalidVertex,
  InvalidHeight,
  OracleTooLarge,
  InsufficientSplit,
  InvalidDilation,
  ApproximationFailure,
  ResolutionExceeded,
  InvalidCode,
  NotInK1,
  InvalidCandidate,
  InvalidInput,
  VerificationFailure,
  IoFailure,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptySet: return "EmptySet";
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::InvalidHeight: return "InvalidHeight";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::InsufficientSplit: return "InsufficientSplit";
    case Errc::InvalidDilation: return "InvalidDilation";
    case Errc::ApproximationFailure: return "ApproximationFailure";
    case Errc::ResolutionExceeded: return "ResolutionExceeded";
    case Errc::InvalidCode: return "InvalidCode";
    case Errc::NotInK1: return "NotInK1";
    case Errc::InvalidCandidate: return "InvalidCandidate";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::VerificationFailure: return "VerificationFailure";
    case Errc::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace kakeya
