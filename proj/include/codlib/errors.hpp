#pragma once

#include <stdexcept>
#include <string>

namespace codlib {

/// Machine-readable failure categories; the CLI maps these to the
/// `{"error": <name>, "detail": <text>}` diagnostic on stderr.
enum class Errc {
  invalid_argument,
  not_admissible,
  verification_failed,
  intertwiner_singular,
  residual_too_large,
  non_integral_multiplicity,
  malformed_design,
  witness_mismatch,
  parse_error,
  io_error,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::not_admissible: return "NotAdmissible";
    case Errc::verification_failed: return "VerificationFailed";
    case Errc::intertwiner_singular: return "IntertwinerSingular";
    case Errc::residual_too_large: return "ResidualTooLarge";
    case Errc::non_integral_multiplicity: return "NonIntegralMultiplicity";
    case Errc::malformed_design: return "MalformedDesign";
    case Errc::witness_mismatch: return "WitnessMismatch";
    case Errc::parse_error: return "ParseError";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace codlib
