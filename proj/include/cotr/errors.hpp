#pragma once

#include <stdexcept>
#include <string>

namespace cotr {

// Exit-code families used by the CLI.
enum class ErrorKind { Precondition = 1, Input = 2, Invariant = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& tag, const std::string& what)
      : std::runtime_error(tag + ": " + what), kind_(kind), tag_(tag) {}
  ErrorKind kind() const { return kind_; }
  const std::string& tag() const { return tag_; }

 private:
  ErrorKind kind_;
  std::string tag_;
};

#define COTR_ERROR(Name, Kind)                                   \
  struct Name : Error {                                          \
    explicit Name(const std::string& w) : Error(Kind, #Name, w) {} \
  };

COTR_ERROR(DimensionMismatch, ErrorKind::Input)
COTR_ERROR(SingularMatrix, ErrorKind::Precondition)
COTR_ERROR(NotFiniteDimensional, ErrorKind::Input)
COTR_ERROR(UnsupportedPresentation, ErrorKind::Input)
COTR_ERROR(InvalidInput, ErrorKind::Input)
COTR_ERROR(SearchExhausted, ErrorKind::Precondition)
COTR_ERROR(EnumerationTooLarge, ErrorKind::Precondition)
COTR_ERROR(PreconditionNotCertified, ErrorKind::Precondition)
COTR_ERROR(HypothesisFailed, ErrorKind::Precondition)
COTR_ERROR(NotInjectiveComplex, ErrorKind::Precondition)
COTR_ERROR(BoundExceeded, ErrorKind::Precondition)
COTR_ERROR(LiftingFailed, ErrorKind::Invariant)
COTR_ERROR(InvariantViolation, ErrorKind::Invariant)

#undef COTR_ERROR

}  // namespace cotr
