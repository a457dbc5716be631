#ifndef CAYLEYJET_ERROR_HPP
#define CAYLEYJET_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace cayleyjet {

enum class ErrorKind {
  DegenerateInput,
  NotSmooth,
  NotSmoothAtVertex,
  EmptyChop,
  NonLatticeChop,
  NotDivisible,
  SliceDimensionMismatch,
  Inconclusive,
  ParseError,
  ValidationError,
  InvalidParams,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotSmooth: return "NotSmooth";
    case ErrorKind::NotSmoothAtVertex: return "NotSmoothAtVertex";
    case ErrorKind::EmptyChop: return "EmptyChop";
    case ErrorKind::NonLatticeChop: return "NonLatticeChop";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::SliceDimensionMismatch: return "SliceDimensionMismatch";
    case ErrorKind::Inconclusive: return "Inconclusive";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::InvalidParams: return "InvalidParams";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cayleyjet

#endif  // CAYLEYJET_ERROR_HPP
