#ifndef WSPHERE_ERROR_HPP
#define WSPHERE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wsphere {

enum class ErrorKind {
  InvalidArgument,     // precondition violated by the caller
  Degenerate,          // input is a degenerate instance (constant curve, zero metric, ...)
  NotAPole,            // residue requested at a regular point
  AmbiguousPole,       // pole order cannot be decided at the working precision
  NoConvergence,       // iteration budget exhausted
  SingularJacobian,    // Newton system not solvable at the iterate
  CertificationFailed  // an identity that should hold does not
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Degenerate: return "degenerate input";
    case ErrorKind::NotAPole: return "not a pole";
    case ErrorKind::AmbiguousPole: return "ambiguous pole order";
    case ErrorKind::NoConvergence: return "no convergence";
    case ErrorKind::SingularJacobian: return "singular Jacobian";
    case ErrorKind::CertificationFailed: return "certification failed";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace wsphere

#endif  // WSPHERE_ERROR_HPP
