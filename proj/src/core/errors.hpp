#pragma once

#include <stdexcept>
#include <string>

namespace cti {

// Error categories shared by the C++ core and the C API / CLI exit codes.
enum class ErrorKind : int {
  Convergence = 1,  // solver failed to converge
  Usage = 2,        // invalid argument combination
  Capacity = 3,     // request exceeds exact-integer / enumeration limits
  Domain = 4,       // input outside the mathematical domain of a formula
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error(ErrorKind::Capacity, what) {}
};

struct ConvergenceError : Error {
  explicit ConvergenceError(const std::string& what) : Error(ErrorKind::Convergence, what) {}
};

struct UsageError : Error {
  explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

}  // namespace cti
