#pragma once

#include <stdexcept>
#include <string>

namespace wrank {

enum class ErrorCode {
  InvalidInput = 1,
  Domain = 2,
  Unsupported = 3,
  NotPositiveDefinite = 4,
  Numerical = 5,
  Config = 6,
  Io = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorCode::InvalidInput, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::Domain, w) {}
};
struct Unsupported : Error {
  explicit Unsupported(const std::string& w) : Error(ErrorCode::Unsupported, w) {}
};
struct NotPositiveDefinite : Error {
  explicit NotPositiveDefinite(const std::string& w)
      : Error(ErrorCode::NotPositiveDefinite, w) {}
};
struct NumericalError : Error {
  explicit NumericalError(const std::string& w) : Error(ErrorCode::Numerical, w) {}
};
struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorCode::Config, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorCode::Io, w) {}
};

}  // namespace wrank
