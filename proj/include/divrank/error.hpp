#pragma once

#include <stdexcept>
#include <string>

namespace divrank {

// Process exit codes used by the CLI; also carried by every library error.
enum class ErrorCode : int {
  kOk = 0,
  kParse = 2,
  kInfeasiblePartition = 3,
  kContractViolation = 4,
  kBudgetExceeded = 5,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  // line == 0 means "no line information" (e.g. a JSON document error).
  ParseError(const std::string& what, std::size_t line = 0)
      : Error(ErrorCode::kParse, line == 0 ? what
                                           : "line " + std::to_string(line) +
                                                 ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ContractViolation : public Error {
 public:
  explicit ContractViolation(const std::string& what)
      : Error(ErrorCode::kContractViolation, what) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const std::string& what)
      : Error(ErrorCode::kBudgetExceeded, what) {}
};

}  // namespace divrank
