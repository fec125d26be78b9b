#pragma once

#include <stdexcept>
#include <string>

namespace ncqm {

// Errors carry a module-qualified code such as "operators.GridMismatch".
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& kind, const std::string& message);
  const std::string& code() const noexcept { return code_; }
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string code_;
  std::string kind_;
};

#define NCQM_ERROR(Name)                                                   \
  class Name : public Error {                                              \
   public:                                                                 \
    Name(const std::string& module, const std::string& message)            \
        : Error(module, #Name, message) {}                                 \
  };

NCQM_ERROR(DomainError)
NCQM_ERROR(UnsupportedSymbol)
NCQM_ERROR(GridError)
NCQM_ERROR(GridMismatch)
NCQM_ERROR(ResolutionError)
NCQM_ERROR(NotNormalized)
NCQM_ERROR(NoConvergence)
NCQM_ERROR(DegenerateCase)
NCQM_ERROR(CoverageError)
NCQM_ERROR(EmptyWindow)
NCQM_ERROR(NoBracket)
NCQM_ERROR(StepFailure)
NCQM_ERROR(TooFewExtrema)

#undef NCQM_ERROR

}  // namespace ncqm
