#include "ncqm/error.hpp"

namespace ncqm {

Error::Error(const std::string& module, const std::string& kind, const std::string& message)
    : std::runtime_error(module + "." + kind + ": " + message), code_(module + "." + kind), kind_(kind) {}

}  // namespace ncqm
