#include <iostream>

#include "acceptance.hpp"

int main() {
  ncqm::acceptance::Options opts;
  opts.on_result = [](const ncqm::acceptance::CriterionResult& r) {
    std::cout << ncqm::acceptance::format_line(r) << std::endl;
  };
  const auto results = ncqm::acceptance::run(opts);
  const bool ok = ncqm::acceptance::all_gating_passed(results);
  std::cout << (ok ? "ALL GATING CRITERIA PASSED" : "SOME GATING CRITERIA FAILED") << std::endl;
  return ok ? 0 : 1;
}
