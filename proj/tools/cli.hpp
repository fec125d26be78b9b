#pragma once

namespace ncqm::cli {

// Exit codes: 0 success, 1 usage or domain error, 2 invariant violated.
int run(int argc, char** argv);

}  // namespace ncqm::cli
