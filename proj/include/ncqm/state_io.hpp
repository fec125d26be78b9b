#pragma once

#include <string>

#include "ncqm/grid.hpp"

namespace ncqm {

// One JSON header line {"n1","n2","L1","L2"} followed by n1*n2 little-endian
// float64 (re, im) pairs in row-major order.
void write_state(const std::string& path, const WaveFunction& f);
WaveFunction read_state(const std::string& path);

}  // namespace ncqm
