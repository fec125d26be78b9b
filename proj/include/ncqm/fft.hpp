#pragma once

#include <complex>
#include <span>

namespace ncqm::fft {

// Unnormalized in-place transforms.  sign = -1 forward, +1 backward.
// Plans are cached and shared; execution is thread-safe.
void transform_1d(std::span<std::complex<double>> data, int sign);
void transform_2d(std::span<std::complex<double>> data, int n1, int n2, int sign);
// Batched 1D transforms along one axis of a row-major n1 x n2 array (axis 0 = x1).
void transform_axis(std::span<std::complex<double>> data, int n1, int n2, int axis, int sign);

}  // namespace ncqm::fft
