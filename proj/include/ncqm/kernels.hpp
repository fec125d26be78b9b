#pragma once

#include <complex>
#include <span>

// Grid loops used by the operators, the solver and the STFT.  `serial` is the
// reference implementation; `omp` is the OpenMP version used by default.
namespace ncqm::kernels {

using cplx = std::complex<double>;

#define NCQM_KERNEL_DECLS                                                                          \
  /* out = field*f + c1*d1 + c2*d2; empty d1/d2 spans are skipped */                               \
  void combine(std::span<cplx> out, std::span<const cplx> f, std::span<const double> field,        \
               std::span<const cplx> d1, cplx c1, std::span<const cplx> d2, cplx c2);              \
  cplx dot(std::span<const cplx> a, std::span<const cplx> b); /* sum a conj(b) */                  \
  double norm_sq(std::span<const cplx> a);                                                         \
  double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w);                     \
  void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x);                                   \
  void scale(std::span<cplx> y, cplx a);                                                           \
  void multiply_field(std::span<cplx> y, std::span<const double> field);                           \
  /* y(i1,i2) *= c * k[i_axis] on a row-major n1 x n2 array */                                     \
  void multiply_wavenumber(std::span<cplx> y, int n1, int n2, int axis, std::span<const double> k, \
                           cplx c);

namespace serial {
NCQM_KERNEL_DECLS
}
namespace omp {
NCQM_KERNEL_DECLS
}

#undef NCQM_KERNEL_DECLS

using omp::axpy;
using omp::combine;
using omp::dot;
using omp::multiply_field;
using omp::multiply_wavenumber;
using omp::norm_sq;
using omp::scale;
using omp::weighted_norm_sq;

// Sets the OpenMP thread count; n <= 0 leaves the runtime default.
void set_threads(int n);
int max_threads();

}  // namespace ncqm::kernels
