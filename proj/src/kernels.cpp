#include "ncqm/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cstddef>

namespace ncqm::kernels {

namespace serial {

void combine(std::span<cplx> out, std::span<const cplx> f, std::span<const double> field, std::span<const cplx> d1,
             cplx c1, std::span<const cplx> d2, cplx c2) {
  const std::size_t n = out.size();
  const bool h1 = !d1.empty(), h2 = !d2.empty(), hf = !field.empty();
  for (std::size_t i = 0; i < n; ++i) {
    cplx v = hf ? field[i] * f[i] : cplx(0.0);
    if (h1) v += c1 * d1[i];
    if (h2) v += c2 * d2[i];
    out[i] = v;
  }
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const cplx v = a[i] * std::conj(b[i]);
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

double norm_sq(std::span<const cplx> a) {
  double s = 0.0;
  for (const auto& v : a) s += std::norm(v);
  return s;
}

double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::norm(a[i]);
  return s;
}

void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

void scale(std::span<cplx> y, cplx a) {
  for (auto& v : y) v *= a;
}

void multiply_field(std::span<cplx> y, std::span<const double> field) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] *= field[i];
}

void multiply_wavenumber(std::span<cplx> y, int n1, int n2, int axis, std::span<const double> k, cplx c) {
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) y[static_cast<std::size_t>(i) * n2 + j] *= c * k[axis == 0 ? i : j];
}

}  // namespace serial

namespace omp {

void combine(std::span<cplx> out, std::span<const cplx> f, std::span<const double> field, std::span<const cplx> d1,
             cplx c1, std::span<const cplx> d2, cplx c2) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
  const bool h1 = !d1.empty(), h2 = !d2.empty(), hf = !field.empty();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cplx v = hf ? field[i] * f[i] : cplx(0.0);
    if (h1) v += c1 * d1[i];
    if (h2) v += c2 * d2[i];
    out[i] = v;
  }
}

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  double re = 0.0, im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const cplx v = a[i] * std::conj(b[i]);
    re += v.real();
    im += v.imag();
  }
  return {re, im};
}

double norm_sq(std::span<const cplx> a) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += std::norm(a[i]);
  return s;
}

double weighted_norm_sq(std::span<const cplx> a, std::span<const double> w) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(a.size());
  double s = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : s)
  for (std::ptrdiff_t i = 0; i < n; ++i) s += w[i] * std::norm(a[i]);
  return s;
}

void axpy(std::span<cplx> y, cplx a, std::span<const cplx> x) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale(std::span<cplx> y, cplx a) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= a;
}

void multiply_field(std::span<cplx> y, std::span<const double> field) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] *= field[i];
}

void multiply_wavenumber(std::span<cplx> y, int n1, int n2, int axis, std::span<const double> k, cplx c) {
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) y[static_cast<std::size_t>(i) * n2 + j] *= c * k[axis == 0 ? i : j];
}

}  // namespace omp

void set_threads(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace ncqm::kernels
