#include <random>
#include <vector>

#include "doctest.h"
#include "ncqm/kernels.hpp"

using namespace ncqm;
namespace serial = kernels::serial;
namespace omp = kernels::omp;
using cplx = kernels::cplx;

namespace {
std::vector<cplx> noise(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<cplx> v(n);
  for (auto& z : v) z = {nd(rng), nd(rng)};
  return v;
}
std::vector<double> real_noise(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& z : v) z = nd(rng);
  return v;
}
double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("OpenMP kernels agree with the serial reference") {
  kernels::set_threads(4);
  for (int n : {1, 7, 1000, 64 * 64}) {
    const auto f = noise(n, 1), d1 = noise(n, 2), d2 = noise(n, 3);
    const auto w = real_noise(n, 4);
    std::vector<cplx> a(n), b(n);
    serial::combine(a, f, w, d1, {0.1, 0.2}, d2, {-0.3, 0.0});
    omp::combine(b, f, w, d1, {0.1, 0.2}, d2, {-0.3, 0.0});
    CHECK(max_diff(a, b) == 0.0);
    serial::combine(a, f, w, {}, 0.0, d2, {0.0, 1.0});
    omp::combine(b, f, w, {}, 0.0, d2, {0.0, 1.0});
    CHECK(max_diff(a, b) == 0.0);

    CHECK(std::abs(serial::dot(f, d1) - omp::dot(f, d1)) < 1e-12 * n);
    CHECK(serial::norm_sq(f) == doctest::Approx(omp::norm_sq(f)).epsilon(1e-13));
    CHECK(serial::weighted_norm_sq(f, w) == doctest::Approx(omp::weighted_norm_sq(f, w)).epsilon(1e-12));

    a = f;
    b = f;
    serial::axpy(a, {0.5, -1.0}, d1);
    omp::axpy(b, {0.5, -1.0}, d1);
    CHECK(max_diff(a, b) == 0.0);
    serial::scale(a, {0.0, 2.0});
    omp::scale(b, {0.0, 2.0});
    CHECK(max_diff(a, b) == 0.0);
    serial::multiply_field(a, w);
    omp::multiply_field(b, w);
    CHECK(max_diff(a, b) == 0.0);
  }
  kernels::set_threads(1);
}

TEST_CASE("multiply_wavenumber along each axis") {
  const int n1 = 4, n2 = 6;
  const std::vector<double> k1{0, 1, 0, -1}, k2{0, 1, 2, 0, -2, -1};
  for (int axis : {0, 1}) {
    auto a = noise(n1 * n2, 9), b = a, ref = a;
    serial::multiply_wavenumber(a, n1, n2, axis, axis == 0 ? k1 : k2, {0.0, 1.0});
    omp::multiply_wavenumber(b, n1, n2, axis, axis == 0 ? k1 : k2, {0.0, 1.0});
    CHECK(max_diff(a, b) == 0.0);
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) {
        const double k = axis == 0 ? k1[i] : k2[j];
        CHECK(std::abs(a[i * n2 + j] - cplx(0.0, k) * ref[i * n2 + j]) < 1e-15);
      }
  }
}

TEST_CASE("dot conjugates the second argument") {
  const std::vector<cplx> a{{0, 1}}, b{{0, 1}};
  CHECK(serial::dot(a, b) == cplx(1.0, 0.0));
}
