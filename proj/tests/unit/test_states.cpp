#include <cmath>
#include <cstdio>
#include <numbers>

#include "doctest.h"
#include "ncqm/error.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/state_io.hpp"
#include "ncqm/states.hpp"

using namespace ncqm;

namespace {
const AlgebraParams kHW = derive_constants(0, 0, 0);
}

TEST_CASE("Gaussian moments") {
  // <(x1 - c)^2> = a / 4, <xi1^2> = 1 / a
  const GridSpec g{128, 128, 12, 12};
  const double a = 1.5, b = 0.7;
  const WaveFunction f = gaussian(g, {a, b, 0.5, -1.0});
  CHECK(f.norm() == doctest::Approx(1.0).epsilon(1e-13));
  const auto x1 = assemble(Tag::X1, kHW, g), x2 = assemble(Tag::X2, kHW, g);
  const auto k1 = assemble(Tag::Xi1, kHW, g), k2 = assemble(Tag::Xi2, kHW, g);
  CHECK(expectation(x1, f).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(expectation(x2, f).real() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(dispersion(x1, f, 0.5) == doctest::Approx(std::sqrt(a / 4)).epsilon(1e-12));
  CHECK(dispersion(x2, f, -1.0) == doctest::Approx(std::sqrt(b / 4)).epsilon(1e-12));
  CHECK(dispersion(k1, f, 0.0) == doctest::Approx(std::sqrt(1 / a)).epsilon(1e-12));
  CHECK(dispersion(k2, f, 0.0) == doctest::Approx(std::sqrt(1 / b)).epsilon(1e-12));
  CHECK(realness_defect(expectation(k1, f)) < 1e-13);
}

TEST_CASE("Gaussian resolvability") {
  const GridSpec g{64, 64, 8, 8};
  CHECK_THROWS_AS(gaussian(g, {1e-3, 1.0, 0, 0}), ResolutionError);
  CHECK_THROWS_AS(gaussian(g, {50.0, 1.0, 0, 0}), ResolutionError);
  CHECK_THROWS_AS(gaussian(g, {1.0, 1.0, 7.5, 0}), ResolutionError);
  CHECK_THROWS_AS(gaussian(g, {-1.0, 1.0, 0, 0}), DomainError);
}

TEST_CASE("snap_center moves to the nearest node") {
  const GridSpec g{64, 64, 8, 8};
  bool moved = false;
  const auto s = snap_center(g, {1, 1, 0.3, 0.0}, &moved);
  CHECK(moved);
  CHECK(s.x1_0 == doctest::Approx(0.25));
  snap_center(g, s, &moved);
  CHECK_FALSE(moved);
}

TEST_CASE("expectation requires normalization") {
  const GridSpec g{64, 64, 6, 6};
  WaveFunction f = gaussian(g, {1, 1, 0, 0});
  f *= 2.0;
  CHECK_THROWS_AS(expectation(assemble(Tag::X1, kHW, g), f), NotNormalized);
}

TEST_CASE("translation shifts position and momentum means") {
  const GridSpec g{128, 128, 12, 12};
  const WaveFunction f = hermite_state(g, 3);
  const auto x1 = assemble(Tag::X1, kHW, g), k2 = assemble(Tag::Xi2, kHW, g);
  const double m0 = expectation(x1, f).real(), p0 = expectation(k2, f).real();
  const WaveFunction t = translate(f, {1.3, 0.0}, {0.0, 0.7});
  CHECK(t.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(expectation(x1, t).real() == doctest::Approx(m0 + 1.3).epsilon(1e-10));
  CHECK(expectation(k2, t).real() == doctest::Approx(p0 + 0.7).epsilon(1e-10));
}

TEST_CASE("dilation scales the width and keeps the norm") {
  const GridSpec g{128, 128, 12, 12};
  const WaveFunction f = gaussian(g, {0.5, 0.5, 0, 0});
  const WaveFunction d = dilate(f, 2.0);
  CHECK(d.norm() == doctest::Approx(1.0).epsilon(1e-10));
  // |s|^-1 f(x / s) is the Gaussian with a -> s^2 a
  const WaveFunction want = gaussian(g, {2.0, 2.0, 0, 0});
  CHECK((d - want).norm() < 1e-10);
}

TEST_CASE("dilation that leaves the box is refused") {
  const GridSpec g{64, 64, 8, 8};
  CHECK_THROWS_AS(dilate(gaussian(g, {2.0, 2.0, 0, 0}), 8.0), ResolutionError);
}

TEST_CASE("seeded Hermite states") {
  const GridSpec g{64, 64, 10, 10};
  const WaveFunction a = hermite_state(g, 7), b = hermite_state(g, 7), c = hermite_state(g, 8);
  CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((a - b).norm() == 0.0);
  CHECK((a - c).norm() > 0.1);
  CHECK(hermite_state(g, 9, 4, 1.0, true).is_real());
  CHECK(boundary_mass_fraction(a) < 1e-12);
  CHECK(spectral_tail_fraction(a, 0.5) < 1e-6);
  CHECK(spectral_tail_fraction(a, 0.9) < 1e-12);
}

TEST_CASE("state files round trip") {
  const GridSpec g{16, 24, 3, 4};
  const WaveFunction f = hermite_state(GridSpec{16, 24, 3, 4}, 2, 2, 0.6);
  const std::string path = "state_roundtrip.bin";
  write_state(path, f);
  const WaveFunction r = read_state(path);
  std::remove(path.c_str());
  CHECK(r.grid() == g);
  CHECK((r - f).norm() == 0.0);
}

TEST_CASE("one-dimensional transform of a Gaussian") {
  const int n = 256;
  const double L = 12;
  std::vector<cplx> f(n);
  for (int i = 0; i < n; ++i) {
    const double x = -L + i * 2 * L / n;
    f[i] = std::pow(std::numbers::pi, -0.25) * std::exp(-x * x / 2);
  }
  const auto ft = fourier_1d(f, L);
  const double dk = std::numbers::pi / L;
  double err = 0.0;
  for (int i = 0; i < n; ++i) {
    const double k = (i - n / 2) * dk;
    err = std::max(err, std::abs(ft[i] - std::pow(std::numbers::pi, -0.25) * std::exp(-k * k / 2)));
  }
  CHECK(err < 1e-12);
}
