#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ncqm/error.hpp"
#include "ncqm/modspace.hpp"
#include "ncqm/states.hpp"

using namespace ncqm;

TEST_CASE("weight values") {
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const double x1 = 1.5, x2 = -0.5, w1 = 0.2, w2 = 0.1;
  const double psi2 = 1 + std::pow(x1 + p.E * x1 * x1 / p.lambda, 2) + x2 * x2;
  const double phi2 = 1 + 4 * std::numbers::pi * std::numbers::pi * (w1 * w1 + w2 * w2);
  CHECK(weight_eval({WeightKind::Psi, p}, {x1, x2}, {w1, w2}) == doctest::Approx(std::sqrt(psi2)));
  CHECK(weight_eval({WeightKind::Phi, p}, {x1, x2}, {w1, w2}) == doctest::Approx(std::sqrt(phi2)));
  CHECK(weight_eval({WeightKind::M, p}, {x1, x2}, {w1, w2}) == doctest::Approx(std::sqrt(psi2 + phi2)));
}

TEST_CASE("standard window is normalized") {
  const GridSpec g{64, 64, 8, 8};
  CHECK(standard_window(g).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("STFT of a Gaussian with its own window") {
  // V_g g(0, 0) = ||g||^2 = 1 and |V_g g(x, 0)| = exp(-|x|^2 / 4)
  const GridSpec g{64, 64, 8, 8};
  const WaveFunction w = standard_window(g);
  const StftGrid s = stft(w, w);
  int p0 = -1, k0 = -1;
  for (int p = 0; p < s.nx1; ++p)
    if (std::abs(s.x1(p)) < 1e-12) p0 = p;
  for (int k = 0; k < s.nw1; ++k)
    if (std::abs(s.w1(k)) < 1e-12) k0 = k;
  REQUIRE(p0 >= 0);
  REQUIRE(k0 >= 0);
  CHECK(std::abs(s.at(p0, p0, k0, k0)) == doctest::Approx(1.0).epsilon(1e-10));
  const double x = s.x1(p0 + 3);
  CHECK(std::abs(s.at(p0 + 3, p0, k0, k0)) == doctest::Approx(std::exp(-x * x / 4)).epsilon(1e-10));
}

TEST_CASE("Moyal identity on the lattice") {
  const GridSpec g{64, 64, 8, 8};
  const WaveFunction w = standard_window(g);
  for (int seed : {1, 2}) {
    const WaveFunction f = hermite_state(g, seed);
    const double m = modulation_norm(f, w, nullptr);
    CHECK(m * m == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("STFT errors") {
  const GridSpec g{64, 64, 8, 8};
  const WaveFunction f = gaussian(g, {1, 1, 0, 0});
  CHECK_THROWS_AS(stft(f, WaveFunction(g)), EmptyWindow);
  WaveFunction edge(g);
  edge.at(0, 0) = 1.0;
  CHECK_THROWS_AS(stft(edge, standard_window(g)), CoverageError);
}

TEST_CASE("sandwich constants at the undeformed point") {
  const auto p = derive_constants(0, 0, 0);
  const auto c = sandwich_constants(PairAlpha::parse("q1p1"), p);
  CHECK(c.K2 >= 0.0);
  CHECK(c.K2 <= 1.0);
  CHECK(c.C >= 1.0);
}

TEST_CASE("norm equivalence on real states") {
  const GridSpec g{64, 64, 8, 8};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  for (int seed : {3, 4}) {
    const auto rep = norm_equivalence_report(hermite_state(g, seed, 4, 1.0, true), p);
    CHECK(rep.real_valued);
    CHECK(rep.sandwich_ok);
    CHECK(rep.alphas.size() == 4);
    CHECK(rep.norm_B_sq > 1.0);
  }
}

TEST_CASE("weight checks") {
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const double R = 2 * p.lambda / p.E;
  const auto rep = weight_checks(p, {R, 2 * R, 4 * R}, 4000);
  CHECK(rep.passed);
  for (const auto& d : rep.decay) CHECK(d.sampled_max <= d.bound);
  CHECK_THROWS_AS(weight_checks(derive_constants(0.2, 0.2, 0), {1.0}), DomainError);
}
