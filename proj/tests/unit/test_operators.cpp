#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ncqm/error.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/states.hpp"

using namespace ncqm;

TEST_CASE("spectral derivative is exact on band-limited data") {
  const GridSpec g{32, 16, std::numbers::pi, std::numbers::pi};
  WaveFunction f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) f.at(i, j) = std::sin(3 * g.x1(i)) * std::cos(2 * g.x2(j));
  const WaveFunction d1 = spectral_derivative(f, 0), d2 = spectral_derivative(f, 1);
  double e1 = 0, e2 = 0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      e1 = std::max(e1, std::abs(d1.at(i, j) - 3 * std::cos(3 * g.x1(i)) * std::cos(2 * g.x2(j))));
      e2 = std::max(e2, std::abs(d2.at(i, j) + 2 * std::sin(3 * g.x1(i)) * std::sin(2 * g.x2(j))));
    }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-12);
}

TEST_CASE("generators are symmetric on smooth states") {
  const GridSpec g{96, 96, 12, 12};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const WaveFunction f = hermite_state(g, 1), h = hermite_state(g, 2);
  for (Tag t : {Tag::Q1, Tag::Q2, Tag::P1, Tag::P2, Tag::R})
    CHECK(hermiticity_defect(assemble(t, p, g), f, h) < 1e-10);
}

TEST_CASE("action of Q1 on a Gaussian matches the differential form") {
  const GridSpec g{64, 64, 10, 10};
  const auto p = derive_constants(0.3, 0.1, 0.2);
  const WaveFunction f = gaussian(g, {1.0, 1.0, 0.0, 0.0});
  const WaveFunction q = assemble(Tag::Q1, p, g).apply(f);
  double err = 0.0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const double x1 = g.x1(i), x2 = g.x2(j);
      // d2 exp(-x2^2) = -2 x2 exp(-x2^2)
      const cplx want = (p.lambda * x1 + p.E * x1 * x1 + cplx(0, p.theta / (2 * p.lambda)) * (-2.0 * x2)) * f.at(i, j);
      err = std::max(err, std::abs(q.at(i, j) - want));
    }
  CHECK(err < 1e-11);
}

TEST_CASE("R is multiplication by (epsilon s / mu) x1") {
  const GridSpec g{64, 64, 10, 10};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const WaveFunction f = hermite_state(g, 5);
  const WaveFunction r = assemble(Tag::R, p, g).apply(f);
  double err = 0.0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      err = std::max(err, std::abs(r.at(i, j) - p.epsilon * p.root() / p.mu * g.x1(i) * f.at(i, j)));
  CHECK(err < 1e-13);
}

TEST_CASE("commutation relations hold on smooth states") {
  const GridSpec g{128, 128, 12, 12};
  std::vector<WaveFunction> st{hermite_state(g, 11), hermite_state(g, 12)};
  const auto rep = verify_algebra(derive_constants(0.2, 0.2, 0.1), st, 1e-6);
  CHECK(rep.passed);
  CHECK(rep.pairs.size() == 6);
  const auto rep0 = verify_algebra(derive_constants(0.5, 0.2, 0.0), st, 1e-8);
  CHECK(rep0.passed);
  CHECK(verify_heisenberg(g, st, 1e-8).passed);
}

TEST_CASE("a wrong expectation is detected") {
  const GridSpec g{64, 64, 10, 10};
  const auto p = derive_constants(0.2, 0.2, 0.0);
  const WaveFunction f = hermite_state(g, 3);
  const Symbol wrong = Symbol::constant({0.0, 0.3});
  CHECK(commutator_error(Symbol::base(Tag::Q1), Symbol::base(Tag::Q2), wrong, p, f) > 0.1);
}

TEST_CASE("Heisenberg-Weyl generators reconstruct from the deformed ones") {
  const GridSpec g{128, 128, 12, 12};
  const auto rep = reconstruct_hw(derive_constants(0.2, 0.2, 0.1), hermite_state(g, 4));
  CHECK(rep.max_deviation < 1e-6);
}

TEST_CASE("grid mismatch on commutator") {
  const auto p = derive_constants(0.1, 0.1, 0.0);
  const GridSpec g1{32, 32, 6, 6}, g2{32, 32, 7, 6};
  const auto a = assemble(Tag::Q1, p, g1);
  const auto b = assemble(Tag::Q2, p, g2);
  CHECK_THROWS_AS(commutator_apply(a, b, WaveFunction(g1)), GridMismatch);
}
