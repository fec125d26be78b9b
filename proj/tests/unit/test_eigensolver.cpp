#include <cmath>

#include "doctest.h"
#include "ncqm/eigensolver.hpp"
#include "ncqm/error.hpp"
#include "ncqm/states.hpp"

using namespace ncqm;

TEST_CASE("Lanczos on a diagonal operator") {
  const int n = 400;
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) d[i] = 1.0 + 0.5 * i + 0.01 * std::sin(i);
  LinearMap A = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    out.resize(in.size());
    for (int i = 0; i < n; ++i) out[i] = d[i] * in[i];
  };
  std::vector<cplx> start(n, 1.0);
  SolverOptions o;
  o.tol = 1e-10;
  const auto r = lanczos_lowest(A, start, 3, o);
  REQUIRE(r.values.size() == 3);
  CHECK(r.values[0] == doctest::Approx(d[0]).epsilon(1e-10));
  CHECK(r.values[1] == doctest::Approx(d[1]).epsilon(1e-10));
  CHECK(r.values[2] == doctest::Approx(d[2]).epsilon(1e-10));
  CHECK(std::abs(std::abs(r.vectors[0][0]) - 1.0) < 1e-8);
}

TEST_CASE("Lanczos on a tridiagonal Laplacian") {
  // eigenvalues 2 - 2 cos(k pi / (n + 1))
  const int n = 200;
  LinearMap A = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    out.assign(in.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      out[i] = 2.0 * in[i];
      if (i > 0) out[i] -= in[i - 1];
      if (i + 1 < n) out[i] -= in[i + 1];
    }
  };
  std::vector<cplx> start(n);
  for (int i = 0; i < n; ++i) start[i] = 1.0 + 0.1 * i;
  SolverOptions o;
  o.tol = 1e-11;
  o.max_iter = 20000;
  const auto r = lanczos_lowest(A, start, 2, o);
  const double pi = 3.14159265358979323846;
  CHECK(r.values[0] == doctest::Approx(2 - 2 * std::cos(pi / (n + 1))).epsilon(1e-7));
  CHECK(r.values[1] == doctest::Approx(2 - 2 * std::cos(2 * pi / (n + 1))).epsilon(1e-7));
}

TEST_CASE("ground levels of the undeformed oscillator pairs") {
  const GridSpec g{64, 64, 8, 8};
  const auto p = derive_constants(0, 0, 0);
  const auto gs = ground_state(PairAlpha::parse("q1p1"), p, g);
  CHECK(gs.nu0 == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(gs.state.norm() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(functional_F(gs.alpha, p, gs.state) == doctest::Approx(gs.nu0).epsilon(1e-5));
}

TEST_CASE("ground level of (Q1, P1) at epsilon = 0 is 1") {
  const GridSpec g{64, 64, 8, 8};
  const auto gs = ground_state(PairAlpha::parse("q1p1"), derive_constants(0.5, 0.2, 0), g);
  CHECK(gs.nu0 == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("unguarded minimizer satisfies the eigen relation") {
  const GridSpec g{64, 64, 8, 8};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  SolverOptions o;
  o.guard_height = 0.0;
  const auto gs = ground_state(PairAlpha::parse("q1p1"), p, g, o);
  CHECK(functional_F(gs.alpha, p, gs.state) == doctest::Approx(gs.nu0).epsilon(1e-10));
  CHECK(residual(gs.alpha, p, g, gs.state, gs.nu0) < 1e-3);
  const auto vp = variational_probe(gs, 10, 0.1, 5);
  CHECK(vp.passed);
}

TEST_CASE("seeded runs are reproducible") {
  const GridSpec g{32, 32, 6, 6};
  const auto p = derive_constants(0.2, 0.2, 0.0);
  const auto a = ground_state(PairAlpha::parse("q2p2"), p, g);
  const auto b = ground_state(PairAlpha::parse("q2p2"), p, g);
  CHECK(a.nu0 == b.nu0);
  CHECK(a.iterations == b.iterations);
}

TEST_CASE("residual rejects a state from another grid") {
  const GridSpec g{64, 64, 6, 6}, h{64, 64, 7, 6};
  const WaveFunction f = gaussian(h, {1, 1, 0, 0});
  CHECK_THROWS_AS(residual(PairAlpha::parse("q1q2"), derive_constants(0.1, 0.1, 0), g, f, 0.1), GridMismatch);
}

TEST_CASE("Hamiltonians of different pairs do not commute at epsilon > 0") {
  const GridSpec g{48, 48, 7, 7};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const Hamiltonian ha(PairAlpha::parse("q1q2"), p, g), hb(PairAlpha::parse("p1p2"), p, g);
  const WaveFunction f = hermite_state(g, 3);
  WaveFunction c = ha.apply(hb.apply(f));
  c -= hb.apply(ha.apply(f));
  CHECK(c.norm() > 1e-3);
}
