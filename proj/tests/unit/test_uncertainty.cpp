#include <array>
#include <cmath>
#include <numbers>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "doctest.h"
#include "ncqm/error.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/states.hpp"
#include "ncqm/uncertainty.hpp"

using namespace ncqm;
using hp = boost::multiprecision::cpp_bin_float_50;

TEST_CASE("pair names") {
  CHECK(PairAlpha::parse("q1q2").u() == Tag::Q1);
  CHECK(PairAlpha::parse("p1p2").v() == Tag::P2);
  CHECK(PairAlpha::all().size() == 4);
  CHECK_THROWS_AS(PairAlpha::parse("q1p2"), UnsupportedSymbol);
  CHECK_THROWS_AS(PairAlpha::make(Tag::Q1, Tag::X1), UnsupportedSymbol);
}

TEST_CASE("oscillator ground state value of the functional") {
  // exp(-|x|^2 / 2): ||x1 f||^2 = ||d1 f||^2 = 1/2
  const GridSpec g{128, 128, 12, 12};
  const WaveFunction f = gaussian(g, {2.0, 2.0, 0, 0});
  const auto p = derive_constants(0, 0, 0);
  for (const auto& a : PairAlpha::all()) {
    CHECK(functional_F(a, p, f) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("Robertson bound is attained by the oscillator ground state") {
  const GridSpec g{128, 128, 12, 12};
  const WaveFunction f = gaussian(g, {2.0, 2.0, 0, 0});
  const auto p = derive_constants(0, 0, 0);
  const auto r = robertson(PairAlpha::parse("q1p1"), p, f, 0.0, 0.0);
  CHECK(r.robertson_lhs == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.robertson_rhs == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("Robertson inequality holds on seeded states") {
  const GridSpec g{128, 128, 12, 12};
  const auto p = derive_constants(0.2, 0.2, 0.1);
  for (int s = 0; s < 4; ++s) {
    const WaveFunction f = hermite_state(g, 40 + s);
    for (const auto& a : PairAlpha::all()) {
      const double cu = expectation(assemble(a.u(), p, g), f).real();
      const double cv = expectation(assemble(a.v(), p, g), f).real();
      const auto r = robertson(a, p, f, cu, cv);
      CHECK(r.robertson_lhs >= r.robertson_rhs - 1e-8);
      // the closure and the raw commutator agree
      const auto rg = robertson_general(Symbol::base(a.u()), Symbol::base(a.v()), p, f, cu, cv);
      CHECK(rg.robertson_rhs == doctest::Approx(r.robertson_rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("nullifying translation") {
  const GridSpec g{256, 256, 40, 40};
  const WaveFunction f = gaussian(g, {1, 1, 0, 0});
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const auto n = nullifying_translation(PairAlpha::parse("p1p2"), p, f);
  CHECK(std::abs(n.residual_rhs) < 1e-8);
  // <R> = (epsilon s / mu) x0 for a centered state
  CHECK(n.x0[0] * p.epsilon * p.root() / p.mu == doctest::Approx(n.target_r).epsilon(1e-10));
  CHECK_THROWS_AS(nullifying_translation(PairAlpha::parse("q1p1"), derive_constants(0.2, 0.2, 0.0), f),
                  DegenerateCase);
  CHECK_THROWS_AS(nullifying_translation(PairAlpha::parse("q1q2"), derive_constants(0.0, 0.2, 0.1), f),
                  DegenerateCase);
}

TEST_CASE("Gaussian closed forms agree with 50-digit arithmetic") {
  for (auto [t, e, x, a, b] : {std::array{0.2, 0.2, 0.1, 1.0, 1.0}, std::array{0.6, 0.6, 0.1, 1e-6, 1e9},
                               std::array{0.3, 0.9, 2.0, 3.0, 0.01}}) {
    const auto p = derive_constants(t, e, x);
    const auto c = gaussian_closed_forms(p, a, b);
    const hp s = boost::multiprecision::sqrt(1 - hp(t) * hp(e));
    const hp l = boost::multiprecision::sqrt((1 + s) / 2);
    const hp F = -hp(x) * s * (1 + s), E = -hp(t) * F / (1 + s);
    const hp dq = boost::multiprecision::sqrt(E * E * hp(a) * hp(a) / 8 + hp(t) * hp(t) / (4 * l * l * hp(b)));
    const hp dp = boost::multiprecision::sqrt(l * l / hp(a) + hp(e) * hp(e) * hp(b) / (16 * l * l));
    CHECK(c.dq1 == doctest::Approx(dq.convert_to<double>()).epsilon(1e-13));
    CHECK(c.dp1 == doctest::Approx(dp.convert_to<double>()).epsilon(1e-13));
  }
  CHECK_THROWS_AS(gaussian_closed_forms(derive_constants(0.2, 0.2, 0.0), 1, 1), DomainError);
}

TEST_CASE("closed forms match quadrature") {
  const auto p = derive_constants(0.2, 0.2, 0.5);
  const double c = -p.lambda / (2 * p.E);
  const GridSpec g{256, 256, 16, 16};
  const WaveFunction f = gaussian(g, {1.0, 0.8, c, 0.0});
  const auto q1 = assemble(Tag::Q1, p, g), p1 = assemble(Tag::P1, p, g);
  const auto cf = gaussian_closed_forms(p, 1.0, 0.8);
  CHECK(dispersion(q1, f, expectation(q1, f).real()) == doctest::Approx(cf.dq1).epsilon(1e-9));
  CHECK(dispersion(p1, f, expectation(p1, f).real()) == doctest::Approx(cf.dp1).epsilon(1e-9));
}

TEST_CASE("HPW sweep") {
  const auto p = derive_constants(0.6, 0.6, 0.1);
  CHECK(hpw_limit(p) == doctest::Approx(0.05).epsilon(1e-13));
  const std::vector<double> as{1e-2, 1e-4, 1e-6};
  const auto rows = hpw_sweep(p, as);
  CHECK(rows.back().product == doctest::Approx(0.0509).epsilon(1e-3));
  CHECK(rows[0].product > rows[1].product);
  CHECK(rows[1].product > rows[2].product);
}

TEST_CASE("no minimal length") {
  const auto t = minimal_length_probe(derive_constants(0.2, 0.2, 0.1), 6);
  REQUIRE(t.q_rows.size() == 6);
  for (int k = 1; k < 6; ++k) {
    CHECK(t.q_rows[k].dq1 < t.q_rows[k - 1].dq1);
    CHECK(t.p_rows[k].dp1 < t.p_rows[k - 1].dp1);
  }
  CHECK(t.q_rows.back().dq1 < 1e-3);
  CHECK(t.p_rows.back().dp1 < 1e-3);
}

TEST_CASE("dilation scaling laws") {
  const GridSpec g{256, 256, 12, 12};
  const WaveFunction f = gaussian(g, {0.2, 0.2, 0, 0});
  for (double s : {2.0, 4.0}) {
    const auto r = scaling_demo(f, 1, 2, s);
    CHECK(r.dA_ratio == doctest::Approx(s).epsilon(1e-8));
    CHECK(r.dB_ratio == doctest::Approx(1 / (s * s)).epsilon(1e-8));
    CHECK(r.product_ratio == doctest::Approx(1 / s).epsilon(1e-8));
  }
  CHECK_THROWS_AS(scaling_demo(f, 0, 1, 2.0), DomainError);
}

TEST_CASE("entropies of a Gaussian") {
  const int n = 512;
  const double L = 16;
  std::vector<cplx> f(n);
  for (int i = 0; i < n; ++i) {
    const double x = -L + i * 2 * L / n;
    f[i] = std::pow(2 / std::numbers::pi, 0.25) * std::exp(-x * x);
  }
  const auto e = entropic_check(f, L);
  CHECK(e.sum == doctest::Approx(std::log(std::numbers::pi * std::numbers::e)).epsilon(1e-8));
  CHECK(e.holds);
  std::vector<cplx> bad(n, 1.0);
  CHECK_THROWS_AS(entropic_check(bad, L), NotNormalized);
}

TEST_CASE("scale infimum") {
  CHECK(scale_infimum(4.0, 1.0) == doctest::Approx(4.0));
  // brute force over s
  double best = 1e300;
  for (double s = 0.1; s < 5; s += 1e-4) best = std::min(best, s * s * 3.0 + 2.0 / (s * s));
  CHECK(scale_infimum(3.0, 2.0) == doctest::Approx(best).epsilon(1e-6));
  CHECK_THROWS_AS(scale_infimum(-1, 1), DomainError);
}
