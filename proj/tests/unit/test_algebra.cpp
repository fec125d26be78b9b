#include <array>
#include <cmath>

#include "doctest.h"
#include "ncqm/algebra.hpp"
#include "ncqm/error.hpp"

using namespace ncqm;

namespace {
// Independent evaluation of the realization constants.
struct Ref {
  double lambda, mu, E, F;
};
Ref reference(double t, double e, double x) {
  const double s = std::sqrt(1.0 - t * e);
  const double l = std::sqrt((1.0 + s) / 2.0);
  const double F = -x * s * (1.0 + s);
  return {l, l, -t * F / (1.0 + s), F};
}
}  // namespace

TEST_CASE("constants at the undeformed point") {
  const auto p = derive_constants(0, 0, 0);
  CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.mu == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.E == 0.0);
  CHECK(p.F == 0.0);
}

TEST_CASE("constants match a direct evaluation") {
  for (auto [t, e, x] : {std::array{0.2, 0.2, 0.1}, std::array{0.6, 0.6, 0.1}, std::array{0.5, 0.2, 0.0},
                         std::array{0.9, 1.0, 2.0}}) {
    const auto p = derive_constants(t, e, x);
    const Ref r = reference(t, e, x);
    CHECK(p.lambda == doctest::Approx(r.lambda).epsilon(1e-14));
    CHECK(p.mu == doctest::Approx(r.mu).epsilon(1e-14));
    CHECK(p.E == doctest::Approx(r.E).epsilon(1e-14));
    CHECK(p.F == doctest::Approx(r.F).epsilon(1e-14));
    CHECK(2 * p.lambda * p.mu == doctest::Approx(1 + p.root()).epsilon(1e-14));
  }
}

TEST_CASE("frozen values at (0.2, 0.2, 0.1)") {
  const auto p = derive_constants(0.2, 0.2, 0.1);
  CHECK(p.lambda == doctest::Approx(0.994936).epsilon(1e-6));
  CHECK(p.E == doctest::Approx(0.019596).epsilon(1e-5));
  CHECK(p.F == doctest::Approx(-0.193979).epsilon(1e-6));
}

TEST_CASE("split sets lambda / mu and keeps 2 lambda mu = 1 + s") {
  const auto p = derive_constants(0.3, 0.4, 0.2, 2.5);
  CHECK(p.lambda / p.mu == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(2 * p.lambda * p.mu == doctest::Approx(1 + p.root()).epsilon(1e-13));
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(derive_constants(1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(derive_constants(2.0, 0.6, 0.0), DomainError);
  CHECK_THROWS_AS(derive_constants(0.1, 0.1, -0.1), DomainError);
  CHECK_THROWS_AS(derive_constants(0.1, 0.1, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(derive_constants(NAN, 0.1, 0.0), DomainError);
  try {
    derive_constants(1.0, 1.0, 0.0);
  } catch (const Error& e) {
    CHECK(e.code() == "algebra.DomainError");
  }
}

TEST_CASE("tag names round trip") {
  for (Tag t : {Tag::Q1, Tag::Q2, Tag::P1, Tag::P2, Tag::X1, Tag::X2, Tag::Xi1, Tag::Xi2, Tag::R})
    CHECK(tag_from_string(to_string(t)) == t);
  CHECK_THROWS_AS(tag_from_string("Q3"), UnsupportedSymbol);
  CHECK(is_fundamental(Tag::P2));
  CHECK_FALSE(is_fundamental(Tag::X1));
  CHECK(is_heisenberg(Tag::Xi2));
}

TEST_CASE("symbol arithmetic") {
  const Symbol q = Symbol::base(Tag::Q1), p = Symbol::base(Tag::P1);
  const Symbol c = (q * p - p * q).simplified();
  CHECK(c.terms().size() == 2);
  CHECK((q - q).simplified().is_zero());
  CHECK((2.0 * q + q).simplified().terms().front().coeff == cplx(3.0));
  CHECK(q.as_base() == Tag::Q1);
  CHECK_FALSE((q * p).as_base().has_value());
}

TEST_CASE("closure at epsilon = 0 is a constant") {
  const auto p = derive_constants(0.5, 0.2, 0.0);
  const Symbol qq = expand_r(p, commutator_closure(p, Tag::Q1, Tag::Q2)).simplified();
  REQUIRE(qq.terms().size() == 1);
  CHECK(qq.terms()[0].factors.empty());
  CHECK(qq.terms()[0].coeff.imag() == doctest::Approx(0.5));
  const Symbol pp = expand_r(p, commutator_closure(p, Tag::P1, Tag::P2)).simplified();
  CHECK(pp.terms()[0].coeff.imag() == doctest::Approx(0.2));
}

TEST_CASE("closure structure at epsilon > 0") {
  const auto p = derive_constants(0.2, 0.2, 0.1);
  CHECK(commutator_closure(p, Tag::Q1, Tag::P2).simplified().is_zero());
  CHECK(commutator_closure(p, Tag::Q2, Tag::P1).simplified().is_zero());
  // antisymmetry
  const Symbol a = commutator_closure(p, Tag::Q1, Tag::P1), b = commutator_closure(p, Tag::P1, Tag::Q1);
  CHECK((a + b).simplified(1e-15).is_zero());
  // [Q1, Q2] = i theta (1 + theta R)
  const Symbol qq = commutator_closure(p, Tag::Q1, Tag::Q2).simplified();
  bool has_r = false;
  for (const auto& t : qq.terms())
    if (t.factors.size() == 1 && t.factors[0] == Tag::R) {
      has_r = true;
      CHECK(t.coeff.imag() == doctest::Approx(0.04));
    }
  CHECK(has_r);
}

TEST_CASE("forward and inverse maps compose to the identity at epsilon = 0") {
  const auto p = derive_constants(0.3, 0.5, 0.0);
  for (Tag t : {Tag::X1, Tag::X2, Tag::Xi1, Tag::Xi2}) {
    const Symbol back = to_heisenberg(p, inverse_map(p, t)).simplified(1e-14);
    REQUIRE(back.terms().size() == 1);
    CHECK(back.terms()[0].factors == std::vector<Tag>{t});
    CHECK(std::abs(back.terms()[0].coeff - cplx(1.0)) < 1e-13);
  }
}

TEST_CASE("expand_r removes R") {
  const auto p = derive_constants(0.2, 0.2, 0.1);
  const Symbol e = expand_r(p, Symbol::base(Tag::R)).simplified();
  for (const auto& t : e.terms())
    for (Tag f : t.factors) CHECK(f != Tag::R);
  CHECK(e.terms().size() == 2);
}
