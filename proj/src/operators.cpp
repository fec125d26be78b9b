#include "ncqm/operators.hpp"

#include <cmath>

#include "ncqm/error.hpp"
#include "ncqm/fft.hpp"
#include "ncqm/kernels.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "operators";

std::size_t slot(Tag t) { return static_cast<std::size_t>(t); }
}  // namespace

WaveFunction spectral_derivative(const WaveFunction& f, int axis) {
  const GridSpec& g = f.grid();
  WaveFunction d = f;
  auto v = d.values();
  fft::transform_axis(v, g.n1, g.n2, axis, -1);
  const auto k = axis == 0 ? g.wavenumbers1() : g.wavenumbers2();
  const double inv_n = 1.0 / (axis == 0 ? g.n1 : g.n2);
  kernels::multiply_wavenumber(v, g.n1, g.n2, axis, k, cplx(0.0, inv_n));
  fft::transform_axis(v, g.n1, g.n2, axis, +1);
  return d;
}

namespace {

std::array<OperatorHandle::BaseAction, 10> build_actions(const AlgebraParams& p, const GridSpec& g) {
  using BA = OperatorHandle::BaseAction;
  const std::size_t n = g.size();
  std::vector<double> x1(n), x2(n);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      x1[static_cast<std::size_t>(i) * g.n2 + j] = g.x1(i);
      x2[static_cast<std::size_t>(i) * g.n2 + j] = g.x2(j);
    }
  auto field = [&](auto fn) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(x1[i], x2[i]);
    return out;
  };
  const cplx I(0.0, 1.0);
  const double a = p.theta / (2.0 * p.lambda);
  const double b = p.eta / (2.0 * p.mu);
  const double c = p.c();

  std::array<BA, 10> t;
  t[slot(Tag::X1)] = BA{x1, 0.0, 0.0};
  t[slot(Tag::X2)] = BA{x2, 0.0, 0.0};
  t[slot(Tag::Xi1)] = BA{{}, -I, 0.0};
  t[slot(Tag::Xi2)] = BA{{}, 0.0, -I};
  t[slot(Tag::Identity)] = BA{std::vector<double>(n, 1.0), 0.0, 0.0};
  t[slot(Tag::Q1)] = BA{field([&](double u, double) { return p.lambda * u + p.E * u * u; }), 0.0, I * a};
  t[slot(Tag::Q2)] = BA{field([&](double, double w) { return p.lambda * w; }), -I * a, 0.0};
  t[slot(Tag::P1)] = BA{field([&](double, double w) { return b * w; }), -I * p.mu, 0.0};
  t[slot(Tag::P2)] = BA{field([&](double u, double) { return -b * u + p.F * u * u; }), 0.0, -I * p.mu};
  // epsilon (q1 + c p2): the d2 parts cancel since c mu = theta / (2 lambda),
  // leaving multiplication by (epsilon s / mu) x1.
  t[slot(Tag::R)] = BA{field([&](double u, double) {
                         return p.epsilon * ((p.lambda * u + p.E * u * u) + c * (-b * u + p.F * u * u));
                       }),
                       0.0, 0.0};
  return t;
}

}  // namespace

OperatorHandle assemble(const Symbol& s, const AlgebraParams& p, const GridSpec& g) {
  validate(g);
  for (const auto& term : s.terms())
    for (Tag t : term.factors)
      if (!is_fundamental(t) && !is_heisenberg(t) && t != Tag::R && t != Tag::Identity)
        throw UnsupportedSymbol(kModule, "symbol has no differential representation");
  OperatorHandle h;
  h.symbol_ = s.simplified();
  h.params_ = p;
  h.grid_ = g;
  h.actions_ = std::make_shared<const std::array<OperatorHandle::BaseAction, 10>>(build_actions(p, g));
  return h;
}

OperatorHandle assemble(Tag t, const AlgebraParams& p, const GridSpec& g) { return assemble(Symbol::base(t), p, g); }

WaveFunction OperatorHandle::apply_base(Tag t, const WaveFunction& f) const {
  const BaseAction& a = (*actions_)[slot(t)];
  WaveFunction out(grid_);
  WaveFunction d1, d2;
  std::span<const cplx> s1, s2;
  if (a.c1 != 0.0) {
    d1 = spectral_derivative(f, 0);
    s1 = d1.values();
  }
  if (a.c2 != 0.0) {
    d2 = spectral_derivative(f, 1);
    s2 = d2.values();
  }
  kernels::combine(out.values(), f.values(), a.field, s1, a.c1, s2, a.c2);
  return out;
}

WaveFunction OperatorHandle::apply(const WaveFunction& f) const {
  if (!actions_) throw DomainError(kModule, "operator handle is empty");
  if (!(f.grid() == grid_)) throw GridMismatch(kModule, "wavefunction grid differs from operator grid");
  WaveFunction out(grid_);
  for (const auto& term : symbol_.terms()) {
    if (term.factors.empty()) {
      kernels::axpy(out.values(), term.coeff, f.values());
      continue;
    }
    WaveFunction w = apply_base(term.factors.back(), f);
    for (auto it = term.factors.rbegin() + 1; it != term.factors.rend(); ++it) w = apply_base(*it, w);
    kernels::axpy(out.values(), term.coeff, w.values());
  }
  return out;
}

WaveFunction commutator_apply(const OperatorHandle& a, const OperatorHandle& b, const WaveFunction& f) {
  if (!(a.grid() == b.grid())) throw GridMismatch(kModule, "operators live on different grids");
  WaveFunction ab = a.apply(b.apply(f));
  ab -= b.apply(a.apply(f));
  return ab;
}

double hermiticity_defect(const OperatorHandle& a, const WaveFunction& f, const WaveFunction& g) {
  return std::abs(inner(a.apply(f), g) - inner(f, a.apply(g)));
}

double commutator_error(const Symbol& a, const Symbol& b, const Symbol& expected, const AlgebraParams& p,
                        const WaveFunction& f) {
  const GridSpec& g = f.grid();
  WaveFunction lhs = commutator_apply(assemble(a, p, g), assemble(b, p, g), f);
  WaveFunction rhs = assemble(expected, p, g).apply(f);
  const double scale = rhs.norm() > 0.0 ? rhs.norm() : f.norm();
  lhs -= rhs;
  return lhs.norm() / scale;
}

const std::array<std::array<Tag, 2>, 6>& fundamental_pairs() {
  static const std::array<std::array<Tag, 2>, 6> pairs = {{{Tag::Q1, Tag::Q2},
                                                           {Tag::P1, Tag::P2},
                                                           {Tag::Q1, Tag::P1},
                                                           {Tag::Q2, Tag::P2},
                                                           {Tag::Q1, Tag::P2},
                                                           {Tag::Q2, Tag::P1}}};
  return pairs;
}

AlgebraReport verify_algebra(const AlgebraParams& p, std::span<const WaveFunction> states, double tol) {
  AlgebraReport rep;
  rep.tolerance = tol;
  for (const auto& pr : fundamental_pairs()) {
    PairCheck pc{pr[0], pr[1], 0.0};
    const Symbol closure = commutator_closure(p, pr[0], pr[1]);
    for (const auto& f : states)
      pc.max_error = std::max(pc.max_error,
                              commutator_error(Symbol::base(pr[0]), Symbol::base(pr[1]), closure, p, f));
    rep.max_error = std::max(rep.max_error, pc.max_error);
    rep.pairs.push_back(pc);
  }
  rep.passed = rep.max_error <= tol;
  return rep;
}

AlgebraReport verify_heisenberg(const GridSpec& g, std::span<const WaveFunction> states, double tol) {
  AlgebraReport rep;
  rep.tolerance = tol;
  const AlgebraParams p = derive_constants(0.0, 0.0, 0.0);
  const Tag pairs[6][2] = {{Tag::X1, Tag::Xi1}, {Tag::X2, Tag::Xi2}, {Tag::X1, Tag::Xi2},
                           {Tag::X2, Tag::Xi1}, {Tag::X1, Tag::X2},  {Tag::Xi1, Tag::Xi2}};
  for (int k = 0; k < 6; ++k) {
    const Tag u = pairs[k][0], v = pairs[k][1];
    const Symbol expected = k < 2 ? Symbol::constant(cplx(0.0, 1.0)) : Symbol();
    PairCheck pc{u, v, 0.0};
    for (const auto& f : states) {
      if (!(f.grid() == g)) throw GridMismatch(kModule, "state grid differs");
      pc.max_error = std::max(pc.max_error, commutator_error(Symbol::base(u), Symbol::base(v), expected, p, f));
    }
    rep.max_error = std::max(rep.max_error, pc.max_error);
    rep.pairs.push_back(pc);
  }
  rep.passed = rep.max_error <= tol;
  return rep;
}

ReconstructionReport reconstruct_hw(const AlgebraParams& p, const WaveFunction& f) {
  ReconstructionReport rep;
  const Tag tags[4] = {Tag::X1, Tag::X2, Tag::Xi1, Tag::Xi2};
  for (int k = 0; k < 4; ++k) {
    WaveFunction direct = assemble(tags[k], p, f.grid()).apply(f);
    WaveFunction rebuilt = assemble(inverse_map(p, tags[k]), p, f.grid()).apply(f);
    const double scale = direct.norm() > 0.0 ? direct.norm() : f.norm();
    rebuilt -= direct;
    rep.deviation[k] = rebuilt.norm() / scale;
    rep.max_deviation = std::max(rep.max_deviation, rep.deviation[k]);
  }
  return rep;
}

}  // namespace ncqm
