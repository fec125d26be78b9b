#include "ncqm/uncertainty.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncqm/error.hpp"
#include "ncqm/kernels.hpp"
#include "ncqm/states.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "uncertainty";
}

PairAlpha PairAlpha::make(Tag u, Tag v) {
  const bool ok = (u == Tag::Q1 && v == Tag::Q2) || (u == Tag::P1 && v == Tag::P2) ||
                  (u == Tag::Q1 && v == Tag::P1) || (u == Tag::Q2 && v == Tag::P2);
  if (!ok) throw UnsupportedSymbol(kModule, "pair is not one of q1q2, p1p2, q1p1, q2p2");
  return PairAlpha(u, v);
}

PairAlpha PairAlpha::parse(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s.size() != 4) throw UnsupportedSymbol(kModule, "bad pair name '" + s + "'");
  return make(tag_from_string(s.substr(0, 2)), tag_from_string(s.substr(2, 2)));
}

const std::array<PairAlpha, 4>& PairAlpha::all() {
  static const std::array<PairAlpha, 4> a = {PairAlpha(Tag::Q1, Tag::Q2), PairAlpha(Tag::P1, Tag::P2),
                                             PairAlpha(Tag::Q1, Tag::P1), PairAlpha(Tag::Q2, Tag::P2)};
  return a;
}

std::string PairAlpha::name() const {
  std::string s = std::string(to_string(u_)) + std::string(to_string(v_));
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double functional_F(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f) {
  require_normalized(f, kModule);
  const double nu = assemble(alpha.u(), p, f.grid()).apply(f).norm();
  const double nv = assemble(alpha.v(), p, f.grid()).apply(f).norm();
  return nu * nu + nv * nv;
}

namespace {

UncertaintyReport robertson_impl(const Symbol& A, const Symbol& B, const Symbol& comm, const std::string& na,
                                 const std::string& nb, const AlgebraParams& p, const WaveFunction& f, double a,
                                 double b) {
  require_normalized(f, kModule);
  const GridSpec& g = f.grid();
  const OperatorHandle ha = assemble(A, p, g), hb = assemble(B, p, g);
  UncertaintyReport r;
  r.center_u = a;
  r.center_v = b;
  const double da = dispersion(ha, f, a), db = dispersion(hb, f, b);
  r.dispersions[na] = da;
  r.dispersions[nb] = db;
  r.robertson_lhs = da * db;
  if (comm.is_zero()) {
    r.robertson_rhs = 0.5 * std::abs(inner(commutator_apply(ha, hb, f), f));
  } else {
    r.robertson_rhs = 0.5 * std::abs(inner(assemble(comm, p, g).apply(f), f));
  }
  const double nu = ha.apply(f).norm(), nv = hb.apply(f).norm();
  r.functional_value = nu * nu + nv * nv;
  return r;
}

}  // namespace

UncertaintyReport robertson(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f, double a,
                            double b) {
  return robertson_impl(Symbol::base(alpha.u()), Symbol::base(alpha.v()), commutator_closure(p, alpha.u(), alpha.v()),
                        std::string(to_string(alpha.u())), std::string(to_string(alpha.v())), p, f, a, b);
}

UncertaintyReport robertson_general(const Symbol& A, const Symbol& B, const AlgebraParams& p, const WaveFunction& f,
                                    double a, double b) {
  return robertson_impl(A, B, Symbol(), "A", "B", p, f, a, b);
}

Nullifier nullifying_translation(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f) {
  const double s = p.root();
  Nullifier out;
  const bool has_q = alpha.u() == Tag::Q1 || alpha.u() == Tag::Q2;
  if (p.epsilon == 0.0) throw DegenerateCase(kModule, "epsilon = 0: the closure is a constant");
  if (has_q && p.theta == 0.0) throw DegenerateCase(kModule, "theta = 0: the closure is a constant");
  if (alpha.u() == Tag::Q1 && alpha.v() == Tag::Q2)
    out.target_r = -1.0 / p.theta;
  else if (alpha.u() == Tag::P1)
    out.target_r = -p.eta / ((1.0 + s) * (1.0 + s));
  else
    out.target_r = -1.0 / (p.theta * (1.0 + s));

  // R acts as multiplication by (epsilon s / mu) x1, so <R> is affine in the x1 shift.
  const GridSpec& g = f.grid();
  const OperatorHandle r = assemble(Tag::R, p, g);
  const double r0 = expectation(r, f).real();
  out.x0 = {(out.target_r - r0) * p.mu / (p.epsilon * s), 0.0};
  out.xi0 = {0.0, 0.0};
  const WaveFunction moved = translate(f, out.x0, out.xi0);
  out.residual_rhs = robertson(alpha, p, moved, 0.0, 0.0).robertson_rhs;
  return out;
}

GaussianClosedForms gaussian_closed_forms(const AlgebraParams& p, double a, double b) {
  if (p.E == 0.0) throw DomainError(kModule, "E = 0: the Gaussian center -lambda/2E is undefined");
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError(kModule, "a, b must be positive");
  GaussianClosedForms c;
  c.a = a;
  c.b = b;
  const double l = p.lambda, m = p.mu;
  c.dq1 = std::sqrt(p.theta * p.theta / (4.0 * l * l * b) + a * a * p.E * p.E / 8.0);
  const double k = p.eta / (4.0 * m * m);
  c.dp1 = (m / std::sqrt(a)) * std::sqrt(1.0 + k * k * a * b);
  c.product = c.dq1 * c.dp1;
  return c;
}

double hpw_limit(const AlgebraParams& p) { return p.xi / (4.0 * (1.0 + p.root())); }

std::vector<GaussianClosedForms> hpw_sweep(const AlgebraParams& p, std::span<const double> a_values) {
  std::vector<GaussianClosedForms> rows;
  for (double a : a_values) rows.push_back(gaussian_closed_forms(p, a, std::pow(a, -1.5)));
  return rows;
}

MinimalLengthTable minimal_length_probe(const AlgebraParams& p, int kmax) {
  MinimalLengthTable t;
  for (int k = 1; k <= kmax; ++k) {
    const double big = std::pow(10.0, k), small = std::pow(10.0, -k);
    t.q_rows.push_back(gaussian_closed_forms(p, small, big));
    t.p_rows.push_back(gaussian_closed_forms(p, big, small));
  }
  return t;
}

namespace {

double x_power_norm(const WaveFunction& f, int n) {
  const GridSpec& g = f.grid();
  double s = 0.0;
  for (int i = 0; i < g.n1; ++i) {
    const double w = std::pow(g.x1(i), 2 * n);
    for (int j = 0; j < g.n2; ++j) s += w * std::norm(f.at(i, j));
  }
  return std::sqrt(s * g.cell());
}

double xi_power_norm(const WaveFunction& f, int m) {
  WaveFunction d = f;
  for (int k = 0; k < m; ++k) d = spectral_derivative(d, 0);
  return d.norm();
}

}  // namespace

ScalingResult scaling_demo(const WaveFunction& f, int n, int m, double s) {
  if (n < 1 || m < 1) throw DomainError(kModule, "powers must be positive");
  const WaveFunction g = dilate(f, s);
  ScalingResult r;
  r.s = s;
  r.n = n;
  r.m = m;
  r.dA = x_power_norm(g, n);
  r.dB = xi_power_norm(g, m);
  const double a0 = x_power_norm(f, n), b0 = xi_power_norm(f, m);
  r.dA_ratio = r.dA / a0;
  r.dB_ratio = r.dB / b0;
  r.product_ratio = r.dA_ratio * r.dB_ratio;
  return r;
}

EntropyReport entropic_check(std::span<const cplx> f, double L) {
  const int n = static_cast<int>(f.size());
  const double h = 2.0 * L / n;
  double norm = 0.0;
  for (const auto& v : f) norm += std::norm(v);
  norm = std::sqrt(norm * h);
  if (std::abs(norm - 1.0) > 1e-8) throw NotNormalized(kModule, "1D state is not normalized");
  auto entropy = [](std::span<const cplx> v, double dx) {
    double e = 0.0;
    for (const auto& z : v) {
      const double p = std::norm(z);
      if (p > 1e-300) e -= p * std::log(p);
    }
    return e * dx;
  };
  const auto ft = fourier_1d(f, L);
  EntropyReport r;
  r.position = entropy(f, h);
  r.momentum = entropy(ft, std::numbers::pi / L);
  r.sum = r.position + r.momentum;
  r.bound = std::log(std::numbers::pi * std::numbers::e);
  r.holds = r.sum >= r.bound - 1e-4;
  return r;
}

double scale_infimum(double A, double B) {
  if (A < 0.0 || B < 0.0) throw DomainError(kModule, "arguments must be non-negative");
  return 2.0 * std::sqrt(A * B);
}

}  // namespace ncqm
