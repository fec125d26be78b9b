#include "ncqm/modspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "ncqm/error.hpp"
#include "ncqm/fft.hpp"
#include "ncqm/kernels.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/states.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "modspace";
constexpr double kPi = std::numbers::pi;

double sign_of(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }
}  // namespace

double weight_eval(const Weight& w, std::array<double, 2> x, std::array<double, 2> omega) {
  const double u = x[0] + w.params.E * x[0] * x[0] / w.params.lambda;
  const double psi2 = 1.0 + u * u + x[1] * x[1];
  const double phi2 = 1.0 + 4.0 * kPi * kPi * (omega[0] * omega[0] + omega[1] * omega[1]);
  switch (w.kind) {
    case WeightKind::Psi: return std::sqrt(psi2);
    case WeightKind::Phi: return std::sqrt(phi2);
    case WeightKind::M: return std::sqrt(psi2 + phi2);
  }
  return 0.0;
}

WaveFunction standard_window(const GridSpec& g) {
  WaveFunction w(g);
  const double c = 1.0 / std::sqrt(kPi);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) w.at(i, j) = c * std::exp(-0.5 * (g.x1(i) * g.x1(i) + g.x2(j) * g.x2(j)));
  return w;
}

namespace {

struct Layout {
  int n1, n2, stride, nx1, nx2;
  double cell;
};

Layout check_inputs(const WaveFunction& f, const WaveFunction& g, const StftLattice& lat) {
  require_same_grid(f, g, kModule);
  const GridSpec& gr = f.grid();
  if (g.norm() == 0.0) throw EmptyWindow(kModule, "window has zero norm");
  if (lat.stride < 1 || gr.n1 % lat.stride || gr.n2 % lat.stride)
    throw GridError(kModule, "stride must divide the point counts");
  if (boundary_mass_fraction(f, 4) > 1e-8) throw CoverageError(kModule, "state reaches the boundary band");
  if (boundary_mass_fraction(g, 4) > 1e-8) throw CoverageError(kModule, "window reaches the boundary band");
  Layout l{gr.n1, gr.n2, lat.stride, gr.n1 / lat.stride, gr.n2 / lat.stride, 0.0};
  l.cell = static_cast<double>(lat.stride * lat.stride) / (static_cast<double>(gr.n1) * gr.n2);
  return l;
}

// One x-slice: values in ascending omega order.
void slice(const WaveFunction& f, const WaveFunction& g, const Layout& l, int p1, int p2, std::vector<cplx>& buf) {
  const GridSpec& gr = f.grid();
  const int s1 = p1 * l.stride - l.n1 / 2, s2 = p2 * l.stride - l.n2 / 2;
  for (int i = 0; i < l.n1; ++i) {
    const int gi = ((i - s1) % l.n1 + l.n1) % l.n1;
    for (int j = 0; j < l.n2; ++j) {
      const int gj = ((j - s2) % l.n2 + l.n2) % l.n2;
      buf[static_cast<std::size_t>(i) * l.n2 + j] = f.at(i, j) * std::conj(g.at(gi, gj));
    }
  }
  fft::transform_2d(buf, l.n1, l.n2, -1);
  // frequency m = k - n/2 sits at FFT index m mod n; (-1)^m is the phase of the box offset
  std::vector<cplx> tmp(buf.size());
  const double h = gr.cell();
  for (int k1 = 0; k1 < l.n1; ++k1) {
    const int src1 = (k1 + l.n1 / 2) % l.n1;
    for (int k2 = 0; k2 < l.n2; ++k2) {
      const int src2 = (k2 + l.n2 / 2) % l.n2;
      tmp[static_cast<std::size_t>(k1) * l.n2 + k2] =
          h * sign_of(k1 - l.n1 / 2 + k2 - l.n2 / 2) * buf[static_cast<std::size_t>(src1) * l.n2 + src2];
    }
  }
  buf.swap(tmp);
}

}  // namespace

StftGrid stft(const WaveFunction& f, const WaveFunction& g, const StftLattice& lattice) {
  const Layout l = check_inputs(f, g, lattice);
  const std::size_t per = static_cast<std::size_t>(l.n1) * l.n2;
  const std::size_t total = per * l.nx1 * l.nx2;
  if (total > (std::size_t(1) << 26)) throw DomainError(kModule, "lattice too large to store; use modulation_norm");
  const GridSpec& gr = f.grid();
  StftGrid out;
  out.window = g;
  out.nx1 = l.nx1;
  out.nx2 = l.nx2;
  out.nw1 = l.n1;
  out.nw2 = l.n2;
  out.dx1 = l.stride * gr.h1();
  out.dx2 = l.stride * gr.h2();
  out.dw1 = 1.0 / (2.0 * gr.L1);
  out.dw2 = 1.0 / (2.0 * gr.L2);
  out.x1_0 = -gr.L1;
  out.x2_0 = -gr.L2;
  out.w1_0 = -(l.n1 / 2) * out.dw1;
  out.w2_0 = -(l.n2 / 2) * out.dw2;
  out.samples.resize(total);
#pragma omp parallel
  {
    std::vector<cplx> buf(per);
#pragma omp for schedule(static) collapse(2)
    for (int p1 = 0; p1 < l.nx1; ++p1)
      for (int p2 = 0; p2 < l.nx2; ++p2) {
        slice(f, g, l, p1, p2, buf);
        std::copy(buf.begin(), buf.end(), out.samples.begin() + (static_cast<std::size_t>(p1) * l.nx2 + p2) * per);
      }
  }
  return out;
}

double modulation_norm(const WaveFunction& f, const WaveFunction& g, const Weight* w, const StftLattice& lattice) {
  const Layout l = check_inputs(f, g, lattice);
  const GridSpec& gr = f.grid();
  const std::size_t per = static_cast<std::size_t>(l.n1) * l.n2;
  const double dw1 = 1.0 / (2.0 * gr.L1), dw2 = 1.0 / (2.0 * gr.L2);
  double total = 0.0;
#pragma omp parallel reduction(+ : total)
  {
    std::vector<cplx> buf(per);
    std::vector<double> m2(w ? per : 0);
#pragma omp for schedule(static) collapse(2)
    for (int p1 = 0; p1 < l.nx1; ++p1)
      for (int p2 = 0; p2 < l.nx2; ++p2) {
        slice(f, g, l, p1, p2, buf);
        if (w) {
          const std::array<double, 2> x{gr.x1(p1 * l.stride), gr.x2(p2 * l.stride)};
          for (int k1 = 0; k1 < l.n1; ++k1)
            for (int k2 = 0; k2 < l.n2; ++k2) {
              const double m = weight_eval(*w, x, {(k1 - l.n1 / 2) * dw1, (k2 - l.n2 / 2) * dw2});
              m2[static_cast<std::size_t>(k1) * l.n2 + k2] = m * m;
            }
          total += kernels::serial::weighted_norm_sq(buf, m2);
        } else {
          total += kernels::serial::norm_sq(buf);
        }
      }
  }
  return std::sqrt(total * l.cell);
}

namespace {

// Extremum of r(x) over the real line: log-spaced sampling of both signs
// (reaching the asymptotic regime) followed by golden-section refinement.
template <class Fn>
double extremum(Fn&& r, bool want_min) {
  auto better = [&](double a, double b) { return want_min ? a < b : a > b; };
  std::vector<double> xs{0.0};
  const int n = 4000;
  for (int sgn = -1; sgn <= 1; sgn += 2)
    for (int i = 0; i <= n; ++i) xs.push_back(sgn * std::pow(10.0, -6.0 + 18.0 * i / n));
  std::sort(xs.begin(), xs.end());
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (better(r(xs[i]), r(xs[best]))) best = i;
  double val = r(xs[best]);
  if (best > 0 && best + 1 < xs.size()) {
    double a = xs[best - 1], b = xs[best + 1];
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
      if (better(r(c), r(d)))
        b = d;
      else
        a = c;
      c = b - gr * (b - a);
      d = a + gr * (b - a);
    }
    const double xm = 0.5 * (a + b);
    if (better(r(xm), val)) val = r(xm);
  }
  return val;
}

}  // namespace

SandwichConstants sandwich_constants(const PairAlpha& alpha, const AlgebraParams& p) {
  const double l = p.lambda, m = p.mu;
  const double a = p.theta / (2.0 * l), b = p.eta / (2.0 * m);
  auto V = [&](double x) {
    const double t = p.F * x * x - b * x;
    return t * t;
  };
  auto w = [&](double x) {
    const double t = x + p.E * x * x / l;
    return t * t;
  };
  SandwichConstants s;
  std::vector<double> lower, upper;
  const Tag u = alpha.u(), v = alpha.v();
  const bool has_p2 = v == Tag::P2;
  if (has_p2) {
    s.rho = extremum([&](double x) { return (2.0 + V(x)) / (2.0 + w(x)); }, true);
    s.kappa = (p.F != 0.0 && p.E == 0.0) ? std::numeric_limits<double>::infinity()
                                           : extremum([&](double x) { return V(x) / (1.0 + w(x)); }, false);
    lower.push_back(s.rho);
    lower.push_back(m * m);  // K2 from p2
    upper.push_back(1.0 + s.kappa);
    upper.push_back(2.0 * s.kappa);
    upper.push_back(2.0 * m * m);
  } else {
    lower.push_back(1.0);
    upper.push_back(1.0);
  }
  auto add = [&](Tag t) {
    switch (t) {
      case Tag::Q1:  // X1 and K2
        lower.insert(lower.end(), {l * l, a * a});
        upper.insert(upper.end(), {2.0 * l * l, 2.0 * a * a});
        break;
      case Tag::Q2:  // X2 and K1
        lower.insert(lower.end(), {l * l, a * a});
        upper.insert(upper.end(), {2.0 * l * l, 2.0 * a * a});
        break;
      case Tag::P1:  // K1 and X2
        lower.insert(lower.end(), {m * m, b * b});
        upper.insert(upper.end(), {2.0 * m * m, 2.0 * b * b});
        break;
      default: break;
    }
  };
  add(u);
  if (!has_p2) add(v);
  s.K2 = *std::min_element(lower.begin(), lower.end());
  s.C = *std::max_element(upper.begin(), upper.end());
  return s;
}

NormEquivalenceReport norm_equivalence_report(const WaveFunction& f, const AlgebraParams& p,
                                              const StftLattice& lattice) {
  const GridSpec& g = f.grid();
  if (boundary_mass_fraction(f, 4) > 1e-8) throw CoverageError(kModule, "state reaches the boundary band");
  NormEquivalenceReport r;
  r.real_valued = f.is_real(1e-14 * (1.0 + f.norm()));
  const double cell = g.cell();
  for (int i = 0; i < g.n1; ++i) {
    const double u = g.x1(i) + p.E * g.x1(i) * g.x1(i) / p.lambda;
    for (int j = 0; j < g.n2; ++j) {
      const double m = std::norm(f.at(i, j)) * cell;
      r.P += m;
      r.X1 += u * u * m;
      r.X2 += g.x2(j) * g.x2(j) * m;
    }
  }
  const double d1 = spectral_derivative(f, 0).norm(), d2 = spectral_derivative(f, 1).norm();
  r.K1 = d1 * d1;
  r.K2 = d2 * d2;
  r.norm_B_sq = 2.0 * r.P + r.X1 + r.X2 + r.K1 + r.K2;
  const Weight wm{WeightKind::M, p};
  r.norm_M = modulation_norm(f, standard_window(g), &wm, lattice);
  r.ratio_M_B = r.norm_M / std::sqrt(r.norm_B_sq);
  r.sandwich_ok = true;
  for (const auto& alpha : PairAlpha::all()) {
    AlphaNorm an;
    an.alpha = alpha.name();
    const double nu = assemble(alpha.u(), p, g).apply(f).norm();
    const double nv = assemble(alpha.v(), p, g).apply(f).norm();
    an.norm_alpha_sq = 2.0 * r.P + nu * nu + nv * nv;
    an.constants = sandwich_constants(alpha, p);
    const double slack = 1e-12 * r.norm_B_sq;
    an.lower_ok = an.constants.K2 * r.norm_B_sq <= an.norm_alpha_sq + slack;
    an.upper_ok = an.norm_alpha_sq <= an.constants.C * r.norm_B_sq + slack;
    if (!(an.lower_ok && an.upper_ok)) r.sandwich_ok = false;
    r.alphas.push_back(an);
  }
  return r;
}

WeightCheckReport weight_checks(const AlgebraParams& p, const std::vector<double>& R_schedule, int samples,
                                std::uint64_t seed) {
  if (p.E == 0.0) throw DomainError(kModule, "decay bound needs E != 0");
  const Weight wm{WeightKind::M, p};
  auto m_of = [&](const std::array<double, 4>& z) { return weight_eval(wm, {z[0], z[1]}, {z[2], z[3]}); };
  auto v_of = [&](const std::array<double, 4>& z) {
    const double x2 = z[0] * z[0] + z[1] * z[1];
    const double w2 = z[2] * z[2] + z[3] * z[3];
    return 1.0 + (1.0 + x2) * (1.0 + x2) + (1.0 + 4.0 * kPi * kPi * w2);
  };
  auto moderate = [&](int n, std::uint64_t sd) {
    std::mt19937_64 rng(sd);
    std::uniform_real_distribution<double> u(-1.0, 1.0), lg(-2.0, 3.0);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
      std::array<double, 4> z, zp, s;
      const double rz = std::pow(10.0, lg(rng)), rp = std::pow(10.0, lg(rng));
      for (int i = 0; i < 4; ++i) {
        z[i] = rz * u(rng);
        zp[i] = rp * u(rng);
        s[i] = z[i] + zp[i];
      }
      worst = std::max(worst, m_of(s) / (m_of(z) * v_of(zp)));
    }
    return worst;
  };
  WeightCheckReport rep;
  rep.moderate_C = moderate(samples, seed);
  rep.moderate_C_doubled = moderate(2 * samples, seed + 1);

  std::mt19937_64 rng(seed + 2);
  std::normal_distribution<double> nd;
  const double l = p.lambda, E = p.E;
  rep.passed = true;
  for (double R : R_schedule) {
    DecayCheck d;
    d.R = R;
    if (R < 2.0 * l / E) throw DomainError(kModule, "decay bound holds for R >= 2 lambda / E");
    d.bound = 1.0 / std::sqrt(R * R + 2.0 - 27.0 * l * l / (16.0 * E * E));
    auto probe = [&](std::array<double, 4> z) {
      double n2 = 0.0;
      for (double c : z) n2 += c * c;
      const double sc = R / std::sqrt(n2);
      for (double& c : z) c *= sc;
      d.sampled_max = std::max(d.sampled_max, 1.0 / m_of(z));
    };
    for (int k = 0; k < samples; ++k) probe({nd(rng), nd(rng), nd(rng), nd(rng)});
    // directions with cos(phi1) near the minimizer -3 lambda / (2 E R) of the quartic bound
    const double c0 = std::max(-1.0, -3.0 * l / (2.0 * E * R));
    for (int k = 0; k <= 200; ++k) {
      const double c = std::clamp(c0 + (k - 100) * 1e-3, -1.0, 1.0);
      const double sn = std::sqrt(1.0 - c * c);
      probe({c, sn, 0.0, 0.0});
      probe({c, 0.0, sn, 0.0});
    }
    d.holds = d.sampled_max <= d.bound;
    rep.passed = rep.passed && d.holds;
    rep.decay.push_back(d);
  }
  rep.decay_monotone = true;
  for (std::size_t i = 1; i < rep.decay.size(); ++i)
    if (rep.decay[i].R > rep.decay[i - 1].R && !(rep.decay[i].sampled_max < rep.decay[i - 1].sampled_max))
      rep.decay_monotone = false;
  rep.passed = rep.passed && rep.decay_monotone && std::isfinite(rep.moderate_C);
  return rep;
}

}  // namespace ncqm
