#include "ncqm/states.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ncqm/error.hpp"
#include "ncqm/fft.hpp"
#include "ncqm/kernels.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "states";
constexpr double kPi = std::numbers::pi;

double sign_of(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }
}  // namespace

void check_gaussian_resolvable(const GridSpec& g, const GaussianSpec& s) {
  if (!(s.a > 0.0) || !(s.b > 0.0)) throw DomainError(kModule, "Gaussian widths must be positive");
  const double w1 = std::sqrt(s.a / 2.0), w2 = std::sqrt(s.b / 2.0);
  if (w1 < 2.0 * g.h1() || w2 < 2.0 * g.h2()) throw ResolutionError(kModule, "Gaussian narrower than two cells");
  if (w1 > g.L1 / 4.0 || w2 > g.L2 / 4.0) throw ResolutionError(kModule, "Gaussian wider than a quarter box");
  auto leak = [](double center, double L, double h, double a) {
    const double lo = -L + 4.0 * h, hi = L - 4.0 * h;
    const double k = std::sqrt(2.0 / a);
    return 0.5 * std::erfc((center - lo) * k) + 0.5 * std::erfc((hi - center) * k);
  };
  if (leak(s.x1_0, g.L1, g.h1(), s.a) > 1e-12 || leak(s.x2_0, g.L2, g.h2(), s.b) > 1e-12)
    throw ResolutionError(kModule, "Gaussian reaches the boundary band");
}

WaveFunction gaussian(const GridSpec& g, const GaussianSpec& s) {
  validate(g);
  check_gaussian_resolvable(g, s);
  WaveFunction f(g);
  const double norm = std::sqrt(2.0 / kPi) * std::pow(s.a * s.b, -0.25);
  for (int i = 0; i < g.n1; ++i) {
    const double u = g.x1(i) - s.x1_0;
    for (int j = 0; j < g.n2; ++j) {
      const double w = g.x2(j) - s.x2_0;
      f.at(i, j) = norm * std::exp(-u * u / s.a - w * w / s.b);
    }
  }
  return f;
}

GaussianSpec snap_center(const GridSpec& g, GaussianSpec s, bool* moved) {
  const double c1 = g.x1(static_cast<int>(std::lround((s.x1_0 + g.L1) / g.h1())));
  const double c2 = g.x2(static_cast<int>(std::lround((s.x2_0 + g.L2) / g.h2())));
  if (moved) *moved = (c1 != s.x1_0) || (c2 != s.x2_0);
  s.x1_0 = c1;
  s.x2_0 = c2;
  return s;
}

WaveFunction fourier(const WaveFunction& f) {
  const GridSpec& g = f.grid();
  WaveFunction out(g.dual(), f.data());
  auto v = out.values();
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) v[static_cast<std::size_t>(i) * g.n2 + j] *= sign_of(i + j);
  fft::transform_2d(v, g.n1, g.n2, -1);
  const double pre = g.cell() / (2.0 * kPi);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j)
      v[static_cast<std::size_t>(i) * g.n2 + j] *= pre * sign_of(i - g.n1 / 2 + j - g.n2 / 2);
  return out;
}

WaveFunction inverse_fourier(const WaveFunction& ft, const GridSpec& position_grid) {
  const GridSpec& g = position_grid;
  if (!(g.dual() == ft.grid())) throw GridMismatch(kModule, "spectrum does not live on the dual grid");
  WaveFunction out(g, ft.data());
  auto v = out.values();
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) v[static_cast<std::size_t>(i) * g.n2 + j] *= sign_of(i - g.n1 / 2 + j - g.n2 / 2);
  fft::transform_2d(v, g.n1, g.n2, +1);
  const double pre = ft.grid().cell() / (2.0 * kPi);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) v[static_cast<std::size_t>(i) * g.n2 + j] *= pre * sign_of(i + j);
  return out;
}

std::vector<cplx> fourier_1d(std::span<const cplx> f, double L) {
  const int n = static_cast<int>(f.size());
  if (n < 8 || n % 2) throw GridError(kModule, "1D grid needs an even count >= 8");
  std::vector<cplx> v(f.begin(), f.end());
  for (int i = 0; i < n; ++i) v[i] *= sign_of(i);
  fft::transform_1d(v, -1);
  const double pre = (2.0 * L / n) / std::sqrt(2.0 * kPi);
  for (int i = 0; i < n; ++i) v[i] *= pre * sign_of(i - n / 2);
  return v;
}

void require_normalized(const WaveFunction& f, const char* module, double tol) {
  const double n = f.norm();
  if (std::abs(n - 1.0) > tol) throw NotNormalized(module, "state norm " + std::to_string(n) + " is not 1");
}

cplx expectation(const OperatorHandle& a, const WaveFunction& f) {
  require_normalized(f, kModule);
  return inner(a.apply(f), f);
}

double realness_defect(cplx v) { return std::abs(v.imag()); }

double dispersion(const OperatorHandle& a, const WaveFunction& f, double center) {
  WaveFunction af = a.apply(f);
  kernels::axpy(af.values(), -center, f.values());
  return af.norm();
}

double boundary_mass_fraction(const WaveFunction& f, int margin) {
  const GridSpec& g = f.grid();
  double edge = 0.0, total = 0.0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const double m = std::norm(f.at(i, j));
      total += m;
      if (i < margin || i >= g.n1 - margin || j < margin || j >= g.n2 - margin) edge += m;
    }
  return total > 0.0 ? edge / total : 0.0;
}

double spectral_tail_fraction(const WaveFunction& f, double fraction) {
  const GridSpec& g = f.grid();
  WaveFunction s = f;
  fft::transform_2d(s.values(), g.n1, g.n2, -1);
  double tail = 0.0, total = 0.0;
  for (int i = 0; i < g.n1; ++i) {
    const int ki = i < g.n1 / 2 ? i : g.n1 - i;
    for (int j = 0; j < g.n2; ++j) {
      const int kj = j < g.n2 / 2 ? j : g.n2 - j;
      const double m = std::norm(s.at(i, j));
      total += m;
      if (ki > fraction * (g.n1 / 2) || kj > fraction * (g.n2 / 2)) tail += m;
    }
  }
  return total > 0.0 ? tail / total : 0.0;
}

namespace {

// Trigonometric interpolation weights for evaluating at y from samples on [-L, L).
double dirichlet(double t, int n, double L) {
  const double u = kPi * t / L;
  const int m = n / 2 - 1;
  const double half = std::sin(u / 2.0);
  double core;
  if (std::abs(half) < 1e-12)
    core = (std::cos(u / 2.0) > 0 ? 1.0 : sign_of(2 * m)) * (2 * m + 1);
  else
    core = std::sin((m + 0.5) * u) / half;
  return (core + std::cos(0.5 * n * u)) / n;
}

std::vector<double> dilation_matrix(int n, double L, double s) {
  std::vector<double> M(static_cast<std::size_t>(n) * n, 0.0);
  const double h = 2.0 * L / n;
  for (int i = 0; i < n; ++i) {
    const double y = (-L + i * h) / s;
    if (y < -L || y >= L) continue;
    for (int j = 0; j < n; ++j) M[static_cast<std::size_t>(i) * n + j] = dirichlet(y - (-L + j * h), n, L);
  }
  return M;
}

}  // namespace

WaveFunction dilate(const WaveFunction& f, double s) {
  if (s == 0.0 || !std::isfinite(s)) throw DomainError(kModule, "dilation factor must be nonzero and finite");
  const GridSpec& g = f.grid();
  const double as = std::abs(s);
  if (as > 1.0) {
    // the dilated support must stay inside the box
    double inside = 0.0, total = 0.0;
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) {
        const double m = std::norm(f.at(i, j));
        total += m;
        if (std::abs(g.x1(i)) * as <= g.L1 - 4.0 * g.h1() && std::abs(g.x2(j)) * as <= g.L2 - 4.0 * g.h2())
          inside += m;
      }
    if (total > 0.0 && 1.0 - inside / total > 1e-10)
      throw ResolutionError(kModule, "dilated state leaves the box");
  } else if (as < 1.0) {
    if (spectral_tail_fraction(f, 0.9 * as) > 1e-10)
      throw ResolutionError(kModule, "compressed state exceeds the grid band");
  }
  const auto M1 = dilation_matrix(g.n1, g.L1, s);
  const auto M2 = dilation_matrix(g.n2, g.L2, s);
  WaveFunction tmp(g), out(g);
  // tmp = M1 * f (along x1), out = tmp * M2^T (along x2)
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.n1; ++i)
    for (int k = 0; k < g.n1; ++k) {
      const double w = M1[static_cast<std::size_t>(i) * g.n1 + k];
      if (w == 0.0) continue;
      for (int j = 0; j < g.n2; ++j) tmp.at(i, j) += w * f.at(k, j);
    }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < g.n2; ++k) acc += M2[static_cast<std::size_t>(j) * g.n2 + k] * tmp.at(i, k);
      out.at(i, j) = acc / as;
    }
  return out;
}

WaveFunction translate(const WaveFunction& f, std::array<double, 2> x0, std::array<double, 2> xi0) {
  const GridSpec& g = f.grid();
  double wrapped = 0.0, total = 0.0;
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const double m = std::norm(f.at(i, j));
      total += m;
      const double y1 = g.x1(i) + x0[0], y2 = g.x2(j) + x0[1];
      if (y1 < -g.L1 + 4.0 * g.h1() || y1 > g.L1 - 4.0 * g.h1() || y2 < -g.L2 + 4.0 * g.h2() ||
          y2 > g.L2 - 4.0 * g.h2())
        wrapped += m;
    }
  if (total > 0.0 && wrapped / total > 1e-10) throw ResolutionError(kModule, "translated state leaves the box");
  const double kn1 = kPi / g.h1(), kn2 = kPi / g.h2();
  const double frac = std::max(std::abs(xi0[0]) / kn1, std::abs(xi0[1]) / kn2);
  if (frac >= 0.9 || spectral_tail_fraction(f, 0.9 - frac) > 1e-10)
    throw ResolutionError(kModule, "modulated spectrum exceeds the grid band");

  WaveFunction out = f;
  auto v = out.values();
  if (x0[0] != 0.0 || x0[1] != 0.0) {
    fft::transform_2d(v, g.n1, g.n2, -1);
    const auto k1 = g.wavenumbers1(), k2 = g.wavenumbers2();
    const double inv = 1.0 / static_cast<double>(g.size());
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j)
        out.at(i, j) *= inv * std::polar(1.0, -(k1[i] * x0[0] + k2[j] * x0[1]));
    fft::transform_2d(v, g.n1, g.n2, +1);
  }
  if (xi0[0] != 0.0 || xi0[1] != 0.0)
    for (int i = 0; i < g.n1; ++i)
      for (int j = 0; j < g.n2; ++j) out.at(i, j) *= std::polar(1.0, xi0[0] * g.x1(i) + xi0[1] * g.x2(j));
  return out;
}

namespace {

// Normalized Hermite functions psi_0..psi_m at x.
std::vector<double> hermite_functions(int m, double x) {
  std::vector<double> h(m + 1);
  h[0] = std::pow(kPi, -0.25) * std::exp(-x * x / 2.0);
  if (m >= 1) h[1] = std::sqrt(2.0) * x * h[0];
  for (int k = 2; k <= m; ++k) h[k] = std::sqrt(2.0 / k) * x * h[k - 1] - std::sqrt((k - 1.0) / k) * h[k - 2];
  return h;
}

}  // namespace

WaveFunction hermite_state(const GridSpec& g, std::uint64_t seed, int max_order, double width, bool real) {
  validate(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  const int m = max_order;
  std::vector<cplx> c(static_cast<std::size_t>(m + 1) * (m + 1));
  for (auto& z : c) z = real ? cplx(nd(rng), 0.0) : cplx(nd(rng), nd(rng));
  std::vector<std::vector<double>> h1(g.n1), h2(g.n2);
  for (int i = 0; i < g.n1; ++i) h1[i] = hermite_functions(m, g.x1(i) / width);
  for (int j = 0; j < g.n2; ++j) h2[j] = hermite_functions(m, g.x2(j) / width);
  WaveFunction f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      cplx acc = 0.0;
      for (int p = 0; p <= m; ++p)
        for (int q = 0; q <= m; ++q) acc += c[static_cast<std::size_t>(p) * (m + 1) + q] * h1[i][p] * h2[j][q];
      f.at(i, j) = acc;
    }
  f.normalize();
  return f;
}

}  // namespace ncqm
