#include "ncqm/wdw.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ncqm/error.hpp"

namespace ncqm::wdw {

namespace {
constexpr const char* kModule = "wdw";
const double kSqrt3 = std::sqrt(3.0);

// Polynomial part as coefficients of 1, x, ..., x^4 and the exponential part
// A exp(g0 + g1 x + g2 x^2).
struct Parts {
  std::array<double, 5> poly{};
  double A = 0.0, g0 = 0.0, g1 = 0.0, g2 = 0.0;
};

Parts parts(const PotentialSpec& s) {
  Parts p;
  const AlgebraParams& a = s.params;
  const double eta = a.eta, k = s.c_or_a;
  switch (s.kind) {
    case Kind::Constant: p.poly[0] = k; break;
    case Kind::Canonical:
      p.poly = {-k * k, 2.0 * eta * k, -eta * eta, 0.0, 0.0};
      p.A = 48.0;
      p.g1 = -2.0 * kSqrt3;
      break;
    case Kind::NonCanonical: {
      const double m2 = a.mu * a.mu;
      p.poly = {-k * k, 2.0 * eta * k, -eta * eta + 2.0 * a.F * m2 * k, -2.0 * a.F * m2 * eta,
                -a.F * a.F * m2 * m2};
      p.A = 48.0;
      p.g0 = kSqrt3 * a.theta * k / (a.mu * a.lambda);
      p.g1 = -2.0 * kSqrt3;
      p.g2 = -2.0 * kSqrt3 * m2 * a.E;
      break;
    }
  }
  return p;
}

}  // namespace

Kind kind_from_string(const std::string& s) {
  if (s == "canonical") return Kind::Canonical;
  if (s == "noncanonical") return Kind::NonCanonical;
  if (s == "constant") return Kind::Constant;
  throw DomainError(kModule, "unknown potential kind '" + s + "'");
}

std::string to_string(Kind k) {
  switch (k) {
    case Kind::Canonical: return "canonical";
    case Kind::NonCanonical: return "noncanonical";
    case Kind::Constant: return "constant";
  }
  return "?";
}

std::vector<double> potential_taylor(const PotentialSpec& s, double x0, int order, bool* overflow) {
  const Parts p = parts(s);
  std::vector<double> v(order + 1, 0.0);
  // shifted polynomial: v_k = sum_j C(j, k) c_j x0^(j - k)
  for (int k = 0; k <= 4 && k <= order; ++k) {
    double acc = 0.0;
    for (int j = k; j <= 4; ++j) {
      double binom = 1.0;
      for (int q = 0; q < k; ++q) binom = binom * (j - q) / (q + 1);
      acc += binom * p.poly[j] * std::pow(x0, j - k);
    }
    v[k] = acc;
  }
  bool of = false;
  if (p.A != 0.0) {
    double G0 = p.g0 + p.g1 * x0 + p.g2 * x0 * x0;
    const double G1 = p.g1 + 2.0 * p.g2 * x0, G2 = p.g2;
    if (G0 > 700.0) {
      G0 = 700.0;
      of = true;
    }
    std::vector<double> e(order + 1, 0.0);
    e[0] = p.A * std::exp(G0);
    if (order >= 1) e[1] = G1 * e[0];
    for (int n = 1; n < order; ++n) e[n + 1] = (G1 * e[n] + 2.0 * G2 * e[n - 1]) / (n + 1);
    for (int k = 0; k <= order; ++k) v[k] += e[k];
  }
  if (overflow) *overflow = of;
  return v;
}

PotentialValue potential_eval(const PotentialSpec& s, double x) {
  PotentialValue r;
  r.value = potential_taylor(s, x, 0, &r.overflow)[0];
  return r;
}

Minimum find_minimum(const PotentialSpec& s, std::pair<double, double> bracket) {
  double lo = bracket.first, hi = bracket.second;
  if (!(lo < hi)) throw NoBracket(kModule, "empty bracket");
  if (!std::isfinite(hi)) hi = lo + 1000.0;
  auto d1 = [&](double x) { return potential_taylor(s, x, 2)[1]; };
  const int n = 20000;
  double xa = lo, da = d1(lo);
  for (int i = 1; i <= n; ++i) {
    const double xb = lo + (hi - lo) * i / n;
    const double db = d1(xb);
    if (db == 0.0) continue;  // underflow or an exact zero: wait for a sign
    if (da < 0.0 && db > 0.0) {
      double a = xa, b = xb;
      for (int it = 0; it < 200 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
        const double m = 0.5 * (a + b);
        if (d1(m) < 0.0)
          a = m;
        else
          b = m;
      }
      const double x = 0.5 * (a + b);
      const auto t = potential_taylor(s, x, 2);
      if (2.0 * t[2] > 0.0) return {x, t[0], 2.0 * t[2]};
    }
    xa = xb;
    da = db;
  }
  throw NoBracket(kModule, "V' has no - to + sign change in the bracket");
}

double clamp_left(const PotentialSpec& s, double lo, double hi, double limit) {
  auto bad = [&](double x) {
    const auto v = potential_eval(s, x);
    return v.overflow || v.value > limit;
  };
  if (!bad(lo)) return lo;
  if (bad(hi)) throw StepFailure(kModule, "potential exceeds the clamp limit on the whole range");
  double a = lo, b = hi;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (bad(m))
      a = m;
    else
      b = m;
  }
  return b;
}

namespace {

double horner(const double* c, int order, double t) {
  double acc = 0.0;
  for (int k = order; k >= 0; --k) acc = acc * t + c[k];
  return acc;
}

double horner_prime(const double* c, int order, double t) {
  double acc = 0.0;
  for (int k = order; k >= 1; --k) acc = acc * t + k * c[k];
  return acc;
}

}  // namespace

double OdeSolution::eval(double x) const {
  if (x < xs.front() || x > xs.back()) throw DomainError(kModule, "evaluation point outside the solved range");
  std::size_t i = std::upper_bound(xs.begin(), xs.end() - 1, x) - xs.begin();
  i = i == 0 ? 0 : i - 1;
  if (i >= steps()) i = steps() - 1;
  return horner(&coeffs[i * (order + 1)], order, x - xs[i]);
}

double OdeSolution::eval_offset(double x, double d) const {
  const double y = x + d;
  if (y < xs.front() || y > xs.back()) throw DomainError(kModule, "evaluation point outside the solved range");
  std::size_t i = std::upper_bound(xs.begin(), xs.end() - 1, y) - xs.begin();
  i = i == 0 ? 0 : i - 1;
  if (i >= steps()) i = steps() - 1;
  return horner(&coeffs[i * (order + 1)], order, (x - xs[i]) + d);
}

double OdeSolution::eval_prime(double x) const {
  if (x < xs.front() || x > xs.back()) throw DomainError(kModule, "evaluation point outside the solved range");
  std::size_t i = std::upper_bound(xs.begin(), xs.end() - 1, x) - xs.begin();
  i = i == 0 ? 0 : i - 1;
  if (i >= steps()) i = steps() - 1;
  return horner_prime(&coeffs[i * (order + 1)], order, x - xs[i]);
}

double OdeSolution::max_abs_phi() const {
  double m = 0.0;
  for (double v : phi) m = std::max(m, std::abs(v));
  return m;
}

OdeSolution solve_zero_energy(const PotentialSpec& s, double x0, double x1, std::array<double, 2> ic,
                              const SolveOptions& opts) {
  if (!(x0 < x1)) throw DomainError(kModule, "need x0 < x1");
  OdeSolution sol;
  const double start = clamp_left(s, x0, x1, opts.clamp_limit);
  if (start != x0) {
    sol.clamped = true;
    sol.clamped_from = x0;
  }
  const int N = opts.order;
  sol.order = N;
  sol.method = "taylor-" + std::to_string(N) + " adaptive";
  double x = start, y = ic[0], yp = ic[1];
  std::vector<double> c(N + 1);
  const long max_steps = 20000000;
  while (true) {
    sol.xs.push_back(x);
    sol.phi.push_back(y);
    sol.phi_prime.push_back(yp);
    if (x >= x1) break;
    if (static_cast<long>(sol.xs.size()) > max_steps)
      throw StepFailure(kModule, "step budget exhausted at x = " + std::to_string(x));
    bool of = false;
    const auto v = potential_taylor(s, x, N, &of);
    if (of) throw StepFailure(kModule, "potential overflow at x = " + std::to_string(x));
    c[0] = y;
    c[1] = yp;
    for (int n = 0; n + 2 <= N; ++n) {
      double acc = 0.0;
      for (int k = 0; k <= n; ++k) acc += v[k] * c[n - k];
      c[n + 2] = acc / ((n + 1.0) * (n + 2.0));
    }
    // radius estimate from the two highest coefficients
    const double scale = std::max({std::abs(y), std::abs(yp), 1e-300});
    double rho = std::numeric_limits<double>::infinity();
    for (int j : {N - 1, N})
      if (c[j] != 0.0) rho = std::min(rho, std::pow(scale / std::abs(c[j]), 1.0 / j));
    double h = std::min(opts.h_max, rho / (std::numbers::e * std::numbers::e));
    if (x + h > x1) h = x1 - x;
    if (!(h > 1e-13 * (1.0 + std::abs(x))))
      throw StepFailure(kModule, "step size collapsed at x = " + std::to_string(x));
    sol.coeffs.insert(sol.coeffs.end(), c.begin(), c.end());
    // advance to the stored node so neighbouring polynomials agree there
    const double xn = (x + h >= x1) ? x1 : x + h;
    const double t = xn - x;
    const double yn = horner(c.data(), N, t), ypn = horner_prime(c.data(), N, t);
    if (!std::isfinite(yn) || !std::isfinite(ypn))
      throw StepFailure(kModule, "solution blew up after x = " + std::to_string(x));
    x = xn;
    y = yn;
    yp = ypn;
  }
  return sol;
}

ResidualReport ode_residual(const PotentialSpec& s, const OdeSolution& sol, int uniform_points) {
  static const double w[5] = {-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0};
  ResidualReport r;
  r.max_phi = sol.max_abs_phi();
  const double a = sol.x_begin(), b = sol.x_end();
  auto check = [&](double x) {
    const double V = potential_eval(s, x).value;
    const double h = 0.05 / (1.0 + std::sqrt(std::abs(V)));
    if (x - 4.0 * h < a || x + 4.0 * h > b) return;
    double d2 = w[0] * sol.eval(x);
    for (int k = 1; k <= 4; ++k) d2 += w[k] * (sol.eval_offset(x, k * h) + sol.eval_offset(x, -k * h));
    d2 /= h * h;
    const double res = std::abs(-d2 + V * sol.eval(x));
    ++r.points;
    if (res > r.max_residual) {
      r.max_residual = res;
      r.worst_x = x;
    }
  };
  for (std::size_t i = 1; i + 1 < sol.xs.size(); ++i) check(sol.xs[i]);
  for (int i = 1; i < uniform_points; ++i) check(a + (b - a) * i / uniform_points);
  r.relative = r.max_phi > 0.0 ? r.max_residual / r.max_phi : 0.0;
  return r;
}

std::vector<std::pair<double, double>> extrema(const OdeSolution& sol, double lo, double hi) {
  std::vector<std::pair<double, double>> out;
  const int sub = 16;
  for (std::size_t i = 0; i < sol.steps(); ++i) {
    const double xa = sol.xs[i], xb = sol.xs[i + 1];
    if (xb < lo || xa > hi) continue;
    const double* c = &sol.coeffs[i * (sol.order + 1)];
    double ta = 0.0, da = horner_prime(c, sol.order, 0.0);
    for (int k = 1; k <= sub; ++k) {
      const double tb = (xb - xa) * k / sub;
      const double db = horner_prime(c, sol.order, tb);
      if ((da < 0.0 && db >= 0.0) || (da > 0.0 && db <= 0.0)) {
        double p = ta, q = tb, dp = da;
        for (int it = 0; it < 100; ++it) {
          const double m = 0.5 * (p + q);
          const double dm = horner_prime(c, sol.order, m);
          if ((dm < 0.0) == (dp < 0.0)) {
            p = m;
            dp = dm;
          } else {
            q = m;
          }
        }
        const double t = 0.5 * (p + q);
        const double x = xa + t;
        if (x >= lo && x <= hi && (out.empty() || x > out.back().first))
          out.emplace_back(x, horner(c, sol.order, t));
      }
      ta = tb;
      da = db;
    }
  }
  return out;
}

double envelope_exponent(const OdeSolution& sol, std::pair<double, double> tail) {
  if (tail.first < sol.x_begin() || tail.second > sol.x_end() || !(tail.first < tail.second) || tail.first <= 0.0)
    throw DomainError(kModule, "tail must be a positive interval within the solved range");
  const auto ex = extrema(sol, tail.first, tail.second);
  if (ex.size() < 10) throw TooFewExtrema(kModule, "found " + std::to_string(ex.size()) + " extrema in the tail");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(ex.size());
  for (const auto& [x, v] : ex) {
    const double lx = std::log(x), ly = std::log(std::abs(v));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> tail_l2_proxy(const OdeSolution& sol, const std::vector<double>& X) {
  static const double gx[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
                               0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
  static const double gw[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
                               0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};
  std::vector<double> out;
  for (double Xe : X) {
    if (Xe > sol.x_end() || Xe < sol.x_begin()) throw DomainError(kModule, "proxy end outside the solved range");
    double total = 0.0;
    for (std::size_t i = 0; i < sol.steps() && sol.xs[i] < Xe; ++i) {
      const double a = sol.xs[i], b = std::min(sol.xs[i + 1], Xe);
      const double* c = &sol.coeffs[i * (sol.order + 1)];
      const double half = 0.5 * (b - a);
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) {
        const double v = horner(c, sol.order, half * (1.0 + gx[k]));
        acc += gw[k] * v * v;
      }
      total += half * acc;
    }
    out.push_back(total);
  }
  return out;
}

WaveFunction assemble_separated(const AlgebraParams& p, double a, const std::vector<double>& R_a, const GridSpec& g) {
  if (static_cast<int>(R_a.size()) != g.n2) throw GridMismatch(kModule, "R_a must have one sample per x2 point");
  WaveFunction psi(g);
  const double b = p.eta / (2.0 * p.mu);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) psi.at(i, j) = R_a[j] * std::polar(1.0, g.x1(i) / p.mu * (a - b * g.x2(j)));
  return psi;
}

}  // namespace ncqm::wdw
