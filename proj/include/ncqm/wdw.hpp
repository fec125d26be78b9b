#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "ncqm/algebra.hpp"
#include "ncqm/grid.hpp"

namespace ncqm::wdw {

// Canonical:    V = 48 exp(-2 sqrt3 x) - (eta x - c)^2
// NonCanonical: V = -(eta x - a)^2 - F^2 mu^4 x^4 - 2 F mu^2 (eta x - a) x^2
//                   + 48 exp(-2 sqrt3 x - 2 sqrt3 mu^2 E x^2 + sqrt3 theta a / (mu lambda))
// Constant:     V = c_or_a (reference problems)
enum class Kind { Canonical, NonCanonical, Constant };

struct PotentialSpec {
  Kind kind = Kind::Canonical;
  AlgebraParams params;
  double c_or_a = 0.0;
};

Kind kind_from_string(const std::string& s);
std::string to_string(Kind k);

struct PotentialValue {
  double value = 0.0;
  bool overflow = false;  // exponent clamped at 700
};

PotentialValue potential_eval(const PotentialSpec& s, double x);

// Taylor coefficients V(x0 + t) = sum_k v_k t^k, k = 0..order.
std::vector<double> potential_taylor(const PotentialSpec& s, double x0, int order, bool* overflow = nullptr);

struct Minimum {
  double x = 0.0;
  double value = 0.0;
  double curvature = 0.0;
};

// First interior point of the bracket where V' changes sign from - to +.
// NoBracket when none exists.
Minimum find_minimum(const PotentialSpec& s, std::pair<double, double> bracket);

// Leftmost x in [lo, hi] with V(x) <= limit.
double clamp_left(const PotentialSpec& s, double lo, double hi, double limit = 1e12);

// Piecewise Taylor solution of phi'' = V phi with polynomial dense output.
struct OdeSolution {
  std::vector<double> xs;  // step starts, plus the final point
  std::vector<double> phi;
  std::vector<double> phi_prime;
  std::vector<double> coeffs;  // (order + 1) Taylor coefficients per step
  int order = 0;
  std::string method;
  double clamped_from = 0.0;  // requested left end when clamping moved it
  bool clamped = false;

  std::size_t steps() const { return xs.empty() ? 0 : xs.size() - 1; }
  double x_begin() const { return xs.front(); }
  double x_end() const { return xs.back(); }
  double eval(double x) const;
  // phi(x + d) with the offset applied in step-local coordinates
  double eval_offset(double x, double d) const;
  double eval_prime(double x) const;
  double max_abs_phi() const;
};

struct SolveOptions {
  int order = 30;
  double h_max = 0.5;
  double tol = 1e-6;  // residual target, checked by ode_residual
  double clamp_limit = 1e12;
};

// Integrates from x0 to x1 with phi(x0), phi'(x0) = ic.  If V(x0) exceeds clamp_limit
// the left end moves to clamp_left.  StepFailure on blow-up, which is what a
// growing mode does when integrated out of a very high barrier.
OdeSolution solve_zero_energy(const PotentialSpec& s, double x0, double x1, std::array<double, 2> ic,
                              const SolveOptions& opts = {});

struct ResidualReport {
  double max_residual = 0.0;  // max |-phi'' + V phi|
  double max_phi = 0.0;
  double relative = 0.0;  // max_residual / max_phi
  double worst_x = 0.0;
  int points = 0;
};

// Eighth-order central second differences with spacing 0.05 / (1 + sqrt|V|),
// evaluated at every interior step node and on a uniform set of points.
ResidualReport ode_residual(const PotentialSpec& s, const OdeSolution& sol, int uniform_points = 20000);

// Local extrema of phi in [lo, hi].
std::vector<std::pair<double, double>> extrema(const OdeSolution& sol, double lo, double hi);

// Least-squares slope of log|phi| at extrema against log x.  TooFewExtrema below 10.
double envelope_exponent(const OdeSolution& sol, std::pair<double, double> tail);

// int_{x_begin}^{X} phi^2 dx for each X.
std::vector<double> tail_l2_proxy(const OdeSolution& sol, const std::vector<double>& X);

// psi_a(x1, x2) = R_a(x2) exp[(i x1 / mu)(a - (eta / 2 mu) x2)].
WaveFunction assemble_separated(const AlgebraParams& p, double a, const std::vector<double>& R_a,
                                const GridSpec& g);

}  // namespace ncqm::wdw
