#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncqm/algebra.hpp"
#include "ncqm/grid.hpp"
#include "ncqm/uncertainty.hpp"

namespace ncqm {

enum class WeightKind { Psi, Phi, M };

// Psi(x) = sqrt(1 + (x1 + E x1^2 / lambda)^2 + x2^2), Phi(w) = sqrt(1 + 4 pi^2 |w|^2),
// M = sqrt(Psi^2 + Phi^2).
struct Weight {
  WeightKind kind = WeightKind::M;
  AlgebraParams params;
};

double weight_eval(const Weight& w, std::array<double, 2> x, std::array<double, 2> omega);

// x lattice: the state grid taken every `stride` points; omega lattice: the
// FFT frequencies k / (2 L), ascending.
struct StftLattice {
  int stride = 2;
};

struct StftGrid {
  WaveFunction window;
  int nx1 = 0, nx2 = 0;  // x lattice
  int nw1 = 0, nw2 = 0;  // omega lattice
  double dx1 = 0, dx2 = 0, dw1 = 0, dw2 = 0;
  double x1_0 = 0, x2_0 = 0, w1_0 = 0, w2_0 = 0;
  std::vector<cplx> samples;  // [p1][p2][k1][k2]

  double cell() const { return dx1 * dx2 * dw1 * dw2; }
  double x1(int p) const { return x1_0 + p * dx1; }
  double x2(int p) const { return x2_0 + p * dx2; }
  double w1(int k) const { return w1_0 + k * dw1; }
  double w2(int k) const { return w2_0 + k * dw2; }
  cplx at(int p1, int p2, int k1, int k2) const {
    return samples[((static_cast<std::size_t>(p1) * nx2 + p2) * nw1 + k1) * nw2 + k2];
  }
};

// pi^-1/2 exp(-|t|^2 / 2) on the grid of `g`.
WaveFunction standard_window(const GridSpec& g);

// V_g f(x, w) = int f(t) conj(g(t - x)) exp(-2 pi i t.w) dt.  Throws
// EmptyWindow for g = 0 and CoverageError when f or g puts more than 1e-8 of
// its mass in the four-cell boundary band.  Stores the full 4D array, so it
// refuses lattices above 2^26 samples; modulation_norm streams instead.
StftGrid stft(const WaveFunction& f, const WaveFunction& g, const StftLattice& lattice = {});

// (sum |V_g f|^2 m^2 cell)^(1/2); a null weight pointer means m = 1.
double modulation_norm(const WaveFunction& f, const WaveFunction& g, const Weight* w,
                       const StftLattice& lattice = {});

struct SandwichConstants {
  double K2 = 0.0;  // lower constant (squared)
  double C = 0.0;   // upper constant
  double rho = 0.0;    // inf (2 + V) / (2 + w) where it enters, else 0
  double kappa = 0.0;  // sup V / (1 + w) where it enters, else 0
};

// Constants for K2 |f|_B^2 <= |f|_alpha^2 <= C |f|_B^2 on real f.
SandwichConstants sandwich_constants(const PairAlpha& alpha, const AlgebraParams& p);

struct AlphaNorm {
  std::string alpha;
  double norm_alpha_sq = 0.0;
  SandwichConstants constants;
  bool lower_ok = false;
  bool upper_ok = false;
};

struct NormEquivalenceReport {
  double P = 0.0, X1 = 0.0, X2 = 0.0, K1 = 0.0, K2 = 0.0;
  double norm_B_sq = 0.0;
  double norm_M = 0.0;
  double ratio_M_B = 0.0;
  std::vector<AlphaNorm> alphas;
  bool real_valued = false;
  bool sandwich_ok = false;  // only gating for real states
};

NormEquivalenceReport norm_equivalence_report(const WaveFunction& f, const AlgebraParams& p,
                                              const StftLattice& lattice = {});

struct DecayCheck {
  double R = 0.0;
  double sampled_max = 0.0;  // max 1/m over |z| = R
  double bound = 0.0;
  bool holds = false;
};

struct WeightCheckReport {
  double moderate_C = 0.0;         // max m(z+z') / (m(z) v(z'))
  double moderate_C_doubled = 0.0;  // same with twice the samples
  std::vector<DecayCheck> decay;
  bool decay_monotone = false;
  bool passed = false;
};

// v(z') = 1 + (1 + |x'|^2)^2 + (1 + 4 pi^2 |w'|^2).  DomainError when E = 0.
WeightCheckReport weight_checks(const AlgebraParams& p, const std::vector<double>& R_schedule, int samples = 20000,
                                std::uint64_t seed = 7);

}  // namespace ncqm
