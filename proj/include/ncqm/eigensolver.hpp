#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ncqm/algebra.hpp"
#include "ncqm/grid.hpp"
#include "ncqm/operators.hpp"
#include "ncqm/uncertainty.hpp"

namespace ncqm {

struct SolverOptions {
  double tol = 1e-8;
  int max_iter = 6000;  // operator applications
  std::uint64_t seed = 1;
  int basis = 60;
  // Stop when the wanted Ritz value moves less than this (relative) over
  // five consecutive steps.
  double stagnation = 1e-12;
  // Smooth quadratic walls in the outer `guard_band` fraction of the box and
  // of the spectral band.  The discrete x and d only satisfy [x, d] = 1 away
  // from both edges; without the walls the solver finds edge artifacts below
  // the true ground level.  Zero height disables them.
  double guard_height = 50.0;
  double guard_band = 0.25;
};

// H = u(u .) + v(v .), optionally plus the phase-space guard walls.
class Hamiltonian {
 public:
  Hamiltonian(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, double guard_height = 0.0,
              double guard_band = 0.25);
  WaveFunction apply(const WaveFunction& f) const;
  // <W f, f> for the guard part alone.
  double guard_energy(const WaveFunction& f) const;
  const GridSpec& grid() const { return u_.grid(); }

 private:
  WaveFunction apply_guard(const WaveFunction& f) const;

  OperatorHandle u_;
  OperatorHandle v_;
  std::vector<double> wall_x_;
  std::vector<double> wall_k_;
};

struct GroundStateResult {
  PairAlpha alpha;
  AlgebraParams params;
  double nu0 = 0.0;
  WaveFunction state;
  double residual = 0.0;
  int iterations = 0;
  GridSpec grid;
  std::string converged_by;  // "residual", "stagnation" or "invariant"
  double guard_energy = 0.0;
};

struct RitzPair {
  double value = 0.0;
  double residual = 0.0;
};

// Thick-restart Lanczos for the lowest `nev` eigenpairs of a Hermitian
// operator on C^n, full reorthogonalization.  Vectors are returned with unit
// Euclidean norm.
struct KrylovResult {
  std::vector<double> values;
  std::vector<std::vector<cplx>> vectors;
  std::vector<double> residual_estimates;
  int iterations = 0;
  std::string converged_by;
};

using LinearMap = std::function<void(const std::vector<cplx>& in, std::vector<cplx>& out)>;
KrylovResult lanczos_lowest(const LinearMap& apply, std::vector<cplx> start, int nev, const SolverOptions& opts);

// Seeded complex noise under a Gaussian envelope of width L/4.
WaveFunction start_vector(const GridSpec& g, std::uint64_t seed);

GroundStateResult ground_state(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g,
                               const SolverOptions& opts = {});

std::vector<RitzPair> spectrum_low(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, int k,
                                   const SolverOptions& opts = {});

// ||H f - nu f|| for normalized f.
double residual(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, const WaveFunction& f, double nu);

struct VariationalReport {
  double nu0 = 0.0;
  double min_perturbed = 0.0;
  double min_random = 0.0;
  int count = 0;
  bool passed = false;
};

VariationalReport variational_probe(const GroundStateResult& r, int n, double magnitude, std::uint64_t seed);

struct CoherentEvidence {
  double commutator_norm = 0.0;
  double overlap = 0.0;
  double nu_alpha = 0.0;
  double nu_beta = 0.0;
};

CoherentEvidence coherent_state_probe(const GroundStateResult& ga, const GroundStateResult& gb, const WaveFunction& f);
CoherentEvidence coherent_state_probe(const PairAlpha& alpha, const PairAlpha& beta, const AlgebraParams& p,
                                      const GridSpec& g, const WaveFunction& f, const SolverOptions& opts = {});

}  // namespace ncqm
