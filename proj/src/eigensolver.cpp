#include "ncqm/eigensolver.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "ncqm/error.hpp"
#include "ncqm/fft.hpp"
#include "ncqm/kernels.hpp"
#include "ncqm/states.hpp"

namespace ncqm {

namespace {
constexpr const char* kModule = "eigensolver";
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
}  // namespace

namespace {

// 0 inside (1 - band) of the half-width, rising quadratically to 1 at the edge.
double ramp(double t, double half, double band) {
  const double t0 = (1.0 - band) * half;
  const double a = std::abs(t);
  if (a <= t0) return 0.0;
  const double r = (a - t0) / (half - t0);
  return r * r;
}

}  // namespace

Hamiltonian::Hamiltonian(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, double guard_height,
                         double guard_band)
    : u_(assemble(alpha.u(), p, g)), v_(assemble(alpha.v(), p, g)) {
  if (guard_height <= 0.0) return;
  if (!(guard_band > 0.0 && guard_band < 1.0)) throw DomainError(kModule, "guard band must lie in (0, 1)");
  wall_x_.resize(g.size());
  wall_k_.resize(g.size());
  const auto k1 = g.wavenumbers1(), k2 = g.wavenumbers2();
  const double kn1 = std::numbers::pi / g.h1(), kn2 = std::numbers::pi / g.h2();
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const std::size_t q = static_cast<std::size_t>(i) * g.n2 + j;
      wall_x_[q] = guard_height * (ramp(g.x1(i), g.L1, guard_band) + ramp(g.x2(j), g.L2, guard_band));
      const double kk1 = (i == g.n1 / 2) ? kn1 : k1[i];
      const double kk2 = (j == g.n2 / 2) ? kn2 : k2[j];
      wall_k_[q] = guard_height * (ramp(kk1, kn1, guard_band) + ramp(kk2, kn2, guard_band)) / g.size();
    }
}

WaveFunction Hamiltonian::apply_guard(const WaveFunction& f) const {
  const GridSpec& g = f.grid();
  WaveFunction w = f;
  fft::transform_2d(w.values(), g.n1, g.n2, -1);
  kernels::multiply_field(w.values(), wall_k_);
  fft::transform_2d(w.values(), g.n1, g.n2, +1);
  WaveFunction x = f;
  kernels::multiply_field(x.values(), wall_x_);
  w += x;
  return w;
}

WaveFunction Hamiltonian::apply(const WaveFunction& f) const {
  WaveFunction out = u_.apply(u_.apply(f));
  out += v_.apply(v_.apply(f));
  if (!wall_x_.empty()) out += apply_guard(f);
  return out;
}

double Hamiltonian::guard_energy(const WaveFunction& f) const {
  if (wall_x_.empty()) return 0.0;
  return inner(apply_guard(f), f).real();
}

KrylovResult lanczos_lowest(const LinearMap& apply, std::vector<cplx> start, int nev, const SolverOptions& opts) {
  const Eigen::Index n = static_cast<Eigen::Index>(start.size());
  const int m = static_cast<int>(std::min<Eigen::Index>(std::max(opts.basis, 2 * nev + 10), n));
  if (nev < 1 || nev >= m) throw DomainError(kModule, "requested eigenpair count does not fit the basis");
  const int keep = std::min(m - 1, nev + (m - nev) / 3);

  Mat V(n, m + 1);
  Mat S = Mat::Zero(m, m);
  {
    Eigen::Map<Vec> s0(start.data(), n);
    const double nrm = s0.norm();
    if (nrm == 0.0) throw DomainError(kModule, "zero start vector");
    V.col(0) = s0 / nrm;
  }
  std::vector<cplx> in(n), out(n);
  KrylovResult res;
  int jstart = 0;
  std::vector<double> history;
  Eigen::SelfAdjointEigenSolver<Mat> es;

  auto finish = [&](int dim, double beta, const std::string& why) {
    es.compute(S.topLeftCorner(dim, dim));
    const int k = std::min(nev, dim);
    for (int i = 0; i < k; ++i) {
      Vec x = V.leftCols(dim) * es.eigenvectors().col(i);
      x.normalize();
      res.values.push_back(es.eigenvalues()(i));
      res.vectors.emplace_back(x.data(), x.data() + n);
      res.residual_estimates.push_back(beta * std::abs(es.eigenvectors()(dim - 1, i)));
    }
    res.converged_by = why;
    return res;
  };

  while (true) {
    double beta = 0.0;
    for (int j = jstart; j < m; ++j) {
      Eigen::Map<Vec>(in.data(), n) = V.col(j);
      apply(in, out);
      ++res.iterations;
      Vec w = Eigen::Map<Vec>(out.data(), n);
      Vec c = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * c;
      Vec c2 = V.leftCols(j + 1).adjoint() * w;
      w.noalias() -= V.leftCols(j + 1) * c2;
      c += c2;
      for (int i = 0; i < j; ++i) {
        S(i, j) = c(i);
        S(j, i) = std::conj(c(i));
      }
      S(j, j) = c(j).real();
      beta = w.norm();

      es.compute(S.topLeftCorner(j + 1, j + 1));
      const int k = std::min(nev, j + 1);
      bool all = (j + 1 >= nev);
      for (int i = 0; i < k && all; ++i) {
        const double theta = es.eigenvalues()(i);
        if (beta * std::abs(es.eigenvectors()(j, i)) > opts.tol * std::max(1.0, std::abs(theta))) all = false;
      }
      if (all) return finish(j + 1, beta, "residual");
      if (j + 1 >= nev) {
        history.push_back(es.eigenvalues()(nev - 1));
        const std::size_t h = history.size();
        if (h >= 6) {
          bool flat = true;
          for (std::size_t q = h - 5; q < h; ++q)
            if (std::abs(history[q] - history[q - 1]) >= opts.stagnation * std::max(1.0, std::abs(history[q]))) flat = false;
          if (flat) return finish(j + 1, beta, "stagnation");
        }
      }
      if (beta <= 1e-14 * std::max(1.0, std::abs(es.eigenvalues()(0)))) return finish(j + 1, beta, "invariant");
      if (res.iterations >= opts.max_iter)
        throw NoConvergence(kModule, "no convergence after " + std::to_string(res.iterations) + " applications");
      V.col(j + 1) = w / beta;
    }
    // thick restart: keep the lowest Ritz vectors and the residual direction
    es.compute(S);
    Mat Y = es.eigenvectors().leftCols(keep);
    Mat U = V.leftCols(m) * Y;
    V.leftCols(keep) = U;
    V.col(keep) = V.col(m);
    S.setZero();
    for (int i = 0; i < keep; ++i) S(i, i) = es.eigenvalues()(i);
    jstart = keep;
  }
}

WaveFunction start_vector(const GridSpec& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double s1 = g.L1 / 4.0, s2 = g.L2 / 4.0;
  WaveFunction f(g);
  for (int i = 0; i < g.n1; ++i)
    for (int j = 0; j < g.n2; ++j) {
      const double env = std::exp(-0.5 * (g.x1(i) * g.x1(i) / (s1 * s1) + g.x2(j) * g.x2(j) / (s2 * s2)));
      const double re = u(rng), im = u(rng);
      f.at(i, j) = env * cplx(re, im);
    }
  f.normalize();
  return f;
}

namespace {

KrylovResult run(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, int nev,
                 const SolverOptions& opts) {
  validate(g);
  const Hamiltonian H(alpha, p, g, opts.guard_height, opts.guard_band);
  const LinearMap op = [&](const std::vector<cplx>& in, std::vector<cplx>& out) {
    WaveFunction f(g, in);
    out = H.apply(f).data();
  };
  return lanczos_lowest(op, start_vector(g, opts.seed).data(), nev, opts);
}

WaveFunction as_state(const GridSpec& g, const std::vector<cplx>& v) {
  WaveFunction f(g, v);
  f.normalize();
  return f;
}

}  // namespace

GroundStateResult ground_state(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g,
                               const SolverOptions& opts) {
  const KrylovResult k = run(alpha, p, g, 1, opts);
  GroundStateResult r{alpha, p, k.values[0], as_state(g, k.vectors[0]), 0.0, k.iterations, g, k.converged_by, 0.0};
  const Hamiltonian H(alpha, p, g, opts.guard_height, opts.guard_band);
  WaveFunction hf = H.apply(r.state);
  kernels::axpy(hf.values(), -r.nu0, r.state.values());
  r.residual = hf.norm();
  r.guard_energy = H.guard_energy(r.state);
  return r;
}

std::vector<RitzPair> spectrum_low(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, int k,
                                   const SolverOptions& opts) {
  if (k < 1) throw DomainError(kModule, "k must be positive");
  const KrylovResult kr = run(alpha, p, g, k, opts);
  const Hamiltonian H(alpha, p, g, opts.guard_height, opts.guard_band);
  std::vector<RitzPair> out;
  for (std::size_t i = 0; i < kr.values.size(); ++i) {
    const WaveFunction f = as_state(g, kr.vectors[i]);
    WaveFunction hf = H.apply(f);
    kernels::axpy(hf.values(), -kr.values[i], f.values());
    out.push_back({kr.values[i], hf.norm()});
  }
  return out;
}

double residual(const PairAlpha& alpha, const AlgebraParams& p, const GridSpec& g, const WaveFunction& f, double nu) {
  if (!(f.grid() == g)) throw GridMismatch(kModule, "state grid differs from the requested grid");
  WaveFunction hf = Hamiltonian(alpha, p, g).apply(f);
  kernels::axpy(hf.values(), -nu, f.values());
  return hf.norm();
}

VariationalReport variational_probe(const GroundStateResult& r, int n, double magnitude, std::uint64_t seed) {
  VariationalReport rep;
  rep.nu0 = r.nu0;
  rep.count = n;
  rep.min_perturbed = rep.min_random = std::numeric_limits<double>::infinity();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> width(0.7, 1.5);
  for (int i = 0; i < n; ++i) {
    WaveFunction d = hermite_state(r.grid, rng(), 4, width(rng));
    WaveFunction pert = r.state;
    kernels::axpy(pert.values(), magnitude, d.values());
    pert.normalize();
    rep.min_perturbed = std::min(rep.min_perturbed, functional_F(r.alpha, r.params, pert));
    WaveFunction rnd = hermite_state(r.grid, rng(), 6, width(rng));
    rep.min_random = std::min(rep.min_random, functional_F(r.alpha, r.params, rnd));
  }
  rep.passed = rep.min_perturbed >= r.nu0 - 1e-10 && rep.min_random >= r.nu0 - 1e-10;
  return rep;
}

CoherentEvidence coherent_state_probe(const GroundStateResult& ga, const GroundStateResult& gb, const WaveFunction& f) {
  if (!(ga.grid == gb.grid) || !(f.grid() == ga.grid)) throw GridMismatch(kModule, "inputs live on different grids");
  const Hamiltonian ha(ga.alpha, ga.params, ga.grid), hb(gb.alpha, gb.params, gb.grid);
  WaveFunction c = ha.apply(hb.apply(f));
  c -= hb.apply(ha.apply(f));
  CoherentEvidence e;
  e.commutator_norm = c.norm();
  e.overlap = std::abs(inner(ga.state, gb.state));
  e.nu_alpha = ga.nu0;
  e.nu_beta = gb.nu0;
  return e;
}

CoherentEvidence coherent_state_probe(const PairAlpha& alpha, const PairAlpha& beta, const AlgebraParams& p,
                                      const GridSpec& g, const WaveFunction& f, const SolverOptions& opts) {
  return coherent_state_probe(ground_state(alpha, p, g, opts), ground_state(beta, p, g, opts), f);
}

}  // namespace ncqm
