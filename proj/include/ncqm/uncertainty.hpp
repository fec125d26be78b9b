#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ncqm/algebra.hpp"
#include "ncqm/grid.hpp"
#include "ncqm/operators.hpp"

namespace ncqm {

// One of (Q1,Q2), (P1,P2), (Q1,P1), (Q2,P2).
class PairAlpha {
 public:
  static PairAlpha make(Tag u, Tag v);  // UnsupportedSymbol outside the set
  static PairAlpha parse(std::string_view name);  // "q1q2", "p1p2", "q1p1", "q2p2"
  static const std::array<PairAlpha, 4>& all();

  Tag u() const { return u_; }
  Tag v() const { return v_; }
  std::string name() const;
  bool operator==(const PairAlpha&) const = default;

 private:
  PairAlpha(Tag u, Tag v) : u_(u), v_(v) {}
  Tag u_;
  Tag v_;
};

struct UncertaintyReport {
  double functional_value = 0.0;
  std::map<std::string, double> dispersions;
  double robertson_lhs = 0.0;
  double robertson_rhs = 0.0;
  double center_u = 0.0;
  double center_v = 0.0;
};

// ||u f||^2 + ||v f||^2 for normalized f.
double functional_F(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f);

// lhs = D_u(f, a) D_v(f, b); rhs = |<[u, v] f, f>| / 2 with the commutator
// taken from the algebraic closure.
UncertaintyReport robertson(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f, double a,
                            double b);

// Same with arbitrary composites and the commutator applied directly.
UncertaintyReport robertson_general(const Symbol& A, const Symbol& B, const AlgebraParams& p, const WaveFunction& f,
                                    double a, double b);

struct Nullifier {
  std::array<double, 2> x0{};
  std::array<double, 2> xi0{};
  double target_r = 0.0;      // required <R>
  double residual_rhs = 0.0;  // rhs after translating
};

// Translation along x1 that puts <R> on the value where the closure
// expectation vanishes.  DegenerateCase when the rhs does not depend on <R>.
Nullifier nullifying_translation(const PairAlpha& alpha, const AlgebraParams& p, const WaveFunction& f);

struct GaussianClosedForms {
  double a = 0.0;
  double b = 0.0;
  double dq1 = 0.0;
  double dp1 = 0.0;
  double product = 0.0;
};

// Dispersions of q1 and p1 on the Gaussian centered at x1 = -lambda / 2E.
GaussianClosedForms gaussian_closed_forms(const AlgebraParams& p, double a, double b);

// Limit of the product along b = a^(-3/2): xi / (4 (1 + sqrt(1 - xi))).
double hpw_limit(const AlgebraParams& p);

std::vector<GaussianClosedForms> hpw_sweep(const AlgebraParams& p, std::span<const double> a_values);

struct MinimalLengthTable {
  std::vector<GaussianClosedForms> q_rows;  // a = 10^-k, b = 10^k
  std::vector<GaussianClosedForms> p_rows;  // a = 10^k, b = 10^-k
};

MinimalLengthTable minimal_length_probe(const AlgebraParams& p, int kmax);

struct ScalingResult {
  double s = 1.0;
  int n = 1;
  int m = 1;
  double dA = 0.0;  // ||x1^n D_s f||
  double dB = 0.0;  // ||xi1^m D_s f||
  double dA_ratio = 0.0;
  double dB_ratio = 0.0;
  double product_ratio = 0.0;
};

ScalingResult scaling_demo(const WaveFunction& f, int n, int m, double s);

struct EntropyReport {
  double position = 0.0;
  double momentum = 0.0;
  double sum = 0.0;
  double bound = 0.0;  // log(pi e)
  bool holds = false;
};

// 1D samples on [-L, L).
EntropyReport entropic_check(std::span<const cplx> f, double L);

// inf_s (s^2 A + s^-2 B) = 2 sqrt(A B).
double scale_infimum(double A, double B);

}  // namespace ncqm
