#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "ncqm/algebra.hpp"
#include "ncqm/grid.hpp"

namespace ncqm {

// Spectral first derivative along axis 0 (x1) or 1 (x2).
WaveFunction spectral_derivative(const WaveFunction& f, int axis);

// Symbol bound to a grid in the differential representation
//   q1 = lambda x1 + (i theta / 2 lambda) d2 + E x1^2
//   q2 = lambda x2 - (i theta / 2 lambda) d1
//   p1 = -i mu d1 + (eta / 2 mu) x2
//   p2 = -i mu d2 - (eta / 2 mu) x1 + F x1^2
class OperatorHandle {
 public:
  OperatorHandle() = default;

  WaveFunction apply(const WaveFunction& f) const;
  const Symbol& symbol() const { return symbol_; }
  const AlgebraParams& params() const { return params_; }
  const GridSpec& grid() const { return grid_; }

  // Each base tag acts as f -> field * f + c1 d1 f + c2 d2 f.
  struct BaseAction {
    std::vector<double> field;
    cplx c1{0.0};
    cplx c2{0.0};
  };

 private:
  friend OperatorHandle assemble(const Symbol&, const AlgebraParams&, const GridSpec&);
  WaveFunction apply_base(Tag t, const WaveFunction& f) const;

  Symbol symbol_;
  AlgebraParams params_;
  GridSpec grid_;
  std::shared_ptr<const std::array<BaseAction, 10>> actions_;
};

OperatorHandle assemble(const Symbol& s, const AlgebraParams& p, const GridSpec& g);
OperatorHandle assemble(Tag t, const AlgebraParams& p, const GridSpec& g);

// [A, B] f = A(B f) - B(A f).
WaveFunction commutator_apply(const OperatorHandle& a, const OperatorHandle& b, const WaveFunction& f);

// |<A f, g> - <f, A g>|.
double hermiticity_defect(const OperatorHandle& a, const WaveFunction& f, const WaveFunction& g);

// ||[A, B] f - expected f|| / ||expected f||, falling back to ||f|| when expected f vanishes.
double commutator_error(const Symbol& a, const Symbol& b, const Symbol& expected, const AlgebraParams& p,
                        const WaveFunction& f);

struct PairCheck {
  Tag u;
  Tag v;
  double max_error = 0.0;
};

struct AlgebraReport {
  std::vector<PairCheck> pairs;
  double max_error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

// The six pairs (Q1,Q2), (P1,P2), (Q1,P1), (Q2,P2), (Q1,P2), (Q2,P1).
const std::array<std::array<Tag, 2>, 6>& fundamental_pairs();

AlgebraReport verify_algebra(const AlgebraParams& p, std::span<const WaveFunction> states, double tol);

// [Xj, Xik] = i delta_jk, [X1, X2] = [Xi1, Xi2] = 0.
AlgebraReport verify_heisenberg(const GridSpec& g, std::span<const WaveFunction> states, double tol);

struct ReconstructionReport {
  std::array<double, 4> deviation{};  // X1, X2, Xi1, Xi2
  double max_deviation = 0.0;
};

// Applies inverse_map images assembled from the differential q, p and
// compares with direct x1, x2, -i d1, -i d2.
ReconstructionReport reconstruct_hw(const AlgebraParams& p, const WaveFunction& f);

}  // namespace ncqm
