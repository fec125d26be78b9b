#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "ncqm/grid.hpp"
#include "ncqm/operators.hpp"

namespace ncqm {

// Normalized exp(-(x1 - x1_0)^2 / a - (x2 - x2_0)^2 / b).
struct GaussianSpec {
  double a = 1.0;
  double b = 1.0;
  double x1_0 = 0.0;
  double x2_0 = 0.0;
};

// Throws DomainError for a, b <= 0 and ResolutionError when the Gaussian is
// narrower than two cells, wider than a quarter box, or leaks past the
// four-cell boundary band.
WaveFunction gaussian(const GridSpec& g, const GaussianSpec& s);
void check_gaussian_resolvable(const GridSpec& g, const GaussianSpec& s);

// Moves the center to the nearest grid point; `moved` reports whether it changed.
GaussianSpec snap_center(const GridSpec& g, GaussianSpec s, bool* moved = nullptr);

// Unitary transform (2 pi)^-1 int f(x) exp(-i x.xi) dx on grid.dual().
WaveFunction fourier(const WaveFunction& f);
WaveFunction inverse_fourier(const WaveFunction& ft, const GridSpec& position_grid);

// Same transform in one dimension on n points of [-L, L).
std::vector<cplx> fourier_1d(std::span<const cplx> f, double L);

// <A>_f; NotNormalized when | ||f|| - 1 | > 1e-8.
cplx expectation(const OperatorHandle& a, const WaveFunction& f);
double realness_defect(cplx expectation_value);

// ||(A - center) f||.
double dispersion(const OperatorHandle& a, const WaveFunction& f, double center);

// |s|^-1 f(x / s) by trigonometric interpolation; zero outside the box.
WaveFunction dilate(const WaveFunction& f, double s);

// f(x - x0) exp(i xi0 . x).  Non-integer shifts are spectral.
WaveFunction translate(const WaveFunction& f, std::array<double, 2> x0, std::array<double, 2> xi0);

// Normalized superposition of Hermite functions of order <= max_order with
// seeded complex (or real) coefficients, centered at the origin.
WaveFunction hermite_state(const GridSpec& g, std::uint64_t seed, int max_order = 4, double width = 1.0,
                           bool real = false);

// Mass fraction of f within `margin` cells of the box edge.
double boundary_mass_fraction(const WaveFunction& f, int margin = 4);

// Mass fraction of the spectrum with |k| above `fraction` of the Nyquist value along either axis.
double spectral_tail_fraction(const WaveFunction& f, double fraction);

void require_normalized(const WaveFunction& f, const char* module, double tol = 1e-8);

}  // namespace ncqm
