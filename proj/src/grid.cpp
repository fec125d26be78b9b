#include "ncqm/grid.hpp"

#include <cmath>
#include <numbers>

#include "ncqm/error.hpp"
#include "ncqm/kernels.hpp"

namespace ncqm {

std::vector<double> fft_wavenumbers(int n, double L) {
  std::vector<double> k(n);
  const double dk = std::numbers::pi / L;
  for (int i = 0; i < n; ++i) k[i] = dk * (i < n / 2 ? i : i - n);
  k[n / 2] = 0.0;
  return k;
}

std::vector<double> GridSpec::wavenumbers1() const { return fft_wavenumbers(n1, L1); }
std::vector<double> GridSpec::wavenumbers2() const { return fft_wavenumbers(n2, L2); }

GridSpec GridSpec::dual() const {
  return GridSpec{n1, n2, n1 * std::numbers::pi / (2.0 * L1), n2 * std::numbers::pi / (2.0 * L2)};
}

void validate(const GridSpec& g) {
  if (g.n1 < 8 || g.n2 < 8 || g.n1 % 2 || g.n2 % 2) throw GridError("grid", "point counts must be even and >= 8");
  if (!(g.L1 > 0.0) || !(g.L2 > 0.0) || !std::isfinite(g.L1) || !std::isfinite(g.L2))
    throw GridError("grid", "half-widths must be positive");
}

WaveFunction::WaveFunction(const GridSpec& g) : grid_(g), values_(g.size()) { validate(g); }

WaveFunction::WaveFunction(const GridSpec& g, std::vector<cplx> values) : grid_(g), values_(std::move(values)) {
  validate(g);
  if (values_.size() != g.size()) throw GridMismatch("grid", "value count does not match grid");
}

double WaveFunction::norm() const { return std::sqrt(kernels::norm_sq(values_) * grid_.cell()); }

void WaveFunction::normalize() {
  const double n = norm();
  if (n == 0.0) throw DomainError("grid", "cannot normalize the zero function");
  kernels::scale(values_, 1.0 / n);
}

bool WaveFunction::is_real(double tol) const {
  for (const auto& v : values_)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

void require_same_grid(const WaveFunction& a, const WaveFunction& b, const char* module) {
  if (!(a.grid() == b.grid())) throw GridMismatch(module, "wavefunctions live on different grids");
}

WaveFunction& WaveFunction::operator+=(const WaveFunction& o) {
  require_same_grid(*this, o, "grid");
  kernels::axpy(values_, 1.0, o.values_);
  return *this;
}

WaveFunction& WaveFunction::operator-=(const WaveFunction& o) {
  require_same_grid(*this, o, "grid");
  kernels::axpy(values_, -1.0, o.values_);
  return *this;
}

WaveFunction& WaveFunction::operator*=(cplx c) {
  kernels::scale(values_, c);
  return *this;
}

WaveFunction operator+(WaveFunction a, const WaveFunction& b) { return a += b; }
WaveFunction operator-(WaveFunction a, const WaveFunction& b) { return a -= b; }
WaveFunction operator*(cplx c, WaveFunction a) { return a *= c; }

cplx inner(const WaveFunction& f, const WaveFunction& g) {
  require_same_grid(f, g, "grid");
  return kernels::dot(f.values(), g.values()) * f.grid().cell();
}

}  // namespace ncqm
